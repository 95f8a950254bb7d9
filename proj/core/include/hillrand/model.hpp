#pragma once

#include <cstdint>
#include <string>

#include "hillrand/rng.hpp"

namespace hillrand {

/// Parameters of one forcing cycle: oscillation parameter af > 0 (frequency
/// squared, period fixed at pi) and kick strength q (may be negative).
struct CycleParams {
    double af;
    double q;

    /// Phase advanced per period, sqrt(af)*pi.
    double phi() const;
};

enum class QLaw {
    constant,          // q_k = q
    shifted_uniform,   // q_k = (1 + xi) q0, xi uniform on [0,1)
    symmetric_uniform, // q_k = q0 xi,      xi uniform on [-1,1)
};

enum class AfLaw {
    fixed,         // af_k = af
    uniform_angle, // phi uniform on (0, Gamma], af_k = (phi/pi)^2
};

/// Distribution from which (af_k, q_k) pairs are drawn, iid per cycle.
struct ForcingModel {
    QLaw q_law = QLaw::constant;
    double q_amp = 1.0;     // q for constant, q0 for the uniform laws
    AfLaw af_law = AfLaw::fixed;
    double af = 1.0;        // fixed-law value
    double angle_span = 0;  // Gamma for uniform_angle

    static ForcingModel constant(double q, double af);
    static ForcingModel shifted_uniform(double q0, double af);
    static ForcingModel symmetric_uniform(double q0, double af);
    /// Same q laws with phi uniform on (0, Gamma] instead of fixed af.
    ForcingModel with_uniform_angle(double Gamma) const;

    /// Throws std::invalid_argument on a bad parameter combination.
    void validate() const;
};

struct QMoments {
    double mean_q;
    double mean_q_sq;
    double var_q;
    double mean_af;
};

/// One iid draw. Bit-reproducible given the stream state.
CycleParams sample_cycle(const ForcingModel& model, RandomStream& stream);

/// Exact analytic moments of the model.
QMoments moments_of(const ForcingModel& model);

/// E|q|, the scalar forcing-size summary used for band widths.
double mean_abs_q(const ForcingModel& model);

/// Infimum of |q| over the support (0 if the law crosses or touches zero).
double min_abs_q(const ForcingModel& model);

/// True when the q support contains values of both signs or zero.
bool q_support_crosses_zero(const ForcingModel& model);

/// Flat key-value form, e.g. "dist=symmetric q0=0.625 af=2".
std::string format_model(const ForcingModel& model);
ForcingModel parse_model(const std::string& text);

} // namespace hillrand
