#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hillrand/model.hpp"

namespace hillrand {

enum class Regime { large_q, infinite_q, small_q, fokker_planck };

struct ApproxRate {
    double gamma = 0.0;
    Regime regime = Regime::small_q;
    double stderr_ = 0.0; // nonzero only for sampled expectations
    std::map<std::string, double> correction_terms;
};

/// Nearest positive integer n to sqrt(af) and the distance |af - n^2|.
struct ResonanceDistance {
    int n;
    double distance;
};
ResonanceDistance nearest_resonance(double af);

/// Throws resonant_af_error when af sits within twice the regime's band
/// width of an integer square.
void require_off_resonance(double af, const ForcingModel& model, Regime regime);

/// E[log|2 h_k|]. Exact for a constant law, Monte Carlo otherwise.
/// Requires a fixed-af model off resonance and q bounded away from 0.
ApproxRate gamma_large_q(const ForcingModel& model, long n_samples,
                         std::uint64_t seed);

/// E[log|q_k sin(phi)/sqrt(af)|], the q -> infinity limit form.
ApproxRate gamma_infinite_q(const ForcingModel& model, long n_samples,
                            std::uint64_t seed);

/// E[log|1 + x_{k1}/x_{k2}|] - log 2 over independent pairs; exactly 0 when
/// x is degenerate (constant q and af).
double delta_gamma_x(const ForcingModel& model, long n_pairs,
                     std::uint64_t seed);

/// Sliding-window average of
///   x_k^2 / ((x_k + x_{k+1})(x_k + x_{k-1})) * 4 phi_k^2 / sin^2(phi_k)
///   * 1/(pi^2 q_k^2)
/// over an iid sequence.
double delta_gamma_phi(const ForcingModel& model, long n_windows,
                       std::uint64_t seed);

/// log(1 + mean_q_sq / (8 af)); valid off resonance for symmetric q laws.
ApproxRate gamma_small_q(double af, double mean_q_sq);

/// The same expression without the resonance guard (used to draw the curve
/// straight through the bands, where the formula stays finite).
double small_q_formula(double af, double mean_q_sq);

/// Width (in af) of the stability band around af = n^2:
/// small_q -> 2 q_ref/pi, large_q -> 8 n^2/(pi q_ref), q_ref = E|q|.
double stability_band_width(int n, const ForcingModel& model, Regime regime);

/// mean_q_sq / (2 pi af), the diffusion-approximation rate D/(2 af).
ApproxRate gamma_fokker_planck(double af, double mean_q_sq);

} // namespace hillrand
