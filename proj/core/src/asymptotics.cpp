#include "hillrand/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hillrand/errors.hpp"
#include "hillrand/transfer.hpp"

namespace hillrand {

namespace {

constexpr double kPi = std::numbers::pi;
// Guard margin: a formula is refused within this multiple of the band width.
constexpr double kGuardFactor = 2.0;

double fixed_af_or_throw(const ForcingModel& model, const char* who) {
    if (model.af_law != AfLaw::fixed)
        throw std::invalid_argument(std::string(who) + ": fixed-af models only");
    return model.af;
}

void require_q_away_from_zero(const ForcingModel& model, const char* who) {
    if (q_support_crosses_zero(model) || min_abs_q(model) <= 0.0)
        throw std::invalid_argument(std::string(who) +
                                    ": q law reaches 0, log|q| expectation diverges");
}

struct MeanStderr {
    double mean;
    double se;
};

template <class F>
MeanStderr sample_mean(const ForcingModel& model, long n, std::uint64_t seed, F&& f) {
    RandomStream rs(seed, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < n; ++i) {
        const double v = f(sample_cycle(model, rs));
        sum += v;
        sum_sq += v * v;
    }
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = std::max(0.0, sum_sq / nn - mean * mean);
    return {mean, std::sqrt(var / nn)};
}

} // namespace

ResonanceDistance nearest_resonance(double af) {
    int n = static_cast<int>(std::lround(std::sqrt(std::max(af, 0.0))));
    if (n < 1) n = 1;
    return {n, std::abs(af - static_cast<double>(n) * n)};
}

void require_off_resonance(double af, const ForcingModel& model, Regime regime) {
    const ResonanceDistance rd = nearest_resonance(af);
    const double width = stability_band_width(rd.n, model, regime);
    if (rd.distance < kGuardFactor * width)
        throw resonant_af_error(af, rd.n, width);
}

ApproxRate gamma_large_q(const ForcingModel& model, long n_samples,
                         std::uint64_t seed) {
    model.validate();
    const double af = fixed_af_or_throw(model, "gamma_large_q");
    require_q_away_from_zero(model, "gamma_large_q");
    require_off_resonance(af, model, Regime::large_q);

    ApproxRate out;
    out.regime = Regime::large_q;
    if (model.q_law == QLaw::constant) {
        const MatrixElements e = closed_form_elements({af, model.q_amp});
        out.gamma = std::log(std::abs(2.0 * e.h));
        return out;
    }
    const MeanStderr ms = sample_mean(model, n_samples, seed, [](const CycleParams& p) {
        return std::log(std::abs(2.0 * closed_form_elements(p).h));
    });
    out.gamma = ms.mean;
    out.stderr_ = ms.se;
    return out;
}

ApproxRate gamma_infinite_q(const ForcingModel& model, long n_samples,
                            std::uint64_t seed) {
    model.validate();
    const double af = fixed_af_or_throw(model, "gamma_infinite_q");
    require_q_away_from_zero(model, "gamma_infinite_q");
    require_off_resonance(af, model, Regime::large_q);

    const double w = std::sqrt(af);
    const double log_sin_w = std::log(std::abs(std::sin(w * kPi) / w));
    ApproxRate out;
    out.regime = Regime::infinite_q;
    if (model.q_law == QLaw::constant) {
        out.gamma = std::log(std::abs(model.q_amp)) + log_sin_w;
        return out;
    }
    const MeanStderr ms = sample_mean(model, n_samples, seed, [&](const CycleParams& p) {
        return std::log(std::abs(p.q)) + log_sin_w;
    });
    out.gamma = ms.mean;
    out.stderr_ = ms.se;
    return out;
}

double delta_gamma_x(const ForcingModel& model, long n_pairs, std::uint64_t seed) {
    model.validate();
    const double af = fixed_af_or_throw(model, "delta_gamma_x");
    require_off_resonance(af, model, Regime::large_q);
    if (model.q_law == QLaw::constant) return 0.0; // x degenerate

    RandomStream rs(seed, 0);
    double sum = 0.0;
    for (long i = 0; i < n_pairs; ++i) {
        const double x1 = ratio_x(sample_cycle(model, rs));
        const double x2 = ratio_x(sample_cycle(model, rs));
        sum += std::log(std::abs(1.0 + x1 / x2));
    }
    return sum / static_cast<double>(n_pairs) - std::log(2.0);
}

double delta_gamma_phi(const ForcingModel& model, long n_windows,
                       std::uint64_t seed) {
    model.validate();
    const double af = fixed_af_or_throw(model, "delta_gamma_phi");
    require_q_away_from_zero(model, "delta_gamma_phi");
    require_off_resonance(af, model, Regime::large_q);
    if (n_windows < 1) throw std::invalid_argument("delta_gamma_phi: need windows");

    RandomStream rs(seed, 0);
    auto draw = [&] { return sample_cycle(model, rs); };
    CycleParams prev = draw(), cur = draw(), next = draw();
    double sum = 0.0;
    for (long i = 0; i < n_windows; ++i) {
        const double x_prev = ratio_x(prev);
        const double x_cur = ratio_x(cur);
        const double x_next = ratio_x(next);
        const double phi = cur.phi();
        const double s = std::sin(phi);
        const double xfac = x_cur * x_cur / ((x_cur + x_next) * (x_cur + x_prev));
        sum += xfac * (4.0 * phi * phi / (s * s)) / (kPi * kPi * cur.q * cur.q);
        prev = cur;
        cur = next;
        next = draw();
    }
    return sum / static_cast<double>(n_windows);
}

double small_q_formula(double af, double mean_q_sq) {
    if (!(af > 0.0)) throw std::invalid_argument("af must be positive");
    if (mean_q_sq < 0.0) throw std::invalid_argument("mean_q_sq must be >= 0");
    return std::log1p(mean_q_sq / (8.0 * af));
}

ApproxRate gamma_small_q(double af, double mean_q_sq) {
    const double value = small_q_formula(af, mean_q_sq);
    const ResonanceDistance rd = nearest_resonance(af);
    // Band width 2 q_ref/pi with q_ref the rms forcing (the only scale the
    // argument list carries); refuse inside the half-width.
    const double width = 2.0 * std::sqrt(mean_q_sq) / kPi;
    if (rd.distance < 0.5 * width)
        throw resonant_af_error(af, rd.n, width);
    ApproxRate out;
    out.gamma = value;
    out.regime = Regime::small_q;
    return out;
}

double stability_band_width(int n, const ForcingModel& model, Regime regime) {
    if (n < 1) throw std::invalid_argument("band index n must be >= 1");
    const double q_ref = mean_abs_q(model);
    switch (regime) {
    case Regime::small_q:
        return 2.0 * q_ref / kPi;
    case Regime::large_q:
        return 8.0 * static_cast<double>(n) * n / (kPi * q_ref);
    default:
        throw std::invalid_argument("band width defined for small_q/large_q only");
    }
}

ApproxRate gamma_fokker_planck(double af, double mean_q_sq) {
    if (!(af > 0.0)) throw std::invalid_argument("af must be positive");
    if (mean_q_sq < 0.0) throw std::invalid_argument("mean_q_sq must be >= 0");
    ApproxRate out;
    out.gamma = mean_q_sq / (2.0 * kPi * af);
    out.regime = Regime::fokker_planck;
    return out;
}

} // namespace hillrand
