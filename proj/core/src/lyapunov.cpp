#include "hillrand/lyapunov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hillrand/parallel.hpp"

namespace hillrand {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDrain = 1e280; // flush the scale product into log space
constexpr double kParabolicTol = 1e-12;

struct AffineQ {
    double a, b; // q = a + b*u, u uniform on [0,1)
};

AffineQ affine_q(const ForcingModel& m) {
    switch (m.q_law) {
    case QLaw::constant: return {m.q_amp, 0.0};
    case QLaw::shifted_uniform: return {m.q_amp, m.q_amp};
    case QLaw::symmetric_uniform: return {-m.q_amp, 2.0 * m.q_amp};
    }
    return {0.0, 0.0};
}

struct TrialStats {
    double mean = 0.0;
    double stderr_ = 0.0;
};

TrialStats reduce_trials(const std::vector<double>& per_trial) {
    TrialStats out;
    const int n = static_cast<int>(per_trial.size());
    double sum = 0.0;
    for (double v : per_trial) sum += v;
    out.mean = sum / n;
    if (n > 1) {
        double ss = 0.0;
        for (double v : per_trial) {
            const double d = v - out.mean;
            ss += d * d;
        }
        out.stderr_ = std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
    }
    return out;
}

/// One product trial at fixed af. Accumulates log max-abs growth; when
/// sum_h/sum_qs are given, also accumulates the closed-form reference sums
/// on the same draws, skipping the first `warmup` cycles everywhere.
double product_trial_fixed_af(const FixedAfKernel& kernel, AffineQ law,
                              long n_cycles, long warmup, RandomStream rs,
                              double af, double* sum_h, double* sum_qs) {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
    double log_norm = 0.0;
    double scale_prod = 1.0;
    const double b11 = kernel.base.m11, b12 = kernel.base.m12;
    const double b21 = kernel.base.m21, b22 = kernel.base.m22;
    const double s11 = kernel.slope.m11, s12 = kernel.slope.m12;
    const double s21 = kernel.slope.m21, s22 = kernel.slope.m22;

    const double w = std::sqrt(af);
    const double phi = w * kPi;
    const double h0 = std::cos(phi);
    const double h1 = -std::sin(phi) / (2.0 * w);
    const double log_sin_w = std::log(std::abs(std::sin(phi) / w));

    double acc_h = 0.0, acc_qs = 0.0;
    const long total = n_cycles + warmup;
    for (long k = 0; k < total; ++k) {
        const double q = law.a + law.b * rs.uniform01();
        const double m11 = b11 + q * s11, m12 = b12 + q * s12;
        const double m21 = b21 + q * s21, m22 = b22 + q * s22;
        const double c11 = m11 * a11 + m12 * a21;
        const double c12 = m11 * a12 + m12 * a22;
        const double c21 = m21 * a11 + m22 * a21;
        const double c22 = m21 * a12 + m22 * a22;
        double mx = std::abs(c11);
        mx = std::max(mx, std::abs(c12));
        mx = std::max(mx, std::abs(c21));
        mx = std::max(mx, std::abs(c22));
        const double inv = 1.0 / mx;
        a11 = c11 * inv;
        a12 = c12 * inv;
        a21 = c21 * inv;
        a22 = c22 * inv;
        if (k >= warmup) {
            scale_prod *= mx;
            if (scale_prod > kDrain || scale_prod < 1.0 / kDrain) {
                log_norm += std::log(scale_prod);
                scale_prod = 1.0;
            }
            if (sum_h) {
                const double h = h0 + q * h1;
                acc_h += std::log(std::abs(2.0 * h));
                acc_qs += std::log(std::abs(q)) + log_sin_w;
            }
        }
    }
    log_norm += std::log(scale_prod);
    if (!std::isfinite(log_norm) || !std::isfinite(a11 + a12 + a21 + a22))
        throw std::domain_error("growth estimate: non-finite matrix product");
    if (sum_h) {
        *sum_h = acc_h;
        *sum_qs = acc_qs;
    }
    return log_norm;
}

double product_trial_general(const ForcingModel& model, long n_cycles,
                             RandomStream rs) {
    ProductState state;
    for (long k = 0; k < n_cycles; ++k) {
        const CycleParams p = sample_cycle(model, rs);
        absorb(state, cycle_matrix(p));
    }
    if (!std::isfinite(state.log_norm))
        throw std::domain_error("growth estimate: non-finite matrix product");
    return state.log_norm;
}

} // namespace

double growth_rate_single_trial(const ForcingModel& model, long n_cycles,
                                std::uint64_t seed, std::uint64_t stream_id) {
    RandomStream rs(seed, stream_id);
    double log_norm;
    if (model.af_law == AfLaw::fixed) {
        const FixedAfKernel kernel(model.af);
        log_norm = product_trial_fixed_af(kernel, affine_q(model), n_cycles, 0, rs,
                                          model.af, nullptr, nullptr);
    } else {
        log_norm = product_trial_general(model, n_cycles, rs);
    }
    return log_norm / static_cast<double>(n_cycles);
}

GrowthEstimate growth_rate_mc(const ForcingModel& model, long n_cycles,
                              int n_trials, std::uint64_t seed) {
    model.validate();
    if (n_cycles < 1000) throw std::invalid_argument("growth_rate_mc: need n_cycles >= 1000");
    if (n_trials < 1) throw std::invalid_argument("growth_rate_mc: need n_trials >= 1");

    std::vector<double> gammas(n_trials);
    const bool fixed = model.af_law == AfLaw::fixed;
    const FixedAfKernel kernel(fixed ? model.af : 1.0);
    const AffineQ law = affine_q(model);
    parallel_for(n_trials, [&](long t) {
        RandomStream rs(seed, static_cast<std::uint64_t>(t));
        const double log_norm =
            fixed ? product_trial_fixed_af(kernel, law, n_cycles, 0, rs, model.af,
                                           nullptr, nullptr)
                  : product_trial_general(model, n_cycles, rs);
        gammas[t] = log_norm / static_cast<double>(n_cycles);
    });
    const TrialStats st = reduce_trials(gammas);
    return {st.mean, st.stderr_, n_cycles, n_trials, "growth_rate_mc"};
}

GrowthEstimate asymptotic_growth_rate(const ForcingModel& model,
                                      long n_samples, std::uint64_t seed) {
    model.validate();
    if (n_samples < 1000)
        throw std::invalid_argument("asymptotic_growth_rate: need n_samples >= 1000");
    RandomStream rs(seed, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < n_samples; ++i) {
        const CycleParams p = sample_cycle(model, rs);
        const double r = classical_growth_rate(p);
        sum += r;
        sum_sq += r * r;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    return {mean, std::sqrt(var / n), n_samples, 1, "asymptotic_growth_rate"};
}

double classical_growth_rate(const CycleParams& p) {
    const MatrixElements e = closed_form_elements(p);
    const double ah = std::abs(e.h);
    // |h| <= 1: elliptic, bounded orbits. The tolerance keeps af = n^2
    // (where sin(phi) rounds to +-1e-16 instead of 0) on the parabolic side.
    if (ah <= 1.0 + kParabolicTol) return 0.0;
    return std::log(ah + std::sqrt(ah * ah - 1.0));
}

ReferenceRates growth_rate_with_references(const ForcingModel& model,
                                           long n_cycles, int n_trials,
                                           std::uint64_t seed, long warmup) {
    model.validate();
    if (model.af_law != AfLaw::fixed)
        throw std::invalid_argument("growth_rate_with_references: fixed-af models only");
    if (n_cycles < 1000) throw std::invalid_argument("need n_cycles >= 1000");
    if (n_trials < 1) throw std::invalid_argument("need n_trials >= 1");
    if (warmup < 0) throw std::invalid_argument("warmup must be >= 0");

    std::vector<double> g_mc(n_trials), g_h(n_trials), g_qs(n_trials);
    const FixedAfKernel kernel(model.af);
    const AffineQ law = affine_q(model);
    parallel_for(n_trials, [&](long t) {
        RandomStream rs(seed, static_cast<std::uint64_t>(t));
        double sum_h = 0.0, sum_qs = 0.0;
        const double log_norm = product_trial_fixed_af(
            kernel, law, n_cycles, warmup, rs, model.af, &sum_h, &sum_qs);
        const double n = static_cast<double>(n_cycles);
        g_mc[t] = log_norm / n;
        g_h[t] = sum_h / n;
        g_qs[t] = sum_qs / n;
    });
    const TrialStats mc = reduce_trials(g_mc);
    const TrialStats th = reduce_trials(g_h);
    const TrialStats tq = reduce_trials(g_qs);
    ReferenceRates out;
    out.mc = {mc.mean, mc.stderr_, n_cycles, n_trials, "growth_rate_mc(crn)"};
    out.large_q = {th.mean, th.stderr_, n_cycles, n_trials, "gamma_large_q(crn)"};
    out.infinite_q = {tq.mean, tq.stderr_, n_cycles, n_trials, "gamma_infinite_q(crn)"};
    return out;
}

} // namespace hillrand
