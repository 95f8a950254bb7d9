#pragma once

#include <cstdint>
#include <string>

#include "hillrand/model.hpp"
#include "hillrand/transfer.hpp"

namespace hillrand {

/// A growth rate in nats per cycle with its statistical error.
struct GrowthEstimate {
    double gamma = 0.0;
    double stderr_ = 0.0; // 0 means single trial, no error bar
    long n_cycles = 0;
    int n_trials = 0;
    std::string estimator;
};

/// Top Lyapunov exponent of the random matrix product, estimated from
/// n_trials independent products of n_cycles matrices (max-abs norm).
/// Trials run on per-trial substreams and reduce in trial order, so the
/// result is identical for any thread count.
GrowthEstimate growth_rate_mc(const ForcingModel& model, long n_cycles,
                              int n_trials, std::uint64_t seed);

/// One product trial on stream (seed, stream_id); building block for sweep
/// drivers that schedule their own task grids.
double growth_rate_single_trial(const ForcingModel& model, long n_cycles,
                                std::uint64_t seed, std::uint64_t stream_id);

/// Expected single-cycle rate: E[log(|h| + sqrt(h^2-1))] over draws, with
/// elliptic cycles (|h| <= 1) contributing zero.
GrowthEstimate asymptotic_growth_rate(const ForcingModel& model,
                                      long n_samples, std::uint64_t seed);

/// log spectral radius of the single-cycle map; 0 for elliptic and
/// (numerically) parabolic cycles.
double classical_growth_rate(const CycleParams& p);

/// Product growth rate together with the two closed-form reference rates
/// evaluated on the same draws (common random numbers), all averaged after a
/// warm-up of `warmup` cycles so their differences estimate the stationary
/// gap free of the O(1)/N alignment transient. Requires a fixed-af model.
struct ReferenceRates {
    GrowthEstimate mc;        // product growth rate
    GrowthEstimate large_q;   // E log|2 h_k| on the same draws
    GrowthEstimate infinite_q;// E log|q_k sin(phi)/sqrt(af)| on the same draws
};
ReferenceRates growth_rate_with_references(const ForcingModel& model,
                                           long n_cycles, int n_trials,
                                           std::uint64_t seed,
                                           long warmup = 1000);

} // namespace hillrand
