#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hillrand/model.hpp"
#include "hillrand/oscillator.hpp"
#include "hillrand/sweep.hpp"

namespace hillrand {

/// Library version echoed into CSV metadata.
extern const char* const kVersion;

// Sweep drivers behind the CLI subcommands. Each returns the full table
// (metadata included) that the corresponding subcommand writes to --out.

/// Accuracy of the two large-q closed forms vs the product growth rate,
/// on a log-spaced q0 grid with q_k = (1+xi) q0. Columns: q0, gamma_mc,
/// gamma_thm21, gamma_cor21, diff21_abs, diffcor_abs (+stderr columns).
/// Fitted log-log slopes of the two difference curves go to the metadata.
struct Fig1Options {
    double q0_min = 32.0;
    double q0_max = 4096.0;
    int points = 8;
    double af = 0.5;
    long cycles = 100000;
    int trials = 16;
    std::uint64_t seed = 12345;
};
SweepTable fig1_table(const Fig1Options& opt);

/// Growth rate vs af for q_k = q0 xi (xi uniform on [-1,1]) with
/// q0 = 10/2^l, against the small-q closed form. Columns: af, then per-l
/// gamma_mc_l<l>, gamma_mc_l<l>_stderr, gamma_thm31_l<l>.
/// cycles = 0 picks a per-l schedule that resolves the smallest rates.
struct Fig2Options {
    double af_min = 0.5;
    double af_max = 10.0;
    int points = 191;
    std::vector<int> ells = {4, 5, 6, 7, 8};
    long cycles = 0;
    int trials = 16;
    std::uint64_t seed = 12345;
};
SweepTable fig2_table(const Fig2Options& opt);
long fig2_cycle_schedule(int ell, long requested);

/// Four growth-rate curves at q0 = 2.5: product MC, small-q form, expected
/// per-cycle rate, and the classical rate at constant q = q0/2.
struct Fig3Options {
    double af_min = 0.5;
    double af_max = 10.0;
    int points = 96;
    double q0 = 2.5;
    long cycles = 100000;
    int trials = 16;
    long inf_samples = 200000;
    std::uint64_t seed = 12345;
};
SweepTable fig3_table(const Fig3Options& opt);

/// Analytic element moments vs the sampling oracle over a phi (or Gamma)
/// grid for one q law.
struct MomentsOptions {
    ForcingModel model = ForcingModel::symmetric_uniform(1.0, 2.0);
    std::vector<double> phis = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    long samples = 1000000;
    std::uint64_t seed = 12345;
};
SweepTable moments_table(const MomentsOptions& opt);

/// Ensemble <y^2>(t) trace plus the fitted exponential rate and the
/// diffusion prediction in the metadata.
struct FpCheckOptions {
    double af = 2.0;
    double q0 = 0.1;
    long trajectories = 20000;
    long cycles = 1200;
    std::uint64_t seed = 12345;
};
SweepTable fp_check_table(const FpCheckOptions& opt);

/// Iterated-map growth rate over a log-spaced q0 grid.
struct MapOptions {
    double q0_min = 0.01;
    double q0_max = 0.1;
    int points = 5;
    double af = 0.5;
    QLaw q_law = QLaw::symmetric_uniform;
    long samples = 1000000;
    PhaseLaw phase_law = PhaseLaw::uniform_random;
    std::uint64_t seed = 12345;
    bool auto_samples = false; // scale samples as q0 shrinks
};
SweepTable map_table(const MapOptions& opt);

/// Stability-band widths around af = n^2 for n = 1..n_max.
struct BandsOptions {
    ForcingModel model = ForcingModel::symmetric_uniform(0.1, 2.0);
    int n_max = 3;
    std::string regime = "small"; // "small" or "large"
};
SweepTable bands_table(const BandsOptions& opt);

/// gnuplot line-plot script for a table written to csv_path.
std::string plot_script_for(const SweepTable& table, const std::string& csv_path);

} // namespace hillrand
