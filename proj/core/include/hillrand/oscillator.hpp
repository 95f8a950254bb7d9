#pragma once

#include <cstdint>
#include <vector>

#include "hillrand/lyapunov.hpp"
#include "hillrand/model.hpp"

namespace hillrand {

/// Oscillator phase-space state (y, V = dy/dt).
struct PhaseState {
    double y;
    double v;

    double energy(double af) const { return 0.5 * (v * v + af * y * y); }
};

enum class IntegrationMethod { exact, smoothed };

/// Advances the state through one period: free oscillation to t = pi/2,
/// velocity kick v -> v - q y, free oscillation to t = pi.
/// exact     — closed-form propagation (matches cycle_matrix).
/// smoothed  — fixed-step RK4 with the kick spread over a top-hat of width
///             `width` and area q; converges to exact at rate O(width).
///             Requires 0 < width < 0.1.
PhaseState integrate_cycle(const CycleParams& p, const PhaseState& s,
                           IntegrationMethod method, double width = 0.0);

/// Ensemble <y^2> growth: evolves n_traj trajectories from (1, 0), fits
/// log <y^2> against t = pi * cycle by least squares after discarding the
/// first 10% of cycles. stderr from block fits (16 trajectory blocks).
struct EnergyGrowthFit {
    double rate = 0.0;    // per unit time
    double stderr_ = 0.0;
    std::vector<double> t;          // cycle-end times
    std::vector<double> mean_y_sq;  // ensemble <y^2> at those times
};
EnergyGrowthFit ensemble_energy_growth(double af, const ForcingModel& model,
                                       long n_traj, long n_cycles,
                                       std::uint64_t seed);

enum class PhaseLaw {
    uniform_random, // y/V = tan(theta)/sqrt(af), theta uniform on [0, pi)
    trajectory,     // y/V read off an integrated trajectory before each kick
};

/// Growth heuristic from the iterated jump condition:
/// mean of log|1 - q_k (y_k/V_k)| over n kicks. With the uniform phase law,
/// samples with |tan(theta)| > 1e6 are rejected and redrawn. The trajectory
/// law signals std::domain_error if a kick lands exactly on V = 0.
GrowthEstimate iterative_map_growth(const ForcingModel& model, long n,
                                    std::uint64_t seed, PhaseLaw law);

} // namespace hillrand
