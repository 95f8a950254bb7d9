#include "hillrand/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hillrand/parallel.hpp"
#include "hillrand/transfer.hpp"

namespace hillrand {

namespace {

constexpr double kPi = std::numbers::pi;

PhaseState rotate(double af, double t, const PhaseState& s) {
    const double w = std::sqrt(af);
    const double c = std::cos(w * t);
    const double sn = std::sin(w * t);
    return {c * s.y + sn / w * s.v, -w * sn * s.y + c * s.v};
}

// One RK4 step of y'' = -k2 y (constant coefficient within a segment).
PhaseState rk4_step(double k2, double h, const PhaseState& s) {
    const auto f = [k2](const PhaseState& u) { return PhaseState{u.v, -k2 * u.y}; };
    const PhaseState k1 = f(s);
    const PhaseState k2s = f({s.y + 0.5 * h * k1.y, s.v + 0.5 * h * k1.v});
    const PhaseState k3 = f({s.y + 0.5 * h * k2s.y, s.v + 0.5 * h * k2s.v});
    const PhaseState k4 = f({s.y + h * k3.y, s.v + h * k3.v});
    return {s.y + h / 6.0 * (k1.y + 2.0 * k2s.y + 2.0 * k3.y + k4.y),
            s.v + h / 6.0 * (k1.v + 2.0 * k2s.v + 2.0 * k3.v + k4.v)};
}

PhaseState rk4_segment(double k2, double length, int steps, PhaseState s) {
    const double h = length / steps;
    for (int i = 0; i < steps; ++i) s = rk4_step(k2, h, s);
    return s;
}

} // namespace

PhaseState integrate_cycle(const CycleParams& p, const PhaseState& s,
                           IntegrationMethod method, double width) {
    if (!(p.af > 0.0)) throw std::invalid_argument("af must be positive");
    if (method == IntegrationMethod::exact) {
        PhaseState mid = rotate(p.af, kPi / 2.0, s);
        mid.v -= p.q * mid.y;
        return rotate(p.af, kPi / 2.0, mid);
    }
    if (!(width > 0.0) || width >= 0.1)
        throw std::invalid_argument("smoothed barrier width must satisfy 0 < w < 0.1");
    // Top-hat of height q/width centred on t = pi/2; the three segments all
    // have constant coefficients.
    const double free_len = kPi / 2.0 - width / 2.0;
    const int free_steps = static_cast<int>(std::ceil(free_len / 1e-4));
    const int barrier_steps = 64;
    PhaseState out = rk4_segment(p.af, free_len, free_steps, s);
    out = rk4_segment(p.af + p.q / width, width, barrier_steps, out);
    return rk4_segment(p.af, free_len, free_steps, out);
}

EnergyGrowthFit ensemble_energy_growth(double af, const ForcingModel& model,
                                       long n_traj, long n_cycles,
                                       std::uint64_t seed) {
    model.validate();
    if (!(af > 0.0)) throw std::invalid_argument("af must be positive");
    if (model.af_law != AfLaw::fixed || model.af != af)
        throw std::invalid_argument("ensemble_energy_growth: model must fix the same af");
    if (n_traj < 1000) throw std::invalid_argument("need n_traj >= 1000");
    if (n_cycles < 20) throw std::invalid_argument("need n_cycles >= 20");

    const QMoments mo = moments_of(model);
    if (mo.mean_q_sq / af > 0.01)
        // diffusion picture assumes weak kicks; still computable
        std::fputs("ensemble_energy_growth: <q^2>/af > 0.01, diffusion scaling strained\n",
                   stderr);

    const FixedAfKernel kernel(af);
    constexpr int kBlocks = 16;
    const long per_block = (n_traj + kBlocks - 1) / kBlocks;
    std::vector<std::vector<double>> block_sums(kBlocks,
                                                std::vector<double>(n_cycles, 0.0));
    parallel_for(kBlocks, [&](long b) {
        auto& sums = block_sums[b];
        const long lo = b * per_block;
        const long hi = std::min(n_traj, lo + per_block);
        for (long traj = lo; traj < hi; ++traj) {
            RandomStream rs(seed, static_cast<std::uint64_t>(traj));
            double y = 1.0, v = 0.0;
            for (long k = 0; k < n_cycles; ++k) {
                const double q = sample_cycle(model, rs).q;
                const TransferMatrix m = kernel.at(q);
                const double y2 = m.m11 * y + m.m12 * v;
                const double v2 = m.m21 * y + m.m22 * v;
                y = y2;
                v = v2;
                sums[k] += y * y;
            }
        }
    });

    EnergyGrowthFit fit;
    fit.t.resize(n_cycles);
    fit.mean_y_sq.resize(n_cycles);
    for (long k = 0; k < n_cycles; ++k) {
        double total = 0.0;
        for (int b = 0; b < kBlocks; ++b) total += block_sums[b][k];
        fit.t[k] = kPi * static_cast<double>(k + 1);
        fit.mean_y_sq[k] = total / static_cast<double>(n_traj);
    }

    const long k0 = n_cycles / 10; // transient discard
    const auto slope_of = [&](const std::vector<double>& y2) {
        double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
        long cnt = 0;
        for (long k = k0; k < n_cycles; ++k) {
            const double x = fit.t[k];
            const double y = std::log(y2[k]);
            st += x;
            sy += y;
            stt += x * x;
            sty += x * y;
            ++cnt;
        }
        const double n = static_cast<double>(cnt);
        return (n * sty - st * sy) / (n * stt - st * st);
    };
    fit.rate = slope_of(fit.mean_y_sq);

    // block fits give the error bar
    std::vector<double> bslopes;
    bslopes.reserve(kBlocks);
    std::vector<double> tmp(n_cycles);
    for (int b = 0; b < kBlocks; ++b) {
        const long lo = b * per_block;
        const long hi = std::min(n_traj, lo + per_block);
        const long cnt = hi - lo;
        if (cnt <= 0) continue;
        for (long k = 0; k < n_cycles; ++k)
            tmp[k] = block_sums[b][k] / static_cast<double>(cnt);
        bslopes.push_back(slope_of(tmp));
    }
    if (bslopes.size() > 1) {
        double mean = 0.0;
        for (double s : bslopes) mean += s;
        mean /= static_cast<double>(bslopes.size());
        double ss = 0.0;
        for (double s : bslopes) ss += (s - mean) * (s - mean);
        fit.stderr_ = std::sqrt(ss / (static_cast<double>(bslopes.size()) - 1.0)) /
                      std::sqrt(static_cast<double>(bslopes.size()));
    }
    return fit;
}

GrowthEstimate iterative_map_growth(const ForcingModel& model, long n,
                                    std::uint64_t seed, PhaseLaw law) {
    model.validate();
    if (n < 10000) throw std::invalid_argument("iterative_map_growth: need n >= 1e4");

    RandomStream rs(seed, 0);
    double sum = 0.0, sum_sq = 0.0;
    if (law == PhaseLaw::uniform_random) {
        for (long i = 0; i < n; ++i) {
            const CycleParams p = sample_cycle(model, rs);
            double f;
            do {
                f = std::tan(kPi * rs.uniform01());
            } while (std::abs(f) > 1e6);
            const double term = std::log(std::abs(1.0 - p.q / std::sqrt(p.af) * f));
            sum += term;
            sum_sq += term * term;
        }
    } else {
        PhaseState s{0.0, 1.0};
        for (long i = 0; i < n; ++i) {
            const CycleParams p = sample_cycle(model, rs);
            PhaseState mid = rotate(p.af, kPi / 2.0, s);
            if (mid.v == 0.0)
                throw std::domain_error("iterative_map_growth: kick landed on V = 0");
            const double term = std::log(std::abs(1.0 - p.q * mid.y / mid.v));
            sum += term;
            sum_sq += term * term;
            mid.v -= p.q * mid.y;
            s = rotate(p.af, kPi / 2.0, mid);
            // keep the trajectory scale bounded; the map only uses y/V
            const double scale = std::max(std::abs(s.y), std::abs(s.v));
            if (scale > 1e100) {
                s.y /= scale;
                s.v /= scale;
            }
        }
    }
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = std::max(0.0, sum_sq / nn - mean * mean);
    GrowthEstimate out;
    out.gamma = mean;
    out.stderr_ = std::sqrt(var / nn);
    out.n_cycles = n;
    out.n_trials = 1;
    out.estimator = law == PhaseLaw::uniform_random ? "iterative_map(uniform)"
                                                    : "iterative_map(trajectory)";
    return out;
}

} // namespace hillrand
