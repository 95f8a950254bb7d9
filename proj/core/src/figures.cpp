#include "hillrand/figures.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hillrand/asymptotics.hpp"
#include "hillrand/lyapunov.hpp"
#include "hillrand/moments.hpp"
#include "hillrand/parallel.hpp"

namespace hillrand {

const char* const kVersion = "0.1.0";

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> log_spaced(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw std::invalid_argument("need 0 < lo < hi and points >= 2");
    std::vector<double> out(points);
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = lo * std::exp(step * i);
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> lin_spaced(double lo, double hi, int points) {
    if (!(hi > lo) || points < 2)
        throw std::invalid_argument("need lo < hi and points >= 2");
    std::vector<double> out(points);
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = lo + step * i;
    out.back() = hi;
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double linlog_slope(const std::vector<double>& logx, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(logx.size());
    for (std::size_t i = 0; i < logx.size(); ++i) {
        sx += logx[i];
        sy += y[i];
        sxx += logx[i] * logx[i];
        sxy += logx[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::uint64_t point_seed(std::uint64_t seed, long point) {
    return seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(point + 1);
}

void stamp(SweepTable& t, const std::string& subcommand, std::uint64_t seed) {
    t.add_metadata("tool", "hillrand");
    t.add_metadata("version", kVersion);
    t.add_metadata("subcommand", subcommand);
    t.add_metadata("rng", "xoshiro256++ / splitmix64 substreams");
    t.add_metadata("seed", static_cast<double>(seed));
}

} // namespace

SweepTable fig1_table(const Fig1Options& opt) {
    const auto q0s = log_spaced(opt.q0_min, opt.q0_max, opt.points);
    if (q0s.back() / q0s.front() < 100.0)
        throw std::invalid_argument("fig1: q0 range must span at least two decades");

    SweepTable t;
    stamp(t, "fig1", opt.seed);
    t.add_metadata("model", format_model(ForcingModel::shifted_uniform(1.0, opt.af)) +
                                " (q0 swept)");
    t.add_metadata("af", opt.af);
    t.add_metadata("af_note", "af is a free choice for this sweep; default 0.5");
    t.add_metadata("cycles", static_cast<double>(opt.cycles));
    t.add_metadata("trials", static_cast<double>(opt.trials));
    t.add_metadata("estimator",
                   "all three rates averaged over the same draws after a 1000-cycle "
                   "warm-up, so the differences resolve the closed-form error");
    t.set_columns({"q0", "gamma_mc", "gamma_mc_stderr", "gamma_thm21", "gamma_cor21",
                   "diff21_abs", "diffcor_abs"});

    std::vector<double> d21, dcor;
    for (std::size_t i = 0; i < q0s.size(); ++i) {
        const ForcingModel model = ForcingModel::shifted_uniform(q0s[i], opt.af);
        require_off_resonance(opt.af, model, Regime::large_q);
        const ReferenceRates r = growth_rate_with_references(
            model, opt.cycles, opt.trials, point_seed(opt.seed, static_cast<long>(i)));
        const double diff21 = std::abs(r.mc.gamma - r.large_q.gamma);
        const double diffcor = std::abs(r.mc.gamma - r.infinite_q.gamma);
        d21.push_back(diff21);
        dcor.push_back(diffcor);
        t.push_row({q0s[i], r.mc.gamma, r.mc.stderr_, r.large_q.gamma,
                    r.infinite_q.gamma, diff21, diffcor});
    }
    t.add_metadata("fitted_slope_thm21", loglog_slope(q0s, d21));
    t.add_metadata("fitted_slope_cor21", loglog_slope(q0s, dcor));
    return t;
}

long fig2_cycle_schedule(int ell, long requested) {
    if (requested > 0) return requested;
    switch (ell) {
    case 8: return 6000000;
    case 7: return 1500000;
    case 6: return 400000;
    default: return 100000;
    }
}

SweepTable fig2_table(const Fig2Options& opt) {
    const auto afs = lin_spaced(opt.af_min, opt.af_max, opt.points);
    const int n_ell = static_cast<int>(opt.ells.size());
    if (n_ell == 0) throw std::invalid_argument("fig2: need at least one l");

    SweepTable t;
    stamp(t, "fig2", opt.seed);
    t.add_metadata("model", "dist=symmetric q0=10/2^l af=swept");
    t.add_metadata("trials", static_cast<double>(opt.trials));
    {
        std::ostringstream os;
        for (int i = 0; i < n_ell; ++i)
            os << (i ? "," : "") << "l" << opt.ells[i] << ":"
               << fig2_cycle_schedule(opt.ells[i], opt.cycles);
        t.add_metadata("cycles_per_l", os.str());
    }
    t.add_metadata("thm31_note",
                   "closed form evaluated through the stability bands as well");

    std::vector<std::string> names{"af"};
    for (int ell : opt.ells) {
        names.push_back("gamma_mc_l" + std::to_string(ell));
        names.push_back("gamma_mc_l" + std::to_string(ell) + "_stderr");
        names.push_back("gamma_thm31_l" + std::to_string(ell));
    }
    t.set_columns(names);

    // flat task grid (point, l, trial), reduced in fixed order
    const long n_pts = static_cast<long>(afs.size());
    const long per_point = static_cast<long>(n_ell) * opt.trials;
    std::vector<double> trial_gamma(n_pts * per_point);
    parallel_for(n_pts * per_point, [&](long task) {
        const long pt = task / per_point;
        const long rest = task % per_point;
        const int le = static_cast<int>(rest / opt.trials);
        const long n_cycles = fig2_cycle_schedule(opt.ells[le], opt.cycles);
        const double q0 = 10.0 / std::pow(2.0, opt.ells[le]);
        const ForcingModel model = ForcingModel::symmetric_uniform(q0, afs[pt]);
        trial_gamma[task] =
            growth_rate_single_trial(model, n_cycles, opt.seed,
                                     static_cast<std::uint64_t>(task));
    });

    for (long pt = 0; pt < n_pts; ++pt) {
        std::vector<double> row{afs[pt]};
        for (int le = 0; le < n_ell; ++le) {
            const double q0 = 10.0 / std::pow(2.0, opt.ells[le]);
            double mean = 0.0;
            for (int tr = 0; tr < opt.trials; ++tr)
                mean += trial_gamma[pt * per_point + le * opt.trials + tr];
            mean /= opt.trials;
            double ss = 0.0;
            for (int tr = 0; tr < opt.trials; ++tr) {
                const double d =
                    trial_gamma[pt * per_point + le * opt.trials + tr] - mean;
                ss += d * d;
            }
            const double se =
                opt.trials > 1
                    ? std::sqrt(ss / (opt.trials - 1)) / std::sqrt(double(opt.trials))
                    : 0.0;
            row.push_back(mean);
            row.push_back(se);
            row.push_back(small_q_formula(afs[pt], q0 * q0 / 3.0));
        }
        t.push_row(row);
    }
    return t;
}

SweepTable fig3_table(const Fig3Options& opt) {
    const auto afs = lin_spaced(opt.af_min, opt.af_max, opt.points);

    SweepTable t;
    stamp(t, "fig3", opt.seed);
    t.add_metadata("model", format_model(ForcingModel::symmetric_uniform(opt.q0, 1.0)) +
                                " (af swept)");
    t.add_metadata("q0", opt.q0);
    t.add_metadata("cycles", static_cast<double>(opt.cycles));
    t.add_metadata("trials", static_cast<double>(opt.trials));
    t.add_metadata("classical_q", opt.q0 / 2.0);
    t.set_columns({"af", "gamma_mc", "gamma_mc_stderr", "gamma_thm31", "gamma_inf",
                   "gamma_inf_stderr", "gamma_classical"});

    const long n_pts = static_cast<long>(afs.size());
    std::vector<double> trial_gamma(n_pts * opt.trials);
    parallel_for(n_pts * opt.trials, [&](long task) {
        const long pt = task / opt.trials;
        const ForcingModel model = ForcingModel::symmetric_uniform(opt.q0, afs[pt]);
        trial_gamma[task] = growth_rate_single_trial(model, opt.cycles, opt.seed,
                                                     static_cast<std::uint64_t>(task));
    });
    std::vector<GrowthEstimate> ginf(n_pts);
    parallel_for(n_pts, [&](long pt) {
        const ForcingModel model = ForcingModel::symmetric_uniform(opt.q0, afs[pt]);
        ginf[pt] = asymptotic_growth_rate(model, opt.inf_samples,
                                          point_seed(opt.seed, pt));
    });

    const double qsq = opt.q0 * opt.q0 / 3.0;
    for (long pt = 0; pt < n_pts; ++pt) {
        double mean = 0.0;
        for (int tr = 0; tr < opt.trials; ++tr) mean += trial_gamma[pt * opt.trials + tr];
        mean /= opt.trials;
        double ss = 0.0;
        for (int tr = 0; tr < opt.trials; ++tr) {
            const double d = trial_gamma[pt * opt.trials + tr] - mean;
            ss += d * d;
        }
        const double se = opt.trials > 1 ? std::sqrt(ss / (opt.trials - 1)) /
                                               std::sqrt(double(opt.trials))
                                         : 0.0;
        t.push_row({afs[pt], mean, se, small_q_formula(afs[pt], qsq), ginf[pt].gamma,
                    ginf[pt].stderr_,
                    classical_growth_rate({afs[pt], opt.q0 / 2.0})});
    }
    return t;
}

SweepTable moments_table(const MomentsOptions& opt) {
    opt.model.validate();
    const QMoments mo = moments_of(opt.model);

    SweepTable t;
    stamp(t, "moments", opt.seed);
    t.add_metadata("model", format_model(opt.model) + " (af overridden per phi)");
    t.add_metadata("samples", static_cast<double>(opt.samples));
    t.set_columns({"phi", "h_mean", "h_mean_mc", "h_mean_se", "h_sq", "h_sq_mc",
                   "h_sq_se", "h_var", "h_var_mc", "h_var_se", "g_mean", "g_mean_mc",
                   "g_mean_se", "g_sq", "g_sq_mc", "g_sq_se", "g_var", "g_var_mc",
                   "g_var_se"});

    for (std::size_t i = 0; i < opt.phis.size(); ++i) {
        const double phi = opt.phis[i];
        const double af = (phi / kPi) * (phi / kPi);
        ForcingModel m = opt.model;
        m.af_law = AfLaw::fixed;
        m.af = af;
        m.angle_span = 0.0;
        const ElementMoments ha = h_moments_fixed_angle(phi, mo.mean_q, mo.mean_q_sq);
        const ElementMoments ga = g_moments_fixed_angle(phi, mo.mean_q, mo.mean_q_sq);
        const SampledElementMoments s =
            mc_element_moments(m, opt.samples, point_seed(opt.seed, static_cast<long>(i)));
        t.push_row({phi,
                    ha.mean, s.h.value.mean, s.h.se_mean,
                    ha.mean_sq, s.h.value.mean_sq, s.h.se_mean_sq,
                    ha.variance, s.h.value.variance, s.h.se_variance,
                    ga.mean, s.g.value.mean, s.g.se_mean,
                    ga.mean_sq, s.g.value.mean_sq, s.g.se_mean_sq,
                    ga.variance, s.g.value.variance, s.g.se_variance});
    }
    return t;
}

SweepTable fp_check_table(const FpCheckOptions& opt) {
    const ForcingModel model = ForcingModel::symmetric_uniform(opt.q0, opt.af);
    const EnergyGrowthFit fit = ensemble_energy_growth(opt.af, model, opt.trajectories,
                                                       opt.cycles, opt.seed);
    const double predicted = moments_of(model).mean_q_sq / (kPi * opt.af);

    SweepTable t;
    stamp(t, "fp-check", opt.seed);
    t.add_metadata("model", format_model(model));
    t.add_metadata("trajectories", static_cast<double>(opt.trajectories));
    t.add_metadata("cycles", static_cast<double>(opt.cycles));
    t.add_metadata("fitted_rate", fit.rate);
    t.add_metadata("fitted_rate_stderr", fit.stderr_);
    t.add_metadata("predicted_rate_D_over_af", predicted);
    t.add_metadata("ratio_fitted_over_predicted", fit.rate / predicted);
    t.set_columns({"t", "mean_y_sq"});
    for (std::size_t i = 0; i < fit.t.size(); ++i)
        t.push_row({fit.t[i], fit.mean_y_sq[i]});
    return t;
}

SweepTable map_table(const MapOptions& opt) {
    const auto q0s = log_spaced(opt.q0_min, opt.q0_max, opt.points);

    SweepTable t;
    stamp(t, "map", opt.seed);
    t.add_metadata("af", opt.af);
    t.add_metadata("phase_law", opt.phase_law == PhaseLaw::uniform_random
                                    ? "uniform_random"
                                    : "trajectory");
    t.add_metadata("samples_base", static_cast<double>(opt.samples));
    t.add_metadata("samples_auto", opt.auto_samples ? "1" : "0");
    t.set_columns({"q0", "gamma_map", "gamma_map_stderr", "samples"});

    for (std::size_t i = 0; i < q0s.size(); ++i) {
        ForcingModel m;
        m.q_law = opt.q_law;
        m.q_amp = q0s[i];
        m.af_law = AfLaw::fixed;
        m.af = opt.af;
        m.validate();
        long n = opt.samples;
        if (opt.auto_samples) {
            const double boost = std::pow(opt.q0_max / q0s[i], 3.0);
            n = static_cast<long>(std::min(1.5e9, opt.samples * boost));
        }
        const GrowthEstimate g =
            iterative_map_growth(m, n, point_seed(opt.seed, static_cast<long>(i)),
                                 opt.phase_law);
        t.push_row({q0s[i], g.gamma, g.stderr_, static_cast<double>(n)});
    }

    // scaling summaries: log-log exponent and the nats-per-e-fold slope
    std::vector<double> g(t.column("gamma_map"));
    std::vector<double> lx;
    for (double q : q0s) lx.push_back(std::log(q));
    bool all_pos = true;
    for (double v : g) all_pos = all_pos && v > 0.0;
    if (all_pos) {
        t.add_metadata("fitted_loglog_exponent", loglog_slope(q0s, g));
    }
    t.add_metadata("fitted_slope_per_efold", linlog_slope(lx, g));
    return t;
}

SweepTable bands_table(const BandsOptions& opt) {
    opt.model.validate();
    Regime regime;
    if (opt.regime == "small") regime = Regime::small_q;
    else if (opt.regime == "large") regime = Regime::large_q;
    else throw std::invalid_argument("bands: regime must be 'small' or 'large'");

    SweepTable t;
    stamp(t, "bands", 0);
    t.add_metadata("model", format_model(opt.model));
    t.add_metadata("regime", opt.regime);
    t.add_metadata("q_ref", mean_abs_q(opt.model));
    t.add_metadata("q_ref_convention", "mean |q| of the model");
    t.set_columns({"n", "af_center", "width"});
    for (int n = 1; n <= opt.n_max; ++n)
        t.push_row({static_cast<double>(n), static_cast<double>(n) * n,
                    stability_band_width(n, opt.model, regime)});
    return t;
}

std::string plot_script_for(const SweepTable& table, const std::string& csv_path) {
    std::ostringstream os;
    os << "# gnuplot script generated alongside " << csv_path << "\n";
    os << "set datafile separator ','\n";
    os << "set datafile commentschars '#'\n";
    os << "set key autotitle columnhead\n";
    os << "set style data lines\n";
    const auto& names = table.column_names();
    os << "set xlabel '" << (names.empty() ? "x" : names.front()) << "'\n";
    os << "plot ";
    bool first = true;
    for (std::size_t c = 1; c < names.size(); ++c) {
        if (names[c].find("stderr") != std::string::npos ||
            names[c].find("_se") != std::string::npos || names[c] == "samples")
            continue;
        if (!first) os << ", \\\n     ";
        os << "'" << csv_path << "' using 1:" << (c + 1);
        first = false;
    }
    os << "\n";
    return os.str();
}

} // namespace hillrand
