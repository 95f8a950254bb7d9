// hillrand: growth rates of randomly forced Hill's equations (delta-kick
// limit). Each subcommand runs one sweep and writes a CSV with a '#'
// metadata preamble. Exit codes: 0 ok, 2 bad arguments, 3 numeric failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "hillrand/errors.hpp"
#include "hillrand/figures.hpp"
#include "hillrand/model.hpp"

namespace {

using namespace hillrand;

void write_outputs(const SweepTable& table, const std::string& out,
                   bool plot_script) {
    table.write_file(out);
    if (plot_script) {
        const std::string gp = out + ".gp";
        std::ofstream os(gp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open '" + gp + "'");
        os << plot_script_for(table, out);
    }
    std::fprintf(stdout, "wrote %s (%zu rows)\n", out.c_str(), table.rows());
}

QLaw parse_dist(const std::string& name) {
    if (name == "constant") return QLaw::constant;
    if (name == "shifted") return QLaw::shifted_uniform;
    if (name == "symmetric") return QLaw::symmetric_uniform;
    throw CLI::ValidationError("--dist must be constant|shifted|symmetric");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Growth rates of random Hill's equations with delta-function kicks"};
    app.require_subcommand(1);
    app.fallthrough(); // --out/--seed/--plot-script may follow the subcommand

    std::string out = "out.csv";
    bool plot_script = false;
    std::uint64_t seed = 12345;
    app.add_option("--out", out, "output CSV path")->capture_default_str();
    app.add_flag("--plot-script", plot_script, "also write a gnuplot script next to the CSV");
    app.add_option("--seed", seed, "base RNG seed")->capture_default_str();

    Fig1Options f1;
    auto* fig1 = app.add_subcommand("fig1", "large-q closed forms vs product growth rate");
    fig1->add_option("--q0-min", f1.q0_min)->capture_default_str();
    fig1->add_option("--q0-max", f1.q0_max)->capture_default_str();
    fig1->add_option("--points", f1.points)->capture_default_str();
    fig1->add_option("--af", f1.af)->capture_default_str();
    fig1->add_option("--cycles", f1.cycles)->capture_default_str();
    fig1->add_option("--trials", f1.trials)->capture_default_str();

    Fig2Options f2;
    auto* fig2 = app.add_subcommand("fig2", "small-q growth rates across af for q0 = 10/2^l");
    fig2->add_option("--af-min", f2.af_min)->capture_default_str();
    fig2->add_option("--af-max", f2.af_max)->capture_default_str();
    fig2->add_option("--points", f2.points)->capture_default_str();
    fig2->add_option("--ell", f2.ells, "l values, q0 = 10/2^l")->capture_default_str();
    fig2->add_option("--cycles", f2.cycles, "cycles per trial (0 = per-l schedule)")
        ->capture_default_str();
    fig2->add_option("--trials", f2.trials)->capture_default_str();

    Fig3Options f3;
    auto* fig3 = app.add_subcommand("fig3", "growth-rate comparison at q0 = 2.5");
    fig3->add_option("--af-min", f3.af_min)->capture_default_str();
    fig3->add_option("--af-max", f3.af_max)->capture_default_str();
    fig3->add_option("--points", f3.points)->capture_default_str();
    fig3->add_option("--q0", f3.q0)->capture_default_str();
    fig3->add_option("--cycles", f3.cycles)->capture_default_str();
    fig3->add_option("--trials", f3.trials)->capture_default_str();
    fig3->add_option("--inf-samples", f3.inf_samples)->capture_default_str();

    MomentsOptions mo;
    std::string mo_dist = "symmetric";
    double mo_q0 = 1.0;
    auto* momentsc = app.add_subcommand("moments", "analytic vs sampled element moments");
    momentsc->add_option("--dist", mo_dist, "constant|shifted|symmetric")->capture_default_str();
    momentsc->add_option("--q0", mo_q0, "q (constant) or q0")->capture_default_str();
    momentsc->add_option("--phi", mo.phis, "angle grid")->capture_default_str();
    momentsc->add_option("--samples", mo.samples)->capture_default_str();

    FpCheckOptions fp;
    auto* fpc = app.add_subcommand("fp-check", "ensemble <y^2> growth vs the diffusion rate");
    fpc->add_option("--af", fp.af)->capture_default_str();
    fpc->add_option("--q0", fp.q0)->capture_default_str();
    fpc->add_option("--traj", fp.trajectories)->capture_default_str();
    fpc->add_option("--cycles", fp.cycles)->capture_default_str();

    MapOptions mp;
    std::string mp_dist = "symmetric";
    std::string mp_law = "uniform";
    auto* mapc = app.add_subcommand("map", "iterated jump-condition growth heuristic");
    mapc->add_option("--q0-min", mp.q0_min)->capture_default_str();
    mapc->add_option("--q0-max", mp.q0_max)->capture_default_str();
    mapc->add_option("--points", mp.points)->capture_default_str();
    mapc->add_option("--af", mp.af)->capture_default_str();
    mapc->add_option("--dist", mp_dist, "constant|shifted|symmetric")->capture_default_str();
    mapc->add_option("--samples", mp.samples)->capture_default_str();
    mapc->add_flag("--auto-samples", mp.auto_samples,
                   "scale samples up as q0 shrinks (keeps relative error flat)");
    mapc->add_option("--law", mp_law, "uniform|trajectory")->capture_default_str();

    BandsOptions bd;
    std::string bd_model = "dist=symmetric q0=0.1 af=2";
    auto* bandsc = app.add_subcommand("bands", "stability-band widths around af = n^2");
    bandsc->add_option("--model", bd_model, "flat key-value model description")
        ->capture_default_str();
    bandsc->add_option("--n-max", bd.n_max)->capture_default_str();
    bandsc->add_option("--regime", bd.regime, "small|large")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        SweepTable table;
        if (*fig1) {
            f1.seed = seed;
            table = fig1_table(f1);
        } else if (*fig2) {
            f2.seed = seed;
            table = fig2_table(f2);
        } else if (*fig3) {
            f3.seed = seed;
            table = fig3_table(f3);
        } else if (*momentsc) {
            mo.seed = seed;
            ForcingModel m;
            m.q_law = parse_dist(mo_dist);
            m.q_amp = mo_q0;
            m.af_law = AfLaw::fixed;
            m.af = 1.0;
            m.validate();
            mo.model = m;
            table = moments_table(mo);
        } else if (*fpc) {
            fp.seed = seed;
            table = fp_check_table(fp);
        } else if (*mapc) {
            mp.seed = seed;
            mp.q_law = parse_dist(mp_dist);
            if (mp_law == "uniform") mp.phase_law = PhaseLaw::uniform_random;
            else if (mp_law == "trajectory") mp.phase_law = PhaseLaw::trajectory;
            else throw std::invalid_argument("--law must be uniform|trajectory");
            table = map_table(mp);
        } else if (*bandsc) {
            bd.model = parse_model(bd_model);
            table = bands_table(bd);
        }
        write_outputs(table, out, plot_script);
        return 0;
    } catch (const resonant_af_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    }
}
