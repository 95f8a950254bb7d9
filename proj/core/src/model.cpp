#include "hillrand/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hillrand {

namespace {
constexpr double kPi = std::numbers::pi;
}

double CycleParams::phi() const { return std::sqrt(af) * kPi; }

ForcingModel ForcingModel::constant(double q, double af) {
    ForcingModel m;
    m.q_law = QLaw::constant;
    m.q_amp = q;
    m.af_law = AfLaw::fixed;
    m.af = af;
    m.validate();
    return m;
}

ForcingModel ForcingModel::shifted_uniform(double q0, double af) {
    ForcingModel m;
    m.q_law = QLaw::shifted_uniform;
    m.q_amp = q0;
    m.af_law = AfLaw::fixed;
    m.af = af;
    m.validate();
    return m;
}

ForcingModel ForcingModel::symmetric_uniform(double q0, double af) {
    ForcingModel m;
    m.q_law = QLaw::symmetric_uniform;
    m.q_amp = q0;
    m.af_law = AfLaw::fixed;
    m.af = af;
    m.validate();
    return m;
}

ForcingModel ForcingModel::with_uniform_angle(double Gamma) const {
    ForcingModel m = *this;
    m.af_law = AfLaw::uniform_angle;
    m.angle_span = Gamma;
    m.af = 0.0;
    m.validate();
    return m;
}

void ForcingModel::validate() const {
    if (!std::isfinite(q_amp)) throw std::invalid_argument("q amplitude must be finite");
    if (q_law != QLaw::constant && q_amp <= 0.0)
        throw std::invalid_argument("q0 must be positive for the uniform laws");
    switch (af_law) {
    case AfLaw::fixed:
        if (!(af > 0.0) || !std::isfinite(af))
            throw std::invalid_argument("af must be positive and finite");
        break;
    case AfLaw::uniform_angle:
        if (!(angle_span > 0.0) || !std::isfinite(angle_span))
            throw std::invalid_argument("angle span must be positive and finite");
        break;
    }
}

CycleParams sample_cycle(const ForcingModel& model, RandomStream& stream) {
    double af = model.af;
    if (model.af_law == AfLaw::uniform_angle) {
        // phi uniform on (0, Gamma]; open at zero keeps af > 0.
        const double phi = model.angle_span * (1.0 - stream.uniform01());
        af = (phi / kPi) * (phi / kPi);
    }
    double q = model.q_amp;
    switch (model.q_law) {
    case QLaw::constant: break;
    case QLaw::shifted_uniform: q = model.q_amp * (1.0 + stream.uniform01()); break;
    case QLaw::symmetric_uniform: q = model.q_amp * (2.0 * stream.uniform01() - 1.0); break;
    }
    return {af, q};
}

QMoments moments_of(const ForcingModel& model) {
    QMoments mo{};
    const double a = model.q_amp;
    switch (model.q_law) {
    case QLaw::constant:
        mo.mean_q = a;
        mo.mean_q_sq = a * a;
        mo.var_q = 0.0;
        break;
    case QLaw::shifted_uniform:
        mo.mean_q = 1.5 * a;
        mo.mean_q_sq = 7.0 / 3.0 * a * a;
        mo.var_q = a * a / 12.0;
        break;
    case QLaw::symmetric_uniform:
        mo.mean_q = 0.0;
        mo.mean_q_sq = a * a / 3.0;
        mo.var_q = a * a / 3.0;
        break;
    }
    mo.mean_af = model.af_law == AfLaw::fixed
                     ? model.af
                     : model.angle_span * model.angle_span / (3.0 * kPi * kPi);
    return mo;
}

double mean_abs_q(const ForcingModel& model) {
    switch (model.q_law) {
    case QLaw::constant: return std::abs(model.q_amp);
    case QLaw::shifted_uniform: return 1.5 * model.q_amp;
    case QLaw::symmetric_uniform: return 0.5 * model.q_amp;
    }
    return 0.0;
}

double min_abs_q(const ForcingModel& model) {
    switch (model.q_law) {
    case QLaw::constant: return std::abs(model.q_amp);
    case QLaw::shifted_uniform: return model.q_amp;
    case QLaw::symmetric_uniform: return 0.0;
    }
    return 0.0;
}

bool q_support_crosses_zero(const ForcingModel& model) {
    switch (model.q_law) {
    case QLaw::constant: return model.q_amp == 0.0;
    case QLaw::shifted_uniform: return false;
    case QLaw::symmetric_uniform: return true;
    }
    return false;
}

namespace {

const char* q_law_name(QLaw law) {
    switch (law) {
    case QLaw::constant: return "constant";
    case QLaw::shifted_uniform: return "shifted";
    case QLaw::symmetric_uniform: return "symmetric";
    }
    return "?";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

} // namespace

std::string format_model(const ForcingModel& model) {
    std::ostringstream os;
    os.precision(17);
    os << "dist=" << q_law_name(model.q_law);
    os << (model.q_law == QLaw::constant ? " q=" : " q0=") << model.q_amp;
    if (model.af_law == AfLaw::fixed)
        os << " af=" << model.af;
    else
        os << " aflaw=angle gamma=" << model.angle_span;
    return os.str();
}

ForcingModel parse_model(const std::string& text) {
    ForcingModel m;
    bool have_af = false, have_angle = false, have_q = false;
    std::istringstream is(trim(text));
    std::string tok;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad model token '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "dist") {
            if (val == "constant") m.q_law = QLaw::constant;
            else if (val == "shifted") m.q_law = QLaw::shifted_uniform;
            else if (val == "symmetric") m.q_law = QLaw::symmetric_uniform;
            else throw std::invalid_argument("unknown dist '" + val + "'");
        } else if (key == "q" || key == "q0") {
            m.q_amp = std::stod(val);
            have_q = true;
        } else if (key == "af") {
            m.af_law = AfLaw::fixed;
            m.af = std::stod(val);
            have_af = true;
        } else if (key == "aflaw") {
            if (val != "angle") throw std::invalid_argument("unknown aflaw '" + val + "'");
            m.af_law = AfLaw::uniform_angle;
            have_angle = true;
        } else if (key == "gamma") {
            m.angle_span = std::stod(val);
        } else {
            throw std::invalid_argument("unknown model key '" + key + "'");
        }
    }
    if (!have_q) throw std::invalid_argument("model needs q or q0");
    if (!have_af && !have_angle)
        throw std::invalid_argument("model needs af or aflaw=angle gamma=...");
    m.validate();
    return m;
}

} // namespace hillrand
