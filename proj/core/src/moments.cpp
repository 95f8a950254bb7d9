#include "hillrand/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hillrand/errors.hpp"

namespace hillrand {

namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Gauss-Kronrod nodes/weights on [-1, 1] (Kronrad extension of G7).
constexpr double kKronrodX[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
constexpr double kKronrodW[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

double kronrod_panel(double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 15; ++i)
        acc += kKronrodW[i] * sinc(mid + half * kKronrodX[i]);
    return acc * half;
}

double si_quadrature(double x) {
    // one panel per half-period keeps the integrand smooth and the panel
    // error far below 1e-14
    const int panels = std::max(1, static_cast<int>(std::ceil(x / kPi)));
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = x * i / panels;
        const double b = x * (i + 1) / panels;
        acc += kronrod_panel(a, b);
    }
    return acc;
}

double si_asymptotic(double x) {
    // Si(x) = pi/2 - f(x) cos x - g(x) sin x with the standard auxiliary
    // series; truncated where the (asymptotic) terms turn around.
    const double inv2 = 1.0 / (x * x);
    double f = 1.0, mag = 1.0, sign = -1.0;
    for (int k = 1; k <= 16; ++k) {
        const double next = mag * (2.0 * k) * (2.0 * k - 1.0) * inv2;
        if (next >= mag) break;
        mag = next;
        f += sign * mag;
        sign = -sign;
    }
    f /= x;
    double g = 1.0;
    mag = 1.0;
    sign = -1.0;
    for (int k = 1; k <= 16; ++k) {
        const double next = mag * (2.0 * k) * (2.0 * k + 1.0) * inv2;
        if (next >= mag) break;
        mag = next;
        g += sign * mag;
        sign = -sign;
    }
    g *= inv2;
    return kPi / 2.0 - f * std::cos(x) - g * std::sin(x);
}

} // namespace

double sine_integral(double x) {
    if (x < 0.0) throw std::invalid_argument("sine_integral: x must be >= 0");
    if (x > 1e5) throw std::invalid_argument("sine_integral: x too large (max 1e5)");
    if (x == 0.0) return 0.0;
    return x <= 30.0 ? si_quadrature(x) : si_asymptotic(x);
}

namespace {

ElementMoments finish(double mean, double mean_sq, Element el, MomentLaw law) {
    ElementMoments m;
    m.mean = mean;
    m.mean_sq = mean_sq;
    m.variance = std::max(0.0, mean_sq - mean * mean);
    m.element = el;
    m.law = law;
    return m;
}

MomentLaw law_for(double q_mean, double q_sq_mean, MomentLaw angle_case) {
    if (angle_case == MomentLaw::fixed_angle) return MomentLaw::fixed_angle;
    const double var = q_sq_mean - q_mean * q_mean;
    return var > 1e-14 * std::max(1.0, q_sq_mean) ? MomentLaw::joint
                                                  : MomentLaw::angle_avg;
}

void check_two_pi_m(double Gamma) {
    const double m = Gamma / (2.0 * kPi);
    if (std::abs(m - std::round(m)) > 1e-9 || m < 0.5)
        throw std::invalid_argument("simplified variance needs Gamma = 2 pi m");
}

} // namespace

ElementMoments h_moments_fixed_angle(double phi, double q_mean, double q_sq_mean) {
    if (!(phi > 0.0)) throw std::invalid_argument("phi must be positive");
    const double s = std::sin(phi), c = std::cos(phi);
    const double mean = c - kPi / 2.0 * q_mean * s / phi;
    const double mean_sq = c * c + kPi * kPi / 4.0 * q_sq_mean * (s / phi) * (s / phi) -
                           kPi * c * s / phi * q_mean;
    return finish(mean, mean_sq, Element::h, MomentLaw::fixed_angle);
}

ElementMoments g_moments_fixed_angle(double phi, double q_mean, double q_sq_mean) {
    if (!(phi > 0.0)) throw std::invalid_argument("phi must be positive");
    const double s = std::sin(phi), c = std::cos(phi);
    const double mean = -phi * s / kPi - 0.5 * (1.0 + c) * q_mean;
    const double mean_sq = phi * phi * s * s / (kPi * kPi) +
                           0.25 * (1.0 + c) * (1.0 + c) * q_sq_mean +
                           phi * s * (1.0 + c) / kPi * q_mean;
    return finish(mean, mean_sq, Element::g, MomentLaw::fixed_angle);
}

ElementMoments h_moments_angle_avg(double Gamma, double q_mean, double q_sq_mean) {
    if (!(Gamma > 0.0)) throw std::invalid_argument("Gamma must be positive");
    const double sG = std::sin(Gamma);
    const double s2G = std::sin(2.0 * Gamma);
    const double si_G = sine_integral(Gamma);
    const double si_2G = sine_integral(std::min(2.0 * Gamma, 1e5));
    const double mean = sG / Gamma - kPi * q_mean / (2.0 * Gamma) * si_G;
    const double mean_sq = 0.5 + s2G / (4.0 * Gamma) +
                           kPi * kPi / 4.0 * q_sq_mean * (si_2G / Gamma - sG * sG / (Gamma * Gamma)) -
                           kPi * q_mean / (2.0 * Gamma) * si_2G;
    return finish(mean, mean_sq, Element::h, law_for(q_mean, q_sq_mean, MomentLaw::angle_avg));
}

ElementMoments g_moments_angle_avg(double Gamma, double q_mean, double q_sq_mean) {
    if (!(Gamma > 0.0)) throw std::invalid_argument("Gamma must be positive");
    const double sG = std::sin(Gamma), cG = std::cos(Gamma);
    const double s2G = std::sin(2.0 * Gamma), c2G = std::cos(2.0 * Gamma);
    const double mean = -(sG / Gamma - cG) / kPi - 0.5 * q_mean * (1.0 + sG / Gamma);
    // <phi^2 sin^2 phi>/Gamma = Gamma^2/6 - cos(2G)/4 - (2G^2-1) sin(2G)/(8G)
    const double t_angle = Gamma * Gamma / 6.0 - c2G / 4.0 -
                           (2.0 * Gamma * Gamma - 1.0) / (8.0 * Gamma) * s2G;
    const double t_qq = 1.5 + 2.0 * sG / Gamma + s2G / (4.0 * Gamma);
    const double t_cross = -cG - 0.25 * c2G + sG / Gamma + s2G / (8.0 * Gamma);
    const double mean_sq = t_angle / (kPi * kPi) + q_sq_mean / 4.0 * t_qq +
                           q_mean / kPi * t_cross;
    return finish(mean, mean_sq, Element::g, law_for(q_mean, q_sq_mean, MomentLaw::angle_avg));
}

double h_variance_two_pi_m(double Gamma, double q_mean, double q_sq_mean) {
    check_two_pi_m(Gamma);
    const double si_G = sine_integral(Gamma);
    const double si_2G = sine_integral(std::min(2.0 * Gamma, 1e5));
    return 0.5 +
           kPi * kPi / (4.0 * Gamma) * si_2G * (q_sq_mean - 2.0 / kPi * q_mean) -
           kPi * kPi / (4.0 * Gamma * Gamma) * q_mean * q_mean * si_G * si_G;
}

double g_variance_two_pi_m(double Gamma, double q_mean, double q_sq_mean) {
    check_two_pi_m(Gamma);
    return (Gamma * Gamma / 6.0 - 0.25 - 1.0) / (kPi * kPi) +
           0.25 * (1.5 * q_sq_mean - q_mean * q_mean) - q_mean / (4.0 * kPi);
}

namespace detail {

SampledMoments MomentAccumulator::finish(Element el, MomentLaw law) const {
    SampledMoments out;
    const double nn = static_cast<double>(n);
    const double m1 = s1 / nn;
    const double m2 = s2 / nn;
    const double m3 = s3 / nn;
    const double m4 = s4 / nn;
    out.value.mean = m1;
    out.value.mean_sq = m2;
    out.value.variance = std::max(0.0, m2 - m1 * m1);
    out.value.element = el;
    out.value.law = law;
    out.se_mean = std::sqrt(std::max(0.0, m2 - m1 * m1) / nn);
    out.se_mean_sq = std::sqrt(std::max(0.0, m4 - m2 * m2) / nn);
    // delta method: var of the sample variance ~ (mu4 - var^2)/n with
    // mu4 the fourth central moment
    const double var = out.value.variance;
    const double mu4 = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
    out.se_variance = std::sqrt(std::max(0.0, mu4 - var * var) / nn);
    return out;
}

} // namespace detail

SampledElementMoments mc_element_moments(const ForcingModel& model, long n,
                                         std::uint64_t seed) {
    model.validate();
    if (n < 10000)
        throw std::invalid_argument("mc_element_moments: need n >= 1e4");
    detail::MomentAccumulator ah, ag;
    RandomStream rs(seed, 0);
    for (long i = 0; i < n; ++i) {
        const CycleParams p = sample_cycle(model, rs);
        const MatrixElements e = closed_form_elements(p);
        ah.add(e.h);
        ag.add(e.g);
    }
    const MomentLaw law = model.af_law == AfLaw::fixed ? MomentLaw::fixed_angle
                                                       : MomentLaw::joint;
    return {ah.finish(Element::h, law), ag.finish(Element::g, law)};
}

CorrectionVariances correction_variances_large_q(const ForcingModel& model,
                                                 long n, std::uint64_t seed) {
    model.validate();
    if (min_abs_q(model) < 10.0)
        throw std::invalid_argument(
            "correction_variances_large_q: needs a large-q model (min |q| >= 10)");
    if (model.af_law == AfLaw::fixed) {
        // refuse near af = n^2 where x and 1/h blow up
        const double af = model.af;
        const double root = std::sqrt(af);
        const int nr = std::max(1, static_cast<int>(std::lround(root)));
        const double width = 8.0 * nr * nr / (kPi * mean_abs_q(model));
        if (std::abs(af - static_cast<double>(nr) * nr) < 2.0 * width)
            throw resonant_af_error(af, nr, width);
    }

    // Welford on x; the phi factor is accumulated as its deviation from 1
    // so the q^-4 variance is not lost to cancellation.
    double mean_x = 0.0, m2_x = 0.0;
    double mean_d = 0.0, m2_d = 0.0;
    RandomStream rs(seed, 0);
    for (long i = 0; i < n; ++i) {
        const CycleParams p = sample_cycle(model, rs);
        const double x = ratio_x(p);
        const double d = correction_phi_delta(p);
        const double k = static_cast<double>(i + 1);
        const double dx = x - mean_x;
        mean_x += dx / k;
        m2_x += dx * (x - mean_x);
        const double dd = d - mean_d;
        mean_d += dd / k;
        m2_d += dd * (d - mean_d);
    }
    const double denom = static_cast<double>(n - 1);
    return {m2_x / denom, m2_d / denom};
}

} // namespace hillrand
