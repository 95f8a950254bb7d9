#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "hillrand/model.hpp"
#include "hillrand/transfer.hpp"

namespace hillrand {

enum class Element { h, g };
enum class MomentLaw { fixed_angle, angle_avg, joint };

/// First and second moments of a matrix element under a forcing law.
struct ElementMoments {
    double mean = 0.0;
    double mean_sq = 0.0;
    double variance = 0.0; // mean_sq - mean^2, clipped at 0
    Element element = Element::h;
    MomentLaw law = MomentLaw::fixed_angle;
};

/// Si(x) = integral of sin(t)/t on [0, x]. Panel Gauss-Kronrod below x = 30,
/// asymptotic auxiliary functions above; absolute error < 1e-10.
/// Rejects x < 0 and x > 1e5.
double sine_integral(double x);

// Fixed angle phi, q random with the given first/second moments.
ElementMoments h_moments_fixed_angle(double phi, double q_mean, double q_sq_mean);
ElementMoments g_moments_fixed_angle(double phi, double q_mean, double q_sq_mean);

// Angle uniform on [0, Gamma] (af = (phi/pi)^2), q independent of the angle.
ElementMoments h_moments_angle_avg(double Gamma, double q_mean, double q_sq_mean);
ElementMoments g_moments_angle_avg(double Gamma, double q_mean, double q_sq_mean);

// Simplified variances valid when Gamma = 2 pi m; equal to the general
// forms evaluated there. Throw std::invalid_argument otherwise.
double h_variance_two_pi_m(double Gamma, double q_mean, double q_sq_mean);
double g_variance_two_pi_m(double Gamma, double q_mean, double q_sq_mean);

/// Sample moments with standard errors (the Monte Carlo oracle the analytic
/// forms are validated against).
struct SampledMoments {
    ElementMoments value;
    double se_mean = 0.0;
    double se_mean_sq = 0.0;
    double se_variance = 0.0;
};

struct SampledElementMoments {
    SampledMoments h;
    SampledMoments g;
};

namespace detail {

struct MomentAccumulator {
    // Kahan-compensated power sums: the oracle must not drown a degenerate
    // law's zero variance in accumulation error.
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    long n = 0;

    static void cadd(double& s, double& c, double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }

    void add(double x) {
        const double x2 = x * x;
        cadd(s1, c1, x);
        cadd(s2, c2, x2);
        cadd(s3, c3, x2 * x);
        cadd(s4, c4, x2 * x2);
        ++n;
    }

    SampledMoments finish(Element el, MomentLaw law) const;
};

} // namespace detail

/// Generic sampler-driven oracle: q_sampler(stream) -> q,
/// af_sampler(stream) -> af. Lets tests validate laws that the ForcingModel
/// variants do not cover.
template <class QSampler, class AfSampler>
SampledElementMoments mc_element_moments_with(QSampler&& qs, AfSampler&& afs,
                                              long n, std::uint64_t seed) {
    detail::MomentAccumulator ah, ag;
    RandomStream stream(seed, 0);
    for (long i = 0; i < n; ++i) {
        const double af = afs(stream);
        const double q = qs(stream);
        const MatrixElements e = closed_form_elements({af, q});
        ah.add(e.h);
        ag.add(e.g);
    }
    return {ah.finish(Element::h, MomentLaw::joint),
            ag.finish(Element::g, MomentLaw::joint)};
}

/// Sample moments of (h, g) over iid draws from the model.
SampledElementMoments mc_element_moments(const ForcingModel& model, long n,
                                         std::uint64_t seed);

/// Sample variances of x_k = h/g and of the correction factor 1 - 1/h^2
/// for a large-q model (min |q| >= 10).
struct CorrectionVariances {
    double var_x;
    double var_phi;
};
CorrectionVariances correction_variances_large_q(const ForcingModel& model,
                                                 long n, std::uint64_t seed);

} // namespace hillrand
