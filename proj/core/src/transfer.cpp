#include "hillrand/transfer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hillrand/errors.hpp"

namespace hillrand {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSingularTol = 1e-12;

void require_positive_af(double af) {
    if (!(af > 0.0) || !std::isfinite(af))
        throw std::invalid_argument("af must be positive and finite");
}
} // namespace

double TransferMatrix::max_abs() const {
    return std::max(std::max(std::abs(m11), std::abs(m12)),
                    std::max(std::abs(m21), std::abs(m22)));
}

bool TransferMatrix::finite() const {
    return std::isfinite(m11) && std::isfinite(m12) && std::isfinite(m21) &&
           std::isfinite(m22);
}

void TransferMatrix::apply(double& y, double& v) const {
    const double y2 = m11 * y + m12 * v;
    const double v2 = m21 * y + m22 * v;
    y = y2;
    v = v2;
}

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

TransferMatrix cycle_matrix(const CycleParams& p) {
    require_positive_af(p.af);
    const double w = std::sqrt(p.af);
    const double c = std::cos(w * kPi / 2.0);
    const double s = std::sin(w * kPi / 2.0);
    const TransferMatrix half{c, s / w, -w * s, c};
    const TransferMatrix kick{1.0, 0.0, -p.q, 1.0};
    return half * (kick * half);
}

MatrixElements closed_form_elements(const CycleParams& p) {
    require_positive_af(p.af);
    const double w = std::sqrt(p.af);
    const double phi = w * kPi;
    const double ch = std::cos(phi / 2.0);
    const double h = std::cos(phi) - p.q / (2.0 * w) * std::sin(phi);
    const double g = -w * std::sin(phi) - p.q * ch * ch;
    return {h, g};
}

double ratio_x(const CycleParams& p) {
    require_positive_af(p.af);
    const double phi = p.phi();
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const double den = p.q * (1.0 + c) + 2.0 * (phi / kPi) * s;
    if (std::abs(den) < kSingularTol)
        throw singular_angle_error("x = h/g undefined: denominator vanishes at phi = " +
                                   std::to_string(phi));
    return (p.q * (kPi / phi) * s - 2.0 * c) / den;
}

double correction_phi_delta(const CycleParams& p) {
    require_positive_af(p.af);
    const double phi = p.phi();
    const double den = kPi * p.q * std::sin(phi) - 2.0 * phi * std::cos(phi);
    if (std::abs(den) < kSingularTol)
        throw singular_angle_error("1 - 1/h^2 undefined: h vanishes at phi = " +
                                   std::to_string(phi));
    const double r = 2.0 * phi / den;
    return -r * r;
}

double correction_phi(const CycleParams& p) { return 1.0 + correction_phi_delta(p); }

FixedAfKernel::FixedAfKernel(double af) {
    require_positive_af(af);
    const double w = std::sqrt(af);
    const double c = std::cos(w * kPi / 2.0);
    const double s = std::sin(w * kPi / 2.0);
    const TransferMatrix half{c, s / w, -w * s, c};
    base = half * half;
    // d/dq of F K(q) F pulls one factor (0,0;-1,0) between the halves.
    const TransferMatrix dkick{0.0, 0.0, -1.0, 0.0};
    slope = half * (dkick * half);
}

TransferMatrix FixedAfKernel::at(double q) const {
    return {base.m11 + q * slope.m11, base.m12 + q * slope.m12,
            base.m21 + q * slope.m21, base.m22 + q * slope.m22};
}

void absorb(ProductState& state, const TransferMatrix& m) {
    if (!m.finite())
        throw std::domain_error("absorb: matrix has a non-finite entry");
    TransferMatrix prod = m * state.normalized;
    const double scale = prod.max_abs();
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::domain_error("absorb: degenerate product");
    const double inv = 1.0 / scale;
    prod.m11 *= inv;
    prod.m12 *= inv;
    prod.m21 *= inv;
    prod.m22 *= inv;
    state.normalized = prod;
    state.log_norm += std::log(scale);
    state.count += 1;
}

TransferMatrix reconstruct(const ProductState& state) {
    const double f = std::exp(state.log_norm);
    return {state.normalized.m11 * f, state.normalized.m12 * f,
            state.normalized.m21 * f, state.normalized.m22 * f};
}

} // namespace hillrand
