#pragma once

#include "hillrand/model.hpp"

namespace hillrand {

/// One-period map acting on (y, dy/dt). Unimodular, and m11 = m22 because
/// the kick sits at the midpoint of the period.
struct TransferMatrix {
    double m11, m12, m21, m22;

    static TransferMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double det() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }
    double max_abs() const;
    bool finite() const;

    /// (y, v) -> M (y, v).
    void apply(double& y, double& v) const;

    friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b);
};

/// Builds the per-cycle matrix by propagator composition
/// F(pi/2) K(q) F(pi/2), with F the exact harmonic propagator at
/// omega = sqrt(af) and K the velocity kick (1,0; -q,1).
TransferMatrix cycle_matrix(const CycleParams& p);

struct MatrixElements {
    double h; // y1(pi)
    double g; // y1'(pi)
};

/// Closed forms h = cos(phi) - q sin(phi)/(2 sqrt(af)),
/// g = -sqrt(af) sin(phi) - q cos^2(phi/2). Equal to (m11, m21) of
/// cycle_matrix; kept as an independent code path.
MatrixElements closed_form_elements(const CycleParams& p);

/// x = h/g written directly in (af, q); throws singular_angle_error when the
/// denominator vanishes (af near n^2).
double ratio_x(const CycleParams& p);

/// 1 - 1/h^2. As q -> infinity this tends to 1.
double correction_phi(const CycleParams& p);

/// correction_phi(p) - 1 computed without cancellation; used where the
/// deviation from 1 is the quantity of interest.
double correction_phi_delta(const CycleParams& p);

/// q-affine decomposition of cycle_matrix at fixed af: M(q) = base + q*slope.
/// Entry-wise identical to cycle_matrix up to rounding; used in hot loops to
/// avoid per-cycle trigonometry.
struct FixedAfKernel {
    TransferMatrix base;
    TransferMatrix slope;

    explicit FixedAfKernel(double af);
    TransferMatrix at(double q) const;
};

/// Running product of transfer matrices, renormalized by the max-abs entry
/// after every absorption so entries stay in [-1, 1].
struct ProductState {
    TransferMatrix normalized = TransferMatrix::identity();
    double log_norm = 0.0;
    long count = 0;
};

/// state <- m * state (new cycle acts on the left). Throws
/// std::domain_error if m has a non-finite entry.
void absorb(ProductState& state, const TransferMatrix& m);

/// normalized * exp(log_norm).
TransferMatrix reconstruct(const ProductState& state);

} // namespace hillrand
