#pragma once

#include <Eigen/Core>
#include <vector>

#include "osserman/pseudo_linalg.hpp"
#include "osserman/psi_fields.hpp"

namespace osserman {

// Conventions used throughout (documented here once, relied on everywhere):
//   * curvature operator  R(Z1,Z2) = nabla_1 nabla_2 - nabla_2 nabla_1
//                                     - nabla_[Z1,Z2]
//   * (0,4)-tensor         R(Z1,Z2,Z3,Z4) = g(R(Z1,Z2) Z3, Z4)
//   * Jacobi operator      J(X) : Y -> R(Y,X) X
// The opposite curvature sign convention silently negates every Jacobi
// spectrum, so changing it is not a cosmetic edit.

/// The neutral-signature metric on R^{2p} whose Gram blocks in coordinates
/// (x, y, z) are [[psi(x), I, 0], [I, 0, 0], [0, 0, diag(-1..,+1..)]],
/// optionally extended by a flat factor of signature (u, v). Coefficients
/// depend on x only; the Y-distribution is totally isotropic and parallel.
struct MetricGPsi {
    PsiField psi;
    Signature flat_factor;  // (u, v); zero-dimensional for the bare metric

    int p() const { return psi.dim(); }
    int dim() const { return 2 * p() + flat_factor.dim(); }
    Signature total_signature() const {
        return {p() + flat_factor.neg, p() + flat_factor.pos};
    }

    int x_index(int i) const { return i; }
    int y_index(int i) const { return p() + i; }
    int flat_index(int a) const { return 2 * p() + a; }
    bool is_x_index(int a) const { return a < p(); }
};

/// Pointwise R_{ijkl} = g(R(d_i, d_j) d_k, d_l) in the coordinate basis.
struct CurvatureTensor {
    int dim = 0;
    Eigen::VectorXd base_point;  // manifold point (x, y, z)
    std::vector<double> entries;  // dim^4, row-major in (i, j, k, l)

    static CurvatureTensor zero(int dim, Eigen::VectorXd base_point);

    double operator()(int i, int j, int k, int l) const {
        return entries[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l];
    }
    double& at(int i, int j, int k, int l) {
        return entries[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l];
    }
    double max_abs() const;
};

/// Largest violation of the pair/antisymmetry identities
/// R_ijkl = -R_jikl = -R_ijlk = R_klij.
double max_symmetry_violation(const CurvatureTensor& rt);

/// Largest violation of R_ijkl + R_jkil + R_kijl.
double max_first_bianchi_violation(const CurvatureTensor& rt);

/// Largest |R_ijkl| among entries with at least one index outside the
/// X-block (these all vanish in this metric family).
double max_off_x_entry(const CurvatureTensor& rt, int p);

/// Jacobi (or higher order Jacobi) operator at a point, stored both as the
/// endomorphism in the coordinate basis and as the symmetric bilinear form
/// form(a,b) = g(J d_a, d_b); matrix = G^{-1} form.
struct JacobiOperator {
    Eigen::MatrixXd matrix;
    Eigen::MatrixXd form;

    int dim() const { return static_cast<int>(matrix.rows()); }
    /// The p x p block that carries the whole operator in this family.
    Eigen::MatrixXd x_block_form(int p) const { return form.topLeftCorner(p, p); }
};

/// Gram matrix of the metric at a point. Accepts either an x-coordinate
/// vector (size p) or a full manifold point (size dim); coefficients depend
/// on the x part only.
InnerProduct metric_at(const MetricGPsi& metric, const Eigen::VectorXd& point);

/// Christoffel symbols Gamma^c_{ab} at a point. Only the y-components of
/// nabla_{d_i^x} d_j^x are nonzero:
///   Gamma^{y_k}_{ij} = (psi_ik/j + psi_jk/i - psi_ij/k) / 2.
struct ChristoffelSymbols {
    int dim = 0;
    std::vector<double> gamma;  // gamma[c][a][b], row-major

    double operator()(int c, int a, int b) const {
        return gamma[(static_cast<std::size_t>(c) * dim + a) * dim + b];
    }
    double& at(int c, int a, int b) {
        return gamma[(static_cast<std::size_t>(c) * dim + a) * dim + b];
    }
};

ChristoffelSymbols christoffel_closed(const MetricGPsi& metric,
                                      const Eigen::VectorXd& point);

/// Closed-form curvature: pure-X entries
///   R_ijkl = -(psi_il/jk + psi_jk/il - psi_ik/jl - psi_jl/ik) / 2,
/// every entry touching the Y-block or flat factor is exactly zero.
CurvatureTensor curvature_closed(const MetricGPsi& metric,
                                 const Eigen::VectorXd& point);

/// Independent finite-difference curvature oracle. Uses only metric_at and
/// the generic coordinate formulas (Koszul Christoffels from central
/// differences, then R^d_abc = d_a Gamma^d_bc - d_b Gamma^d_ac + Gamma
/// products); shares no code path with the closed forms above. Error is
/// O(h^2) with polynomial metric entries. Throws IllConditionedError if the
/// metric fails to invert at a stencil point.
CurvatureTensor curvature_fd(const MetricGPsi& metric, const Eigen::VectorXd& point,
                             double h = 1e-4);

/// Jacobi operator J(X) from a curvature tensor and the metric at the same
/// point: form(a,b) = R(d_a, X, X, d_b), matrix = G^{-1} form.
JacobiOperator jacobi(const CurvatureTensor& rt, const InnerProduct& ip,
                      const Eigen::VectorXd& x_vec);

/// Higher order Jacobi operator of an orthonormal frame:
/// J(pi) = sum_i signs_i J(e_i). Independent of the orthonormal basis chosen
/// for span(pi). Throws FrameNotOrthonormalError if the frame's Gram under
/// `ip` is not diag(signs) within `tol`.
JacobiOperator higher_jacobi(const CurvatureTensor& rt, const InnerProduct& ip,
                             const SubspaceFrame& frame, double tol = 1e-8);

/// Projection onto the X-distribution: zeroes y- and flat-factor components.
Eigen::VectorXd rho_x(const Eigen::VectorXd& v, const MetricGPsi& metric);

/// The vectors Xt_i = d_i^x - (1/2) sum_j psi_ij(x) d_j^y. Together with
/// {d_i^y} they form a hyperbolic basis of the R^{2p} factor: Gram
/// [[0, I], [I, 0]].
std::vector<Eigen::VectorXd> tilde_basis(const MetricGPsi& metric,
                                         const Eigen::VectorXd& point);

/// Pure-X curvature block as a p^4 tensor on R^p; the part that determines
/// every Jacobi operator of the family.
struct XBlockCurvature {
    int p = 0;
    std::vector<double> entries;  // p^4 row-major (a, j, k, b)

    double operator()(int a, int j, int k, int b) const {
        return entries[((static_cast<std::size_t>(a) * p + j) * p + k) * p + b];
    }
};

XBlockCurvature curvature_x_block(const PsiField& psi, const Eigen::VectorXd& x);

/// p x p symmetric Jacobi form of direction X in R^p:
/// B(a,b) = sum_{j,k} X_j X_k R(a,j,k,b). The membership scan tests exactly
/// this form.
Eigen::MatrixXd jacobi_x_form(const XBlockCurvature& rx, const Eigen::VectorXd& x_dir);

}  // namespace osserman
