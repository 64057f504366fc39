#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "osserman/polynomial.hpp"

namespace osserman {

enum class PsiProvenance { FromPotential, Explicit, Combination };

/// Symmetric 2-tensor field psi on R^p with polynomial components psi_ij.
/// First and second partial derivative polynomials are tabulated eagerly at
/// construction, so values are immutable and thread-safe afterwards.
class PsiField {
public:
    PsiField() = default;

    /// `components` is a dense p*p row-major table; it is symmetrized as
    /// psi_ij := psi_ji := components[i*p + j] for i <= j.
    PsiField(int dim, std::vector<PolynomialScalarField> components,
             PsiProvenance provenance = PsiProvenance::Explicit);

    int dim() const { return dim_; }
    PsiProvenance provenance() const { return provenance_; }

    const PolynomialScalarField& component(int i, int j) const;
    /// d(psi_ij)/dx_k as a polynomial.
    const PolynomialScalarField& first_partial(int i, int j, int k) const;
    /// d^2(psi_ij)/dx_k dx_l as a polynomial.
    const PolynomialScalarField& second_partial(int i, int j, int k, int l) const;

    /// The p x p matrix psi(x).
    Eigen::MatrixXd eval(const Eigen::VectorXd& x) const;

    /// Largest component degree (-1 for the zero field).
    int degree() const;

private:
    int index(int i, int j) const { return i * dim_ + j; }

    int dim_ = 0;
    PsiProvenance provenance_ = PsiProvenance::Explicit;
    std::vector<PolynomialScalarField> comps_;            // p*p
    std::vector<PolynomialScalarField> first_partials_;   // p*p*p
    std::vector<PolynomialScalarField> second_partials_;  // p*p*p*p
};

/// Axis-aligned box sampled at `resolution` points per axis; the discrete
/// stand-in for a compact set.
struct GridRegion {
    std::vector<std::pair<double, double>> bounds;  // per-axis [lo, hi]
    int resolution = 2;

    int dim() const { return static_cast<int>(bounds.size()); }
    std::int64_t point_count() const;
    /// Grid point by odometer index (last axis varies fastest).
    Eigen::VectorXd point(std::int64_t index) const;

    static GridRegion cube(int dim, double lo, double hi, int resolution);
};

/// psi_f with components d_i f * d_j f; its Jacobi form is controlled by the
/// Hessian of f.
PsiField psi_from_potential(const PolynomialScalarField& f);

/// Exact Hessian of f at x.
Eigen::MatrixXd hessian_at(const PolynomialScalarField& f, const Eigen::VectorXd& x);

/// Componentwise positive combination sum_i a_i * psi_i. Accepts any number
/// of terms with positive weights; convex combinations are the special case
/// with weights summing to one.
PsiField combine(const std::vector<std::pair<double, PsiField>>& weighted);

/// psi0 + scale * bump * psi1 (componentwise polynomial arithmetic).
/// Membership of the result is a separate scan, not a guarantee.
PsiField perturb(const PsiField& psi0, const PolynomialScalarField& bump,
                 const PsiField& psi1, double scale);

/// Polynomial cutoff weight for `region`: the product over axes of
/// (1 - u_i^2)^2 with u_i the axis coordinate rescaled to [-1, 1]. Vanishes
/// on the region boundary and peaks at the center.
PolynomialScalarField bump_polynomial(const GridRegion& region);

/// max over grid points and all (i,j,k,l) of |psi_ij/kl|; a lower bound of
/// the true sup that converges as resolution grows.
double semi_norm(const PsiField& psi, const GridRegion& region);

/// Witness that psi fails the membership condition at a point/direction.
struct MembershipWitness {
    Eigen::VectorXd point;
    Eigen::VectorXd direction;       // unit vector of the auxiliary form
    Eigen::VectorXd eigenvalues;     // spectrum of the Jacobi form there
};

struct MembershipReport {
    bool member = false;
    std::optional<MembershipWitness> witness;
    std::int64_t points_checked = 0;
    std::int64_t directions_per_point = 0;
};

/// Scans grid x directions for the defining condition of the class Psi: the
/// X-block Jacobi form of every nonzero direction is positive semi-definite
/// with a one-dimensional kernel (rank p-1). Directions are drawn on the
/// Euclidean unit sphere from a per-(point, direction) stream of `seed`.
/// A failure is a result, not an error; the first one found (in grid order)
/// is reported as the witness.
MembershipReport psi_membership_scan(const PsiField& psi, const GridRegion& region,
                                     int n_dirs, double tol, std::uint64_t seed);

}  // namespace osserman
