#pragma once

#include "osserman/curvature.hpp"
#include "osserman/verify.hpp"

namespace osserman {

/// Product of the curved factor with a flat factor of signature (u, v);
/// total signature (p+u, p+v), dimension 2p+u+v.
struct ProductSpec {
    PsiField psi;
    int u = 0;
    int v = 0;
};

/// The product metric: the curved Gram blocks extended by diag(-1.., +1..).
/// Curvature entries touching the flat directions vanish.
MetricGPsi product_metric(const ProductSpec& spec);

/// rank J(pi) as a function of dim rho_X(pi) for definite frames:
/// 0 -> 0, 1 -> p-1, >= 2 -> p.
int rank_formula(int dim_rho, int p);

/// Case-table prediction for one admissible pair of the product metric.
ExpectedVerdict theorem17_case(const TypePair& pair, int p, int u, int v);

/// T_{a,b}: pads the frame of the curved factor with zeros in the flat
/// coordinates and appends the first a timelike / b spacelike flat axes.
/// The result has type (r+a, s+b) and the same higher order Jacobi operator
/// up to zero padding. Throws CapacityExceededError if a > u or b > v.
SubspaceFrame embed_frame(const SubspaceFrame& frame, int a, int b,
                          const MetricGPsi& product);

}  // namespace osserman
