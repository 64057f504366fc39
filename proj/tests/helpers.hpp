#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "osserman/curvature.hpp"
#include "osserman/psi_fields.hpp"
#include "osserman/rng.hpp"

namespace osserman::testing {

/// f = (x1^2 + ... + xp^2)/2; Hessian = I everywhere.
inline PolynomialScalarField round_quadratic(int p) {
    PolynomialScalarField f(p);
    for (int i = 0; i < p; ++i) {
        MultiIndex e(p, 0);
        e[i] = 2;
        f.add_term(e, 0.5);
    }
    return f;
}

/// Sum of the round quadratic and a quartic well; Hessian = I + diag(x_i^2),
/// positive definite on all of R^p.
inline PolynomialScalarField convex_quartic_potential(int p) {
    PolynomialScalarField f = round_quadratic(p);
    for (int i = 0; i < p; ++i) {
        MultiIndex e(p, 0);
        e[i] = 4;
        f.add_term(e, 1.0 / 12);
    }
    return f;
}

inline PolynomialScalarField random_polynomial(int p, int max_degree, Rng& rng,
                                               int n_terms) {
    PolynomialScalarField poly(p);
    for (int t = 0; t < n_terms; ++t) {
        MultiIndex e(p, 0);
        int budget = static_cast<int>(rng.uniform(0.0, max_degree + 0.999));
        for (int d = 0; d < budget; ++d)
            e[static_cast<int>(rng.uniform(0.0, p - 1e-9))] += 1;
        poly.add_term(e, rng.uniform(-0.5, 0.5));
    }
    return poly;
}

/// Random symmetric polynomial field, not necessarily in the certified
/// class. Degree and coefficient scale kept modest so curvature entries stay
/// O(1)-O(10) on the unit box.
inline PsiField random_polynomial_psi(int p, int max_degree, Rng& rng,
                                      int terms_per_comp = 4) {
    std::vector<PolynomialScalarField> comps(p * p, PolynomialScalarField(p));
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j)
            comps[i * p + j] = random_polynomial(p, max_degree, rng, terms_per_comp);
    return PsiField(p, std::move(comps), PsiProvenance::Explicit);
}

/// Random element of the isometry group of diag(signs): a product of plane
/// rotations (equal signs) and boosts (opposite signs).
inline Eigen::MatrixXd random_pseudo_orthogonal(const std::vector<int>& signs,
                                                Rng& rng) {
    const int k = static_cast<int>(signs.size());
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(k, k);
    if (k < 2) return q;
    for (int step = 0; step < 2 * k; ++step) {
        int i = static_cast<int>(rng.uniform(0.0, k - 1e-9));
        int j = static_cast<int>(rng.uniform(0.0, k - 1e-9));
        if (i == j) continue;
        Eigen::MatrixXd factor = Eigen::MatrixXd::Identity(k, k);
        if (signs[i] == signs[j]) {
            const double a = rng.uniform(0.0, 2 * M_PI);
            factor(i, i) = std::cos(a);
            factor(j, j) = std::cos(a);
            factor(i, j) = -std::sin(a);
            factor(j, i) = std::sin(a);
        } else {
            const double t = rng.uniform(-1.0, 1.0);
            factor(i, i) = std::cosh(t);
            factor(j, j) = std::cosh(t);
            factor(i, j) = std::sinh(t);
            factor(j, i) = std::sinh(t);
        }
        q = q * factor;
    }
    return q;
}

/// Unit timelike leg a*Xt_i - (1/2a) d_i^y (norm -1 for every a != 0).
inline Eigen::VectorXd timelike_leg(const MetricGPsi& metric,
                                    const std::vector<Eigen::VectorXd>& tilde,
                                    int i, double a = 1.0) {
    Eigen::VectorXd v = a * tilde[i];
    v[metric.y_index(i)] -= 0.5 / a;
    return v;
}

/// Unit spacelike leg a*Xt_i + (1/2a) d_i^y (norm +1).
inline Eigen::VectorXd spacelike_leg(const MetricGPsi& metric,
                                     const std::vector<Eigen::VectorXd>& tilde,
                                     int i, double a = 1.0) {
    Eigen::VectorXd v = a * tilde[i];
    v[metric.y_index(i)] += 0.5 / a;
    return v;
}

inline Eigen::VectorXd flat_timelike_axis(const MetricGPsi& metric, int k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(metric.dim());
    v[metric.flat_index(k)] = 1.0;
    return v;
}

inline Eigen::VectorXd flat_spacelike_axis(const MetricGPsi& metric, int k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(metric.dim());
    v[metric.flat_index(metric.flat_factor.neg + k)] = 1.0;
    return v;
}

inline SubspaceFrame frame_from(const std::vector<Eigen::VectorXd>& timelike,
                                const std::vector<Eigen::VectorXd>& spacelike) {
    const int k = static_cast<int>(timelike.size() + spacelike.size());
    const auto& any = timelike.empty() ? spacelike.front() : timelike.front();
    SubspaceFrame frame;
    frame.vectors.resize(any.size(), k);
    int c = 0;
    for (const auto& v : timelike) {
        frame.vectors.col(c++) = v;
        frame.signs.push_back(-1);
    }
    for (const auto& v : spacelike) {
        frame.vectors.col(c++) = v;
        frame.signs.push_back(+1);
    }
    return frame;
}

}  // namespace osserman::testing
