#include "osserman/psi_fields.hpp"

#include <cmath>

namespace osserman {

PsiField::PsiField(int dim, std::vector<PolynomialScalarField> components,
                   PsiProvenance provenance)
    : dim_(dim), provenance_(provenance) {
    if (static_cast<int>(components.size()) != dim * dim)
        throw DimensionMismatchError("component table must be dim x dim");

    comps_.resize(dim * dim, PolynomialScalarField(dim));
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            comps_[index(i, j)] = components[index(i, j)];
            comps_[index(j, i)] = components[index(i, j)];
        }
    }

    first_partials_.reserve(static_cast<std::size_t>(dim) * dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                first_partials_.push_back(comps_[index(i, j)].partial(k));

    second_partials_.reserve(static_cast<std::size_t>(dim) * dim * dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l)
                    second_partials_.push_back(
                        first_partials_[(index(i, j)) * dim + k].partial(l));
}

const PolynomialScalarField& PsiField::component(int i, int j) const {
    return comps_[index(i, j)];
}

const PolynomialScalarField& PsiField::first_partial(int i, int j, int k) const {
    return first_partials_[index(i, j) * dim_ + k];
}

const PolynomialScalarField& PsiField::second_partial(int i, int j, int k,
                                                      int l) const {
    return second_partials_[(index(i, j) * dim_ + k) * dim_ + l];
}

Eigen::MatrixXd PsiField::eval(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd m(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            m(i, j) = comps_[index(i, j)].eval(x);
            m(j, i) = m(i, j);
        }
    }
    return m;
}

int PsiField::degree() const {
    int deg = -1;
    for (const auto& c : comps_) deg = std::max(deg, c.degree());
    return deg;
}

std::int64_t GridRegion::point_count() const {
    std::int64_t n = 1;
    for (int i = 0; i < dim(); ++i) n *= resolution;
    return n;
}

Eigen::VectorXd GridRegion::point(std::int64_t index) const {
    const int p = dim();
    Eigen::VectorXd x(p);
    for (int axis = p - 1; axis >= 0; --axis) {
        const int i = static_cast<int>(index % resolution);
        index /= resolution;
        const auto [lo, hi] = bounds[axis];
        x[axis] = resolution == 1 ? lo
                                  : lo + (hi - lo) * i / double(resolution - 1);
    }
    return x;
}

GridRegion GridRegion::cube(int dim, double lo, double hi, int resolution) {
    GridRegion region;
    region.bounds.assign(dim, {lo, hi});
    region.resolution = resolution;
    return region;
}

PsiField psi_from_potential(const PolynomialScalarField& f) {
    const int p = f.dim();
    if (p < 2) throw DimensionMismatchError("potential needs dim >= 2");

    std::vector<PolynomialScalarField> grads;
    grads.reserve(p);
    for (int i = 0; i < p; ++i) grads.push_back(f.partial(i));

    std::vector<PolynomialScalarField> comps(p * p, PolynomialScalarField(p));
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) comps[i * p + j] = grads[i] * grads[j];
    return PsiField(p, std::move(comps), PsiProvenance::FromPotential);
}

Eigen::MatrixXd hessian_at(const PolynomialScalarField& f,
                           const Eigen::VectorXd& x) {
    const int p = f.dim();
    Eigen::MatrixXd h(p, p);
    for (int i = 0; i < p; ++i) {
        PolynomialScalarField fi = f.partial(i);
        for (int j = i; j < p; ++j) {
            h(i, j) = fi.partial(j).eval(x);
            h(j, i) = h(i, j);
        }
    }
    return h;
}

PsiField combine(const std::vector<std::pair<double, PsiField>>& weighted) {
    if (weighted.empty()) throw DimensionMismatchError("combine of empty list");
    const int p = weighted.front().second.dim();
    std::vector<PolynomialScalarField> comps(p * p, PolynomialScalarField(p));
    for (const auto& [weight, psi] : weighted) {
        if (psi.dim() != p)
            throw DimensionMismatchError("combine: psi dimensions differ");
        if (!(weight > 0.0))
            throw ConfigError("combine: weights must be positive");
        for (int i = 0; i < p; ++i)
            for (int j = i; j < p; ++j)
                comps[i * p + j] =
                    comps[i * p + j] + psi.component(i, j).scaled(weight);
    }
    return PsiField(p, std::move(comps), PsiProvenance::Combination);
}

PsiField perturb(const PsiField& psi0, const PolynomialScalarField& bump,
                 const PsiField& psi1, double scale) {
    const int p = psi0.dim();
    if (psi1.dim() != p || bump.dim() != p)
        throw DimensionMismatchError("perturb: dimensions differ");
    std::vector<PolynomialScalarField> comps(p * p, PolynomialScalarField(p));
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j)
            comps[i * p + j] =
                psi0.component(i, j) +
                (bump * psi1.component(i, j)).scaled(scale);
    return PsiField(p, std::move(comps), PsiProvenance::Combination);
}

PolynomialScalarField bump_polynomial(const GridRegion& region) {
    const int p = region.dim();
    PolynomialScalarField phi = PolynomialScalarField::constant(p, 1.0);
    for (int axis = 0; axis < p; ++axis) {
        const auto [lo, hi] = region.bounds[axis];
        const double center = (lo + hi) / 2.0;
        const double half = (hi - lo) / 2.0;
        // u = (x - c)/half, factor (1 - u^2)^2
        PolynomialScalarField u =
            PolynomialScalarField::coordinate(p, axis).scaled(1.0 / half) +
            PolynomialScalarField::constant(p, -center / half);
        PolynomialScalarField one_minus_u2 =
            PolynomialScalarField::constant(p, 1.0) + (u * u).scaled(-1.0);
        phi = phi * one_minus_u2 * one_minus_u2;
    }
    return phi;
}

double semi_norm(const PsiField& psi, const GridRegion& region) {
    if (region.dim() != psi.dim())
        throw DimensionMismatchError("semi_norm: region dimension mismatch");
    const int p = psi.dim();
    double best = 0.0;
    const std::int64_t n = region.point_count();
    for (std::int64_t g = 0; g < n; ++g) {
        const Eigen::VectorXd x = region.point(g);
        for (int i = 0; i < p; ++i)
            for (int j = i; j < p; ++j)
                for (int k = 0; k < p; ++k)
                    for (int l = k; l < p; ++l)
                        best = std::max(
                            best, std::abs(psi.second_partial(i, j, k, l).eval(x)));
    }
    return best;
}

}  // namespace osserman
