#include "osserman/polynomial.hpp"

#include <cmath>

namespace osserman {

void PolynomialScalarField::add_term(const MultiIndex& exponents, double coeff) {
    if (static_cast<int>(exponents.size()) != dim_)
        throw DimensionMismatchError("exponent tuple length does not match dim");
    for (int e : exponents)
        if (e < 0) throw ConfigError("negative exponent in polynomial term");
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.emplace(exponents, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

double PolynomialScalarField::eval(const Eigen::VectorXd& x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw DimensionMismatchError("evaluation point dimension mismatch");
    double total = 0.0;
    for (const auto& [exp, coeff] : terms_) {
        double term = coeff;
        for (int i = 0; i < dim_; ++i) {
            for (int e = 0; e < exp[i]; ++e) term *= x[i];
        }
        total += term;
    }
    return total;
}

PolynomialScalarField PolynomialScalarField::partial(int axis) const {
    PolynomialScalarField out(dim_);
    for (const auto& [exp, coeff] : terms_) {
        if (exp[axis] == 0) continue;
        MultiIndex e = exp;
        const int power = e[axis];
        e[axis] -= 1;
        out.add_term(e, coeff * power);
    }
    return out;
}

int PolynomialScalarField::degree() const {
    int deg = -1;
    for (const auto& [exp, coeff] : terms_) {
        int total = 0;
        for (int e : exp) total += e;
        deg = std::max(deg, total);
    }
    return deg;
}

PolynomialScalarField PolynomialScalarField::operator+(
    const PolynomialScalarField& other) const {
    if (dim_ != other.dim_) throw DimensionMismatchError("polynomial dim mismatch");
    PolynomialScalarField out = *this;
    for (const auto& [exp, coeff] : other.terms_) out.add_term(exp, coeff);
    return out;
}

PolynomialScalarField PolynomialScalarField::operator*(
    const PolynomialScalarField& other) const {
    if (dim_ != other.dim_) throw DimensionMismatchError("polynomial dim mismatch");
    PolynomialScalarField out(dim_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            MultiIndex e(dim_);
            for (int i = 0; i < dim_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

PolynomialScalarField PolynomialScalarField::scaled(double c) const {
    PolynomialScalarField out(dim_);
    if (c == 0.0) return out;
    for (const auto& [exp, coeff] : terms_) out.add_term(exp, coeff * c);
    return out;
}

PolynomialScalarField PolynomialScalarField::constant(int dim, double c) {
    PolynomialScalarField p(dim);
    p.add_term(MultiIndex(dim, 0), c);
    return p;
}

PolynomialScalarField PolynomialScalarField::coordinate(int dim, int axis) {
    PolynomialScalarField p(dim);
    MultiIndex e(dim, 0);
    e[axis] = 1;
    p.add_term(e, 1.0);
    return p;
}

}  // namespace osserman
