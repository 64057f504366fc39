#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "osserman/errors.hpp"

namespace osserman {

using MultiIndex = std::vector<int>;

/// Multivariate polynomial over R^dim stored as a sparse exponent -> real
/// coefficient map. Evaluation and differentiation are exact; this is the
/// whole point of restricting the tensor fields to polynomial components.
class PolynomialScalarField {
public:
    PolynomialScalarField() = default;
    explicit PolynomialScalarField(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::map<MultiIndex, double>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds coeff * x^exponents (accumulating; exact zeros are dropped).
    void add_term(const MultiIndex& exponents, double coeff);

    double eval(const Eigen::VectorXd& x) const;

    PolynomialScalarField partial(int axis) const;

    /// Largest total degree across terms (-1 for the zero polynomial).
    int degree() const;

    PolynomialScalarField operator+(const PolynomialScalarField& other) const;
    PolynomialScalarField operator*(const PolynomialScalarField& other) const;
    PolynomialScalarField scaled(double c) const;

    static PolynomialScalarField constant(int dim, double c);
    /// The coordinate monomial x_axis.
    static PolynomialScalarField coordinate(int dim, int axis);

private:
    int dim_ = 0;
    std::map<MultiIndex, double> terms_;
};

}  // namespace osserman
