#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "osserman/curvature.hpp"
#include "osserman/psi_fields.hpp"
#include "osserman/rng.hpp"

using namespace osserman;

namespace {

// f = (x1^2 + ... + xp^2)/2; Hessian is the identity everywhere.
PolynomialScalarField half_sum_of_squares(int p) {
    PolynomialScalarField f(p);
    for (int i = 0; i < p; ++i) {
        MultiIndex e(p, 0);
        e[i] = 2;
        f.add_term(e, 0.5);
    }
    return f;
}

// Independent derivative check via central differences of eval().
double fd_partial(const PolynomialScalarField& f, const Eigen::VectorXd& x, int axis,
                  double h = 1e-6) {
    Eigen::VectorXd xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    return (f.eval(xp) - f.eval(xm)) / (2 * h);
}

}  // namespace

TEST_CASE("polynomial evaluation and exact differentiation") {
    // f = 3 x0^2 x1 - 2 x1^3 + 5
    PolynomialScalarField f(2);
    f.add_term({2, 1}, 3.0);
    f.add_term({0, 3}, -2.0);
    f.add_term({0, 0}, 5.0);

    Eigen::Vector2d x(1.5, -0.5);
    CHECK(f.eval(x) == doctest::Approx(3 * 2.25 * -0.5 - 2 * -0.125 + 5));
    CHECK(f.degree() == 3);

    Rng rng(3);
    for (int axis = 0; axis < 2; ++axis) {
        PolynomialScalarField df = f.partial(axis);
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::VectorXd pt = rng.normal_vector(2);
            CHECK(df.eval(pt) ==
                  doctest::Approx(fd_partial(f, pt, axis)).epsilon(1e-6));
        }
    }
}

TEST_CASE("gradient outer-product field from a linear potential is constant") {
    PolynomialScalarField f(2);
    f.add_term({1, 0}, 1.0);  // f = x0
    PsiField psi = psi_from_potential(f);

    CHECK(psi.provenance() == PsiProvenance::FromPotential);
    Eigen::Vector2d x(0.7, -2.0);
    Eigen::MatrixXd m = psi.eval(x);
    CHECK(m(0, 0) == doctest::Approx(1.0));
    CHECK(m(0, 1) == doctest::Approx(0.0));
    CHECK(m(1, 1) == doctest::Approx(0.0));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    CHECK(psi.second_partial(i, j, k, l).eval(x) == 0.0);
}

TEST_CASE("gradient outer-product field of the round quadratic") {
    PsiField psi = psi_from_potential(half_sum_of_squares(2));
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd x = rng.normal_vector(2);
        // psi_ij = x_i x_j
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(psi.component(i, j).eval(x) == doctest::Approx(x[i] * x[j]));
    }
}

TEST_CASE("gradient outer-product field of a cubic potential") {
    PolynomialScalarField f(2);
    f.add_term({2, 1}, 1.0);  // f = x0^2 x1
    PsiField psi = psi_from_potential(f);

    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd x = rng.normal_vector(2);
        const double x0 = x[0], x1 = x[1];
        CHECK(psi.component(0, 0).eval(x) == doctest::Approx(4 * x0 * x0 * x1 * x1));
        CHECK(psi.component(0, 1).eval(x) == doctest::Approx(2 * x0 * x0 * x0 * x1));
        CHECK(psi.component(1, 1).eval(x) == doctest::Approx(x0 * x0 * x0 * x0));
    }
}

TEST_CASE("hessian of standard potentials") {
    Eigen::Vector2d anywhere(0.3, -1.2);
    CHECK((hessian_at(half_sum_of_squares(2), anywhere) -
           Eigen::Matrix2d::Identity())
              .norm() == doctest::Approx(0.0));

    PolynomialScalarField cubic(2);
    cubic.add_term({2, 1}, 1.0);
    Eigen::Matrix2d expected;
    expected << 2, 2, 2, 0;
    CHECK((hessian_at(cubic, Eigen::Vector2d(1, 1)) - expected).norm() ==
          doctest::Approx(0.0));

    // f = (x0^4 + x1^4)/12 has Hessian diag(x0^2, x1^2)
    PolynomialScalarField quartic(2);
    quartic.add_term({4, 0}, 1.0 / 12);
    quartic.add_term({0, 4}, 1.0 / 12);
    CHECK((hessian_at(quartic, Eigen::Vector2d(1, 1)) -
           Eigen::Matrix2d::Identity())
              .norm() == doctest::Approx(0.0));
}

TEST_CASE("combine is the weighted componentwise sum") {
    PsiField psi = psi_from_potential(half_sum_of_squares(2));
    PsiField same = combine({{1.0, psi}});
    PsiField doubled = combine({{2.0, psi}});

    Eigen::Vector2d x(0.4, 0.9);
    CHECK((same.eval(x) - psi.eval(x)).norm() == doctest::Approx(0.0));
    CHECK((doubled.eval(x) - 2.0 * psi.eval(x)).norm() == doctest::Approx(0.0));
    CHECK(doubled.provenance() == PsiProvenance::Combination);

    PolynomialScalarField g(3);
    g.add_term({2, 0, 0}, 1.0);
    CHECK_THROWS_AS(combine({{1.0, psi}, {1.0, psi_from_potential(g)}}),
                    DimensionMismatchError);
    CHECK_THROWS_AS(combine({{-1.0, psi}}), ConfigError);
}

TEST_CASE("curvature is linear in the field") {
    PolynomialScalarField g(2);
    g.add_term({2, 1}, 0.7);
    g.add_term({0, 3}, -0.4);
    PsiField psi1 = psi_from_potential(half_sum_of_squares(2));
    PsiField psi2 = psi_from_potential(g);
    PsiField mix = combine({{1.5, psi1}, {0.25, psi2}});
    PsiField doubled = combine({{2.0, psi1}});

    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd x = rng.normal_vector(2);
        XBlockCurvature r1 = curvature_x_block(psi1, x);
        XBlockCurvature r2 = curvature_x_block(psi2, x);
        XBlockCurvature rm = curvature_x_block(mix, x);
        XBlockCurvature rd = curvature_x_block(doubled, x);
        for (std::size_t i = 0; i < rm.entries.size(); ++i) {
            CHECK(rm.entries[i] ==
                  doctest::Approx(1.5 * r1.entries[i] + 0.25 * r2.entries[i])
                      .epsilon(1e-12));
            CHECK(rd.entries[i] ==
                  doctest::Approx(2.0 * r1.entries[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("perturb with zero scale is the original field") {
    PsiField psi0 = psi_from_potential(half_sum_of_squares(2));
    GridRegion region = GridRegion::cube(2, -1, 1, 5);
    PsiField psi1 = psi_from_potential(half_sum_of_squares(2));

    PsiField out = perturb(psi0, bump_polynomial(region), psi1, 0.0);
    Rng rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd x = rng.normal_vector(2);
        CHECK((out.eval(x) - psi0.eval(x)).norm() == doctest::Approx(0.0));
    }
}

TEST_CASE("bump weight vanishes on the boundary and peaks at the center") {
    GridRegion region = GridRegion::cube(2, -1, 1, 9);
    PolynomialScalarField phi = bump_polynomial(region);
    CHECK(phi.eval(Eigen::Vector2d(0, 0)) == doctest::Approx(1.0));
    CHECK(phi.eval(Eigen::Vector2d(1, 0.3)) == doctest::Approx(0.0));
    CHECK(phi.eval(Eigen::Vector2d(-0.2, -1)) == doctest::Approx(0.0));
    CHECK(phi.eval(Eigen::Vector2d(0.5, 0.5)) > 0.0);
}

TEST_CASE("semi-norm examples") {
    PolynomialScalarField linear(2);
    linear.add_term({1, 0}, 2.0);
    CHECK(semi_norm(psi_from_potential(linear), GridRegion::cube(2, -1, 1, 9)) ==
          doctest::Approx(0.0));

    // psi_ij = x_i x_j: the largest second partial is d^2(x0^2) = 2
    PsiField psi = psi_from_potential(half_sum_of_squares(2));
    CHECK(semi_norm(psi, GridRegion::cube(2, -1, 1, 21)) == doctest::Approx(2.0));

    // |a psi| = a |psi|
    CHECK(semi_norm(combine({{3.0, psi}}), GridRegion::cube(2, -1, 1, 21)) ==
          doctest::Approx(6.0));
}

TEST_CASE("grid iterates all points within bounds") {
    GridRegion region;
    region.bounds = {{-1.0, 1.0}, {0.0, 2.0}};
    region.resolution = 3;
    CHECK(region.point_count() == 9);
    CHECK((region.point(0) - Eigen::Vector2d(-1, 0)).norm() == doctest::Approx(0.0));
    CHECK((region.point(1) - Eigen::Vector2d(-1, 1)).norm() == doctest::Approx(0.0));
    CHECK((region.point(8) - Eigen::Vector2d(1, 2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("membership scan accepts a convex potential and rejects flat psi") {
    GridRegion region = GridRegion::cube(2, -1, 1, 5);

    MembershipReport good = psi_membership_scan(
        psi_from_potential(half_sum_of_squares(2)), region, 16, 1e-8, 42);
    CHECK(good.member);
    CHECK(!good.witness.has_value());

    // zero field: every Jacobi form vanishes, rank 0 instead of p-1
    PsiField zero(2, std::vector<PolynomialScalarField>(4, PolynomialScalarField(2)));
    MembershipReport flat = psi_membership_scan(zero, region, 8, 1e-8, 42);
    CHECK(!flat.member);
    REQUIRE(flat.witness.has_value());
    CHECK(flat.witness->eigenvalues.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("membership scan rejects a potential with degenerate hessian") {
    PolynomialScalarField f(2);
    f.add_term({3, 0}, 1.0);  // f = x0^3, Hessian rank <= 1 everywhere
    MembershipReport report = psi_membership_scan(
        psi_from_potential(f), GridRegion::cube(2, -1, 1, 5), 8, 1e-8, 42);
    CHECK(!report.member);
    CHECK(report.witness.has_value());

    // per-(point, direction) streams: identical seeds give identical witnesses
    MembershipReport again = psi_membership_scan(
        psi_from_potential(f), GridRegion::cube(2, -1, 1, 5), 8, 1e-8, 42);
    CHECK((report.witness->point - again.witness->point).norm() == 0.0);
    CHECK((report.witness->direction - again.witness->direction).norm() == 0.0);
}

TEST_CASE("polynomial terms reject malformed input") {
    PolynomialScalarField f(2);
    CHECK_THROWS_AS(f.add_term({1}, 1.0), DimensionMismatchError);
    CHECK_THROWS_AS(f.add_term({-1, 0}, 1.0), ConfigError);
}

TEST_CASE("membership is stable under cone scaling and convex mixing") {
    GridRegion region = GridRegion::cube(2, -1, 1, 5);
    PsiField a = psi_from_potential(half_sum_of_squares(2));

    PolynomialScalarField g = half_sum_of_squares(2);
    g.add_term({1, 1}, 0.2);  // H = I + 0.2 offdiagonal, still positive definite
    g.add_term({4, 0}, 1.0 / 20);
    PsiField b = psi_from_potential(g);

    REQUIRE(psi_membership_scan(a, region, 12, 1e-8, 9).member);
    REQUIRE(psi_membership_scan(b, region, 12, 1e-8, 9).member);

    for (double c : {0.5, 2.0, 10.0})
        CHECK(psi_membership_scan(combine({{c, a}}), region, 12, 1e-8, 9).member);
    for (double t : {0.25, 0.5, 0.75})
        CHECK(psi_membership_scan(combine({{t, a}, {1.0 - t, b}}), region, 12, 1e-8, 9)
                  .member);
}
