#include <doctest.h>

#include <Eigen/Dense>
#include <set>

#include "osserman/pseudo_linalg.hpp"
#include "osserman/rng.hpp"

using namespace osserman;

namespace {

// Gram matrix [[psi, I], [I, 0]] of the neutral family at a point.
Eigen::MatrixXd hyperbolic_gram(const Eigen::MatrixXd& psi) {
    const int p = static_cast<int>(psi.rows());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * p, 2 * p);
    g.topLeftCorner(p, p) = psi;
    g.block(0, p, p, p) = Eigen::MatrixXd::Identity(p, p);
    g.block(p, 0, p, p) = Eigen::MatrixXd::Identity(p, p);
    return g;
}

std::multiset<int> sign_multiset(const SubspaceFrame& f) {
    return {f.signs.begin(), f.signs.end()};
}

}  // namespace

TEST_CASE("signature of definite and indefinite forms") {
    CHECK(signature_of(InnerProduct(Eigen::MatrixXd::Identity(4, 4))) ==
          Signature{0, 4});

    // two hyperbolic pairs -> (2,2)
    InnerProduct neutral(hyperbolic_gram(Eigen::MatrixXd::Zero(2, 2)));
    CHECK(signature_of(neutral) == Signature{2, 2});

    Eigen::MatrixXd d = Eigen::Vector3d(1, 1, -1).asDiagonal();
    CHECK(signature_of(InnerProduct(d), 1e-10) == Signature{1, 2});

    Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(signature_of(InnerProduct(singular)), DegenerateSubspaceError);
}

TEST_CASE("signature counts always add up to the dimension") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + trial % 5;
        Eigen::MatrixXd a(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) a(i, j) = rng.normal();
        InnerProduct ip(a);
        try {
            Signature sig = signature_of(ip);
            CHECK(sig.dim() == m);
        } catch (const DegenerateSubspaceError&) {
            // legitimate outcome for a random symmetric matrix
        }
    }
}

TEST_CASE("orthonormalize splits a hyperbolic pair") {
    InnerProduct ip(hyperbolic_gram(Eigen::MatrixXd::Zero(2, 2)));

    SubspaceFrame frame;
    frame.vectors.resize(4, 2);
    frame.vectors.col(0) << 1, 0, 1, 0;   // d1^x + d1^y, norm +2
    frame.vectors.col(1) << 1, 0, -1, 0;  // d1^x - d1^y, norm -2
    SubspaceFrame on = orthonormalize(frame, ip);

    REQUIRE(on.signs.size() == 2);
    CHECK(on.signs[0] == -1);  // timelike first
    CHECK(on.signs[1] == +1);
    Eigen::MatrixXd gram = on.vectors.transpose() * ip.gram * on.vectors;
    CHECK((gram - Eigen::Vector2d(-1, 1).asDiagonal().toDenseMatrix()).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));

    // same span: original vectors are combinations of the output
    Eigen::MatrixXd joint(4, 4);
    joint << on.vectors, frame.vectors;
    CHECK(rank_with_tol(joint, 1e-10) == 2);
}

TEST_CASE("orthonormalize rejects null vectors and dependent frames") {
    InnerProduct ip(hyperbolic_gram(Eigen::MatrixXd::Zero(2, 2)));

    SubspaceFrame null_frame;
    null_frame.vectors = Eigen::MatrixXd::Zero(4, 1);
    null_frame.vectors(2, 0) = 1.0;  // d1^y is isotropic
    CHECK_THROWS_AS(orthonormalize(null_frame, ip), DegenerateSubspaceError);

    SubspaceFrame dependent;
    dependent.vectors.resize(4, 2);
    dependent.vectors.col(0) << 1, 2, 3, 4;
    dependent.vectors.col(1) << 2, 4, 6, 8;
    CHECK_THROWS_AS(orthonormalize(dependent, ip), RankDeficientError);
}

TEST_CASE("orthonormalize is idempotent up to column order and sign") {
    Rng rng(21);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(5, 5);
    d.diagonal() << -1, -1, 1, 1, 1;
    InnerProduct ip(d);

    for (int trial = 0; trial < 25; ++trial) {
        SubspaceFrame frame;
        frame.vectors.resize(5, 3);
        for (int c = 0; c < 3; ++c) frame.vectors.col(c) = rng.normal_vector(5);
        OrthoResult first = try_orthonormalize(frame, ip);
        if (first.status != OrthoStatus::Ok) continue;
        SubspaceFrame second = orthonormalize(first.frame, ip);
        CHECK(sign_multiset(second) == sign_multiset(first.frame));
    }
}

TEST_CASE("rank with tolerance") {
    CHECK(rank_with_tol(Eigen::MatrixXd::Zero(3, 3)) == 0);
    CHECK(rank_with_tol(Eigen::MatrixXd::Identity(4, 4)) == 4);

    Eigen::MatrixXd a(3, 3);
    a << 1, 2, 3, 2, 4, 6, 0, 0, 1;  // first two rows dependent
    CHECK(rank_with_tol(a) == 2);
}

TEST_CASE("rank is invariant under scaling") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd a(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = rng.normal();
        a.col(3) = a.col(0) + a.col(1);  // force a rank drop
        const int r = rank_with_tol(a);
        for (double c : {1e-7, 0.5, 3.0, 1e8}) CHECK(rank_with_tol(c * a) == r);
    }
}

TEST_CASE("jordan partition of 2-step nilpotent operators") {
    CHECK(jordan_form_nilpotent(Eigen::MatrixXd::Zero(4, 4)).blocks ==
          std::vector<int>{1, 1, 1, 1});

    Eigen::MatrixXd n1 = Eigen::MatrixXd::Zero(4, 4);
    n1(1, 0) = 1.0;  // rank-1 with square zero
    CHECK(jordan_form_nilpotent(n1).blocks == std::vector<int>{2, 1, 1});

    // rank 3 on a 6-dimensional space forces three 2-blocks
    Eigen::MatrixXd n3 = Eigen::MatrixXd::Zero(6, 6);
    n3.block(3, 0, 3, 3) = Eigen::Matrix3d::Identity();
    CHECK(jordan_form_nilpotent(n3).blocks == std::vector<int>{2, 2, 2});

    CHECK_THROWS_AS(jordan_form_nilpotent(Eigen::MatrixXd::Identity(3, 3)),
                    NotNilpotentError);
}

TEST_CASE("block counts of random 2-step nilpotents match their rank") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int half = 2 + trial % 3;
        const int m = 2 * half;
        // lower-block map conjugated by a random change of basis
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j) a(half + i, j) = rng.normal();
        Eigen::MatrixXd q(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) q(i, j) = rng.normal();
        Eigen::MatrixXd conj = q * a * q.inverse();

        const int rank = rank_with_tol(conj, 1e-9);
        CHECK(rank <= m / 2);
        JordanPartition partition = jordan_form_nilpotent(conj, 1e-8);
        CHECK(partition.blocks_of(2) == rank);
        CHECK(partition.total() == m);
    }
}
