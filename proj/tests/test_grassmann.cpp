#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "osserman/grassmann.hpp"

using namespace osserman;
using osserman::testing::round_quadratic;

namespace {

bool contains(const std::vector<TypePair>& pairs, TypePair pair) {
    return std::find(pairs.begin(), pairs.end(), pair) != pairs.end();
}

}  // namespace

TEST_CASE("admissible pairs of small signatures") {
    std::vector<TypePair> neutral = admissible_pairs({2, 2});
    CHECK(neutral.size() == 7);
    CHECK(contains(neutral, {1, 1}));
    CHECK(contains(neutral, {0, 1}));
    CHECK(contains(neutral, {2, 1}));
    CHECK(!contains(neutral, {0, 0}));
    CHECK(!contains(neutral, {2, 2}));  // the whole space

    CHECK(admissible_pairs({0, 2}) == std::vector<TypePair>{{0, 1}});
    CHECK(admissible_pairs({1, 1}) == std::vector<TypePair>{{0, 1}, {1, 0}});
}

TEST_CASE("admissible pairs are closed under duality") {
    for (Signature ambient : {Signature{2, 2}, Signature{3, 3}, Signature{3, 2}}) {
        std::vector<TypePair> pairs = admissible_pairs(ambient);
        for (const TypePair& pair : pairs)
            CHECK(contains(pairs, dual_pair(pair, ambient)));
    }
}

TEST_CASE("sampler returns frames of the requested type") {
    MetricGPsi metric{psi_from_potential(round_quadratic(2)), {0, 0}};
    InnerProduct ip = metric_at(metric, Eigen::Vector2d(0.4, -0.6));

    SampleConfig cfg;
    cfg.seed = 2024;
    for (const TypePair& pair : admissible_pairs({2, 2})) {
        for (std::uint64_t i = 0; i < 5; ++i) {
            SubspaceFrame frame = sample_subspace(ip, pair, cfg, i);
            CHECK(frame.type() == Signature{pair.r, pair.s});
            // re-orthonormalizing reproduces the sign multiset
            SubspaceFrame again = orthonormalize(frame, ip);
            CHECK(again.type() == Signature{pair.r, pair.s});
        }
    }
}

TEST_CASE("sampler streams are deterministic per index") {
    MetricGPsi metric{psi_from_potential(round_quadratic(2)), {0, 0}};
    InnerProduct ip = metric_at(metric, Eigen::Vector2d(0, 0));
    SampleConfig cfg;
    cfg.seed = 7;

    SubspaceFrame a = sample_subspace(ip, {1, 1}, cfg, 3);
    SubspaceFrame b = sample_subspace(ip, {1, 1}, cfg, 3);
    SubspaceFrame c = sample_subspace(ip, {1, 1}, cfg, 4);
    CHECK((a.vectors - b.vectors).norm() == 0.0);
    CHECK((a.vectors - c.vectors).norm() != 0.0);
}

TEST_CASE("sampler rejects inadmissible requests and exhausts gracefully") {
    MetricGPsi metric{psi_from_potential(round_quadratic(2)), {0, 0}};
    InnerProduct ip = metric_at(metric, Eigen::Vector2d(0, 0));

    SampleConfig cfg;
    CHECK_THROWS_AS(sample_subspace(ip, {2, 2}, cfg), ConfigError);  // whole space
    CHECK_THROWS_AS(sample_subspace(ip, {3, 0}, cfg), ConfigError);

    SampleConfig no_tries;
    no_tries.max_rejects = 0;
    CHECK_THROWS_AS(sample_subspace(ip, {1, 1}, no_tries), SamplingExhaustedError);
}

TEST_CASE("projected dimension of frames") {
    MetricGPsi metric{psi_from_potential(round_quadratic(2)), {0, 0}};
    const Eigen::Vector2d x(0.5, 0.5);
    InnerProduct ip = metric_at(metric, x);

    // frame inside the isotropic block projects to zero; such frames are
    // degenerate, so build the matrix directly
    SubspaceFrame y_frame;
    y_frame.vectors = Eigen::MatrixXd::Zero(4, 1);
    y_frame.vectors(2, 0) = 1.0;
    y_frame.signs = {1};
    CHECK(dim_rho_x(y_frame, metric) == 0);

    // spacelike frames keep their full dimension
    SampleConfig cfg;
    cfg.seed = 5;
    for (std::uint64_t i = 0; i < 10; ++i) {
        SubspaceFrame frame = sample_subspace(ip, {0, 2}, cfg, i);
        CHECK(dim_rho_x(frame, metric) == 2);
        SubspaceFrame timelike = sample_subspace(ip, {1, 0}, cfg, i);
        CHECK(dim_rho_x(timelike, metric) == 1);
    }

    std::vector<Eigen::VectorXd> tilde = tilde_basis(metric, x);
    SubspaceFrame mixed;
    mixed.vectors.resize(4, 2);
    mixed.vectors.col(0) = tilde[0];
    mixed.vectors.col(1) = Eigen::VectorXd::Unit(4, 3);  // d2^y
    CHECK(dim_rho_x(mixed, metric) == 1);
}
