#pragma once

#include <cstdint>
#include <vector>

#include "osserman/curvature.hpp"
#include "osserman/pseudo_linalg.hpp"

namespace osserman {

/// Subspace type (r, s): r timelike and s spacelike directions inside a
/// given ambient signature. Admissible when the Grassmannian of such
/// subspaces is non-empty and not a single point.
struct TypePair {
    int r = 0;
    int s = 0;

    int total() const { return r + s; }
    bool operator==(const TypePair&) const = default;
    auto operator<=>(const TypePair&) const = default;
};

struct SampleConfig {
    int count = 1;
    std::uint64_t seed = 0;
    int max_rejects = 1000;
    double tol = kDefaultOrthoTol;
};

/// All (r, s) with 0 <= r <= neg, 0 <= s <= pos, 1 <= r+s <= dim-1,
/// ordered lexicographically.
std::vector<TypePair> admissible_pairs(const Signature& ambient);

bool is_admissible(const TypePair& pair, const Signature& ambient);

/// Theorem-level dual type of (r, s) in `ambient`: (neg - r, pos - s).
TypePair dual_pair(const TypePair& pair, const Signature& ambient);

/// Random non-degenerate subspace of type `pair` under `ip`: draws r+s
/// standard normal vectors from the stream (cfg.seed, sample_index),
/// orthonormalizes, and accepts iff the sign multiset matches. Rejection
/// keeps the construction convention-free; degenerate draws are rejected,
/// never repaired. Each sample index owns its stream, so draws are
/// order-independent and parallel-safe.
/// Throws SamplingExhaustedError after cfg.max_rejects failed draws.
SubspaceFrame sample_subspace(const InnerProduct& ip, const TypePair& pair,
                              const SampleConfig& cfg, std::uint64_t sample_index = 0);

/// dim rho_X(span pi): rank of the X-block rows of the frame vectors.
int dim_rho_x(const SubspaceFrame& frame, const MetricGPsi& metric,
              double tol = kDefaultRankTol);

}  // namespace osserman
