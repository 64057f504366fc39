#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "osserman/curvature.hpp"
#include "osserman/grassmann.hpp"

namespace osserman {

struct ScanConfig {
    int count = 200;
    std::uint64_t seed = 0;
    int max_rejects = 1000;
    double ortho_tol = kDefaultOrthoTol;
    double rank_tol = kDefaultRankTol;
    double nilpotent_tol = kDefaultNilpotentTol;
};

/// Outcome of scanning one Grassmannian type at one or more base points.
struct ScanVerdict {
    TypePair pair;
    int samples = 0;   // random frames
    int injected = 0;  // frames added deliberately (see injection_frames)
    bool spectrum_constant = true;  // every J(pi)^2 vanished within tolerance
    int nilpotency_failures = 0;
    std::map<int, int> rank_histogram;  // rank -> frame count
    bool jordan_constant = true;        // exactly one rank observed
    bool membership_certified = false;

    struct Witness {
        int rank = 0;
        bool injected = false;
        SubspaceFrame frame;
    };
    /// First frame seen for each of the first two distinct ranks.
    std::vector<Witness> witnesses;
};

/// One row of a theorem case table: what the classification predicts for a
/// subspace type.
struct ExpectedVerdict {
    TypePair pair;
    bool expected_jordan = false;
    std::string source;  // case tag, e.g. "Thm 1.6 (2a)"
};

/// Case classification for ambient signature (p+u, p+v). With u = v = 0
/// this is the balanced table: Jordan constancy exactly on the boundary
/// types (r=0, s=0, r=p, s=p); with a flat factor the boundary survives
/// only where the factor is thin enough (r >= u+2 rule and its mirrors).
ExpectedVerdict expected_jordan_case(const TypePair& pair, int p, int u, int v);

/// The full table over all admissible pairs of (p+u, p+v).
std::vector<ExpectedVerdict> expected_verdicts(int p, int u, int v);

/// Eigenvalue-constancy scan: samples random frames of the given type and
/// checks that every higher order Jacobi operator squares to zero (spectrum
/// {0}). Random frames only.
ScanVerdict osserman_scan(const MetricGPsi& metric, const Eigen::VectorXd& point,
                          const TypePair& pair, const ScanConfig& cfg);

/// Rank/Jordan-form scan: random frames plus caller-supplied injected
/// frames (the Jordan form of a 2-step nilpotent operator is determined by
/// rank, so constancy is judged on the rank histogram after nilpotency has
/// been verified).
ScanVerdict jordan_scan(const MetricGPsi& metric, const Eigen::VectorXd& point,
                        const TypePair& pair, const ScanConfig& cfg,
                        const std::vector<SubspaceFrame>& injected = {},
                        bool membership_certified = false);

/// Pointwise merge of verdicts for the same pair (histogram addition,
/// boolean AND); commutative, so multi-point scans are order-independent.
ScanVerdict merge_verdicts(ScanVerdict a, const ScanVerdict& b);

/// Rank used to classify Jacobi forms in scans. A cancelling signed sum
/// leaves floating-point summation noise rather than a bit-exact zero, and
/// a purely relative cutoff would read that noise as rank >= 1; forms with
/// norm below `tol` on the O(1) curvature scale classify as the zero
/// operator, everything else by the relative singular-value count.
int classify_rank(const Eigen::MatrixXd& form, double tol = kDefaultRankTol);

/// The two explicit type-(1,1) subspaces built from a hyperbolic pair:
/// pi1 cancels exactly (rank 0) while pi2 mixes two coordinate directions
/// and keeps rank >= p-1. Exhibits non-constancy for type (1,1).
struct Type11Counterexample {
    SubspaceFrame pi1;
    SubspaceFrame pi2;
    int rank1 = 0;
    int rank2 = 0;
};

Type11Counterexample counterexample_type11(const MetricGPsi& metric,
                                           const Eigen::VectorXd& point,
                                           double eps = 1e-3,
                                           double rank_tol = kDefaultRankTol);

struct RankDropConfig {
    double alpha_max = 1e3;
    double beta_max = 1e3;
    int bisection_steps = 60;
    double rank_tol = kDefaultRankTol;
};

struct RankDropResult {
    double alpha = 0.0;
    double beta = 0.0;
    int rank_at_drop = 0;
    SubspaceFrame frame;  // pi(alpha, beta) at the degenerate parameters
    struct PathSample {
        double t, alpha, beta, tracked_eigenvalue;
    };
    std::vector<PathSample> trace;
};

/// Scaled-frame family pi(alpha, beta) = pi^-(alpha) + pi^+(beta) on the
/// first r and next s coordinate directions. Along the path
/// (alpha, beta) = ((1-t) + t*alpha_max, (1-t)*beta_max + t), t in [0, 1],
/// the extreme eigenvalue of the X-block form changes sign, so bisection
/// lands on parameters where the form is degenerate and rank < p.
/// Requires 1 <= r <= s < p, s >= 2, r+s <= p, or the mirrored condition
/// with r and s exchanged (roles of the timelike and spacelike halves are
/// swapped in that case). Throws SearchFailedError if the endpoints do not
/// bracket a sign change.
RankDropResult counterexample_rank_drop(const MetricGPsi& metric,
                                        const Eigen::VectorXd& point, int r, int s,
                                        const RankDropConfig& cfg = {});

/// Frames of type `pair` with ranks pinned by the rank trichotomy,
/// constructed from hyperbolic pairs and flat-factor axes. For types where
/// Jordan constancy fails these exhibit at least two distinct ranks
/// (random sampling alone could miss the degenerate locus). Returned frames
/// are orthonormal with canonical sign order.
std::vector<SubspaceFrame> injection_frames(const MetricGPsi& metric,
                                            const Eigen::VectorXd& point,
                                            const TypePair& pair);

/// Dual-type consistency report over a set of scan verdicts.
struct DualityEntry {
    TypePair pair;
    TypePair dual;
    bool jordan_a = false;
    bool jordan_b = false;
    bool ranks_agree = true;  // single observed ranks match when both constant
    bool agree = false;
};

struct DualityReport {
    std::vector<DualityEntry> entries;
    int mismatches = 0;
};

/// Checks scan(r,s) against scan(neg-r, pos-s) for every scanned pair whose
/// dual was also scanned. Orthocomplementation gives J(pi-perp) = -J(pi)
/// here, so constancy booleans and constant ranks must both transfer.
DualityReport duality_crosscheck(const std::vector<ScanVerdict>& verdicts,
                                 const Signature& ambient);

/// One row of the theorem harness: scan outcome vs. table prediction.
struct PairReport {
    ScanVerdict verdict;
    ExpectedVerdict expected;
    bool match = false;
};

/// Runs jordan_scan over every requested pair at every base point (merged),
/// injecting pinned-rank frames for the pairs predicted non-constant, and
/// compares against the case table. A pair with nilpotency failures never
/// matches: rank only determines the Jordan form once J(pi)^2 = 0 holds.
std::vector<PairReport> run_theorem_harness(
    const MetricGPsi& metric, const std::vector<Eigen::VectorXd>& points,
    const std::vector<TypePair>& pairs, const ScanConfig& cfg,
    bool membership_certified);

}  // namespace osserman
