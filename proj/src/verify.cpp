#include "osserman/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "osserman/rng.hpp"

namespace osserman {

namespace {

// Rank of an unsigned higher order Jacobi operator over d independent
// X-directions (the trichotomy): 0, p-1, or p.
int pinned_rank(int d, int p) {
    if (d == 0) return 0;
    if (d == 1) return p - 1;
    return p;
}

Eigen::VectorXd x_coords(const MetricGPsi& metric, const Eigen::VectorXd& point) {
    if (point.size() == metric.p()) return point;
    if (point.size() == metric.dim()) return point.head(metric.p());
    throw DimensionMismatchError("point must have size p or dim");
}

// Scaled hyperbolic-leg vectors: timelike a*Xt_i - (1/2a) d_i^y has norm -1,
// spacelike a*Xt_i + (1/2a) d_i^y has norm +1, for every a != 0.
Eigen::VectorXd timelike_leg(const MetricGPsi& metric,
                             const std::vector<Eigen::VectorXd>& tilde, int i,
                             double a = 1.0) {
    Eigen::VectorXd v = a * tilde[i];
    v[metric.y_index(i)] -= 0.5 / a;
    return v;
}

Eigen::VectorXd spacelike_leg(const MetricGPsi& metric,
                              const std::vector<Eigen::VectorXd>& tilde, int i,
                              double a = 1.0) {
    Eigen::VectorXd v = a * tilde[i];
    v[metric.y_index(i)] += 0.5 / a;
    return v;
}

Eigen::VectorXd flat_axis(const MetricGPsi& metric, int k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(metric.dim());
    v[metric.flat_index(k)] = 1.0;
    return v;
}

SubspaceFrame assemble_frame(const std::vector<Eigen::VectorXd>& timelike,
                             const std::vector<Eigen::VectorXd>& spacelike) {
    const int k = static_cast<int>(timelike.size() + spacelike.size());
    SubspaceFrame frame;
    frame.vectors.resize(timelike.empty() ? spacelike.front().size()
                                          : timelike.front().size(),
                         k);
    frame.signs.reserve(k);
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

// Frame of type (alpha+a, beta+b) built from nested coordinate legs plus
// flat axes. The overlapped legs cancel pairwise, so
// J = (sum over the |alpha-beta| surviving directions) with a single sign,
// and the rank is pinned by the trichotomy.
SubspaceFrame nested_frame(const MetricGPsi& metric,
                           const std::vector<Eigen::VectorXd>& tilde, int alpha,
                           int beta, int a, int b) {
    std::vector<Eigen::VectorXd> timelike, spacelike;
    for (int i = 0; i < alpha; ++i) timelike.push_back(timelike_leg(metric, tilde, i));
    for (int k = 0; k < a; ++k) timelike.push_back(flat_axis(metric, k));
    for (int j = 0; j < beta; ++j) spacelike.push_back(spacelike_leg(metric, tilde, j));
    for (int k = 0; k < b; ++k)
        spacelike.push_back(flat_axis(metric, metric.flat_factor.neg + k));
    return assemble_frame(timelike, spacelike);
}

struct WitnessTracker {
    void offer(ScanVerdict& v, int rank, bool injected, const SubspaceFrame& frame) {
        for (const auto& w : v.witnesses)
            if (w.rank == rank) return;
        if (v.witnesses.size() < 2)
            v.witnesses.push_back({rank, injected, frame});
    }
};


ScanVerdict run_scan(const MetricGPsi& metric, const Eigen::VectorXd& point,
                     const TypePair& pair, const ScanConfig& cfg,
                     const std::vector<SubspaceFrame>& injected,
                     bool membership_certified, bool include_random) {
    ScanVerdict verdict;
    verdict.pair = pair;
    verdict.membership_certified = membership_certified;

    const InnerProduct ip = metric_at(metric, point);
    const CurvatureTensor rt = curvature_closed(metric, point);
    WitnessTracker tracker;

    auto process = [&](const SubspaceFrame& frame, bool is_injected) {
        // loose Gram tolerance: frames accepted just above the degeneracy
        // cutoff lose a few digits of orthonormality when rescaled
        const JacobiOperator op = higher_jacobi(rt, ip, frame, 1e-6);
        const double norm = op.matrix.norm();
        const double sq = (op.matrix * op.matrix).norm();
        if (sq > cfg.nilpotent_tol * std::max(1.0, norm * norm)) {
            verdict.spectrum_constant = false;
            ++verdict.nilpotency_failures;
        }
        const int rank = classify_rank(op.form, cfg.rank_tol);
        verdict.rank_histogram[rank]++;
        tracker.offer(verdict, rank, is_injected, frame);
    };

    if (include_random) {
        SampleConfig sample_cfg{1, cfg.seed, cfg.max_rejects, cfg.ortho_tol};
        for (int i = 0; i < cfg.count; ++i) {
            process(sample_subspace(ip, pair, sample_cfg,
                                    static_cast<std::uint64_t>(i)),
                    false);
            ++verdict.samples;
        }
    }
    for (const auto& frame : injected) {
        process(frame, true);
        ++verdict.injected;
    }

    verdict.jordan_constant = verdict.rank_histogram.size() == 1;
    return verdict;
}

std::string thm17_tag(const char* item) { return std::string("Thm 1.7 ") + item; }

}  // namespace

ExpectedVerdict expected_jordan_case(const TypePair& pair, int p, int u, int v) {
    const int pbar = p + u;
    const int qbar = p + v;
    if (!is_admissible(pair, Signature{pbar, qbar}))
        throw ConfigError("pair is not admissible in the ambient signature");
    const bool balanced = (u == 0 && v == 0);
    const int r = pair.r;
    const int s = pair.s;

    if (s == 0) {
        if (u == 0) return {pair, true, balanced ? "Thm 1.6 (2a)" : thm17_tag("(2a-i)")};
        if (r >= u + 2) return {pair, true, thm17_tag("(2a-iii)")};
        return {pair, false, thm17_tag("(2b)")};
    }
    if (r == 0) {
        if (v == 0) return {pair, true, balanced ? "Thm 1.6 (2a)" : thm17_tag("(2a-ii)")};
        if (s >= v + 2) return {pair, true, thm17_tag("(2a-iv)")};
        return {pair, false, thm17_tag("(2b)")};
    }
    if (s == qbar) {  // dual of type (pbar - r, 0)
        if (u == 0) return {pair, true, balanced ? "Thm 1.6 (2a)" : thm17_tag("(2a-i)")};
        if (pbar - r >= u + 2) return {pair, true, thm17_tag("(2a-iii)")};
        return {pair, false, thm17_tag("(2b)")};
    }
    if (r == pbar) {  // dual of type (0, qbar - s)
        if (v == 0) return {pair, true, balanced ? "Thm 1.6 (2a)" : thm17_tag("(2a-ii)")};
        if (qbar - s >= v + 2) return {pair, true, thm17_tag("(2a-iv)")};
        return {pair, false, thm17_tag("(2b)")};
    }
    return {pair, false, balanced ? "Thm 1.6 (2b)" : thm17_tag("(2b)")};
}

std::vector<ExpectedVerdict> expected_verdicts(int p, int u, int v) {
    if (p < 2) throw ConfigError("the metric family needs p >= 2");
    std::vector<ExpectedVerdict> table;
    for (const TypePair& pair : admissible_pairs(Signature{p + u, p + v}))
        table.push_back(expected_jordan_case(pair, p, u, v));
    return table;
}

ScanVerdict osserman_scan(const MetricGPsi& metric, const Eigen::VectorXd& point,
                          const TypePair& pair, const ScanConfig& cfg) {
    return run_scan(metric, point, pair, cfg, {}, false, true);
}

ScanVerdict jordan_scan(const MetricGPsi& metric, const Eigen::VectorXd& point,
                        const TypePair& pair, const ScanConfig& cfg,
                        const std::vector<SubspaceFrame>& injected,
                        bool membership_certified) {
    return run_scan(metric, point, pair, cfg, injected, membership_certified, true);
}

int classify_rank(const Eigen::MatrixXd& form, double tol) {
    if (form.norm() <= tol) return 0;
    return rank_with_tol(form, tol);
}

ScanVerdict merge_verdicts(ScanVerdict a, const ScanVerdict& b) {
    if (!(a.pair == b.pair)) throw DimensionMismatchError("merging different pairs");
    a.samples += b.samples;
    a.injected += b.injected;
    a.spectrum_constant = a.spectrum_constant && b.spectrum_constant;
    a.nilpotency_failures += b.nilpotency_failures;
    a.membership_certified = a.membership_certified && b.membership_certified;
    for (const auto& [rank, count] : b.rank_histogram) a.rank_histogram[rank] += count;
    WitnessTracker tracker;
    for (const auto& w : b.witnesses) tracker.offer(a, w.rank, w.injected, w.frame);
    a.jordan_constant = a.rank_histogram.size() == 1;
    return a;
}

Type11Counterexample counterexample_type11(const MetricGPsi& metric,
                                           const Eigen::VectorXd& point, double eps,
                                           double rank_tol) {
    const int p = metric.p();
    if (p < 2) throw ConfigError("needs p >= 2");
    if (eps == 0.0) throw ConfigError("eps must be nonzero");
    const std::vector<Eigen::VectorXd> tilde = tilde_basis(metric, point);

    Type11Counterexample out;
    out.pi1 = assemble_frame({timelike_leg(metric, tilde, 0)},
                             {spacelike_leg(metric, tilde, 0)});
    out.pi2 = assemble_frame({timelike_leg(metric, tilde, 0, eps)},
                             {spacelike_leg(metric, tilde, 1)});

    const InnerProduct ip = metric_at(metric, point);
    const CurvatureTensor rt = curvature_closed(metric, point);
    out.rank1 = classify_rank(higher_jacobi(rt, ip, out.pi1).form, rank_tol);
    out.rank2 = classify_rank(higher_jacobi(rt, ip, out.pi2).form, rank_tol);
    return out;
}

RankDropResult counterexample_rank_drop(const MetricGPsi& metric,
                                        const Eigen::VectorXd& point, int r, int s,
                                        const RankDropConfig& cfg) {
    const int p = metric.p();
    const bool straight = (1 <= r && r <= s && s < p && s >= 2 && r + s <= p);
    const bool mirrored = (1 <= s && s <= r && r < p && r >= 2 && r + s <= p);
    if (!straight && !mirrored)
        throw ConfigError("rank-drop search needs 1 <= min(r,s), max(r,s) >= 2, "
                          "max(r,s) < p and r+s <= p");

    const Eigen::VectorXd x = x_coords(metric, point);
    const XBlockCurvature rx = curvature_x_block(metric.psi, x);

    Eigen::MatrixXd neg_part = Eigen::MatrixXd::Zero(p, p);
    Eigen::MatrixXd pos_part = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < r; ++i)
        neg_part += jacobi_x_form(rx, Eigen::VectorXd::Unit(p, i));
    for (int j = r; j < r + s; ++j)
        pos_part += jacobi_x_form(rx, Eigen::VectorXd::Unit(p, j));

    auto form_at = [&](double alpha, double beta) {
        return Eigen::MatrixXd(-alpha * alpha * neg_part + beta * beta * pos_part);
    };
    // The side with >= 2 directions dominates its endpoint with a definite
    // sign; track the eigenvalue that flips along the path.
    auto tracked = [&](const Eigen::MatrixXd& q) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q, Eigen::EigenvaluesOnly);
        return straight ? es.eigenvalues()(0) : es.eigenvalues()(p - 1);
    };
    auto params = [&](double t) {
        return std::pair<double, double>{(1.0 - t) + t * cfg.alpha_max,
                                         (1.0 - t) * cfg.beta_max + t};
    };
    auto value = [&](double t) {
        auto [alpha, beta] = params(t);
        return tracked(form_at(alpha, beta));
    };

    RankDropResult result;
    double lo = 0.0, hi = 1.0;
    const double f_lo = value(lo);
    const double f_hi = value(hi);
    result.trace.push_back({lo, params(lo).first, params(lo).second, f_lo});
    result.trace.push_back({hi, params(hi).first, params(hi).second, f_hi});
    if (!(f_lo > 0.0 && f_hi < 0.0))
        throw SearchFailedError("path endpoints do not bracket a degeneracy; "
                                "psi may lie outside the certified class");

    for (int step = 0; step < cfg.bisection_steps; ++step) {
        const double mid = (lo + hi) / 2.0;
        const double f_mid = value(mid);
        auto [alpha, beta] = params(mid);
        result.trace.push_back({mid, alpha, beta, f_mid});
        (f_mid > 0.0 ? lo : hi) = mid;
    }

    const double t_final = (lo + hi) / 2.0;
    auto [alpha, beta] = params(t_final);
    result.alpha = alpha;
    result.beta = beta;
    result.rank_at_drop = rank_with_tol(form_at(alpha, beta), cfg.rank_tol);

    const std::vector<Eigen::VectorXd> tilde = tilde_basis(metric, point);
    std::vector<Eigen::VectorXd> timelike, spacelike;
    for (int i = 0; i < r; ++i) timelike.push_back(timelike_leg(metric, tilde, i, alpha));
    for (int j = r; j < r + s; ++j)
        spacelike.push_back(spacelike_leg(metric, tilde, j, beta));
    result.frame = assemble_frame(timelike, spacelike);
    return result;
}

std::vector<SubspaceFrame> injection_frames(const MetricGPsi& metric,
                                            const Eigen::VectorXd& point,
                                            const TypePair& pair) {
    const int p = metric.p();
    const int u = metric.flat_factor.neg;
    const int v = metric.flat_factor.pos;
    const int r = pair.r;
    const int s = pair.s;
    const std::vector<Eigen::VectorXd> tilde = tilde_basis(metric, point);

    struct Candidate {
        int alpha, beta, a, b, rank;
    };
    std::vector<Candidate> candidates;
    for (int a = std::max(0, r - p); a <= std::min(u, r); ++a)
        for (int b = std::max(0, s - p); b <= std::min(v, s); ++b) {
            const int alpha = r - a;
            const int beta = s - b;
            candidates.push_back(
                {alpha, beta, a, b, pinned_rank(std::abs(alpha - beta), p)});
        }

    const auto [min_it, max_it] = std::minmax_element(
        candidates.begin(), candidates.end(),
        [](const Candidate& x, const Candidate& y) { return x.rank < y.rank; });

    std::vector<SubspaceFrame> frames;
    frames.push_back(
        nested_frame(metric, tilde, min_it->alpha, min_it->beta, min_it->a, min_it->b));
    if (max_it->rank != min_it->rank) {
        frames.push_back(nested_frame(metric, tilde, max_it->alpha, max_it->beta,
                                      max_it->a, max_it->b));
        return frames;
    }

    // All pinned ranks coincide; differentiate with the explicit families.
    if (r == s) {
        // Break one cancelling pair: move its spacelike partner to a fresh
        // coordinate direction, leaving -J(d_0) + J(d_o) of rank >= 1.
        for (const Candidate& c : candidates) {
            if (c.alpha == c.beta && c.alpha >= 1 && c.alpha < p) {
                std::vector<Eigen::VectorXd> timelike, spacelike;
                for (int i = 0; i < c.alpha; ++i)
                    timelike.push_back(timelike_leg(metric, tilde, i));
                for (int k = 0; k < c.a; ++k)
                    timelike.push_back(flat_axis(metric, k));
                spacelike.push_back(spacelike_leg(metric, tilde, c.alpha));
                for (int j = 1; j < c.beta; ++j)
                    spacelike.push_back(spacelike_leg(metric, tilde, j));
                for (int k = 0; k < c.b; ++k)
                    spacelike.push_back(flat_axis(metric, metric.flat_factor.neg + k));
                frames.push_back(assemble_frame(timelike, spacelike));
                break;
            }
        }
    }
    if (r == 1 && s == 1) {
        Type11Counterexample cx = counterexample_type11(metric, point);
        frames.push_back(cx.pi2);
    }
    const bool drop_ok = (1 <= r && r <= s && s < p && s >= 2 && r + s <= p) ||
                         (1 <= s && s <= r && r < p && r >= 2 && r + s <= p);
    if (drop_ok)
        frames.push_back(counterexample_rank_drop(metric, point, r, s).frame);
    return frames;
}

DualityReport duality_crosscheck(const std::vector<ScanVerdict>& verdicts,
                                 const Signature& ambient) {
    DualityReport report;
    std::map<TypePair, const ScanVerdict*> by_pair;
    for (const auto& verdict : verdicts) by_pair[verdict.pair] = &verdict;

    for (const auto& verdict : verdicts) {
        const TypePair dual = dual_pair(verdict.pair, ambient);
        if (dual < verdict.pair) continue;  // report each unordered pair once
        auto it = by_pair.find(dual);
        if (it == by_pair.end()) continue;
        const ScanVerdict& other = *it->second;

        DualityEntry entry;
        entry.pair = verdict.pair;
        entry.dual = dual;
        entry.jordan_a = verdict.jordan_constant;
        entry.jordan_b = other.jordan_constant;
        entry.ranks_agree = true;
        if (verdict.jordan_constant && other.jordan_constant)
            entry.ranks_agree = verdict.rank_histogram.begin()->first ==
                                other.rank_histogram.begin()->first;
        entry.agree = (entry.jordan_a == entry.jordan_b) && entry.ranks_agree;
        if (!entry.agree) ++report.mismatches;
        report.entries.push_back(entry);
    }
    return report;
}

std::vector<PairReport> run_theorem_harness(
    const MetricGPsi& metric, const std::vector<Eigen::VectorXd>& points,
    const std::vector<TypePair>& pairs, const ScanConfig& cfg,
    bool membership_certified) {
    if (points.empty()) throw ConfigError("at least one base point is required");
    const int p = metric.p();
    const int u = metric.flat_factor.neg;
    const int v = metric.flat_factor.pos;

    std::vector<TypePair> sorted_pairs = pairs;
    std::sort(sorted_pairs.begin(), sorted_pairs.end());

    std::vector<PairReport> reports;
    for (const TypePair& pair : sorted_pairs) {
        const ExpectedVerdict expected = expected_jordan_case(pair, p, u, v);

        ScanVerdict merged;
        bool first = true;
        for (std::size_t pt = 0; pt < points.size(); ++pt) {
            const std::vector<SubspaceFrame> injected =
                expected.expected_jordan
                    ? std::vector<SubspaceFrame>{}
                    : injection_frames(metric, points[pt], pair);
            ScanConfig point_cfg = cfg;
            point_cfg.seed = derive_seed(
                cfg.seed,
                (static_cast<std::uint64_t>(pair.r) << 20) | pair.s, pt);
            ScanVerdict verdict = jordan_scan(metric, points[pt], pair, point_cfg,
                                              injected, membership_certified);
            merged = first ? std::move(verdict) : merge_verdicts(merged, verdict);
            first = false;
        }

        PairReport report;
        report.expected = expected;
        report.match = merged.nilpotency_failures == 0 &&
                       merged.jordan_constant == expected.expected_jordan;
        report.verdict = std::move(merged);
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace osserman
