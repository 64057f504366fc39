#include "osserman/pseudo_linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace osserman {

namespace {

// Flip each column so its largest-magnitude entry is positive. Eigenvector
// signs are solver-dependent; this pins a canonical representative.
void canonicalize_column_signs(Eigen::MatrixXd& m) {
    for (int c = 0; c < m.cols(); ++c) {
        int idx = 0;
        m.col(c).cwiseAbs().maxCoeff(&idx);
        if (m(idx, c) < 0.0) m.col(c) = -m.col(c);
    }
}

}  // namespace

Signature signature_of(const InnerProduct& ip, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ip.gram,
                                                      Eigen::EigenvaluesOnly);
    Signature sig;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double lambda = es.eigenvalues()[i];
        if (lambda < -tol) {
            ++sig.neg;
        } else if (lambda > tol) {
            ++sig.pos;
        } else {
            throw DegenerateSubspaceError("degenerate inner product: eigenvalue " +
                                          std::to_string(lambda) +
                                          " within tolerance of zero");
        }
    }
    return sig;
}

OrthoResult try_orthonormalize(const SubspaceFrame& frame, const InnerProduct& ip,
                               double tol) {
    OrthoResult result;
    const int k = frame.count();
    if (k == 0 || frame.ambient_dim() != ip.dim()) {
        result.status = OrthoStatus::RankDeficient;
        return result;
    }

    // Linear dependence is a property of the vectors alone, checked before
    // the metric enters.
    if (rank_with_tol(frame.vectors, 1e-12) < k) {
        result.status = OrthoStatus::RankDeficient;
        return result;
    }

    const Eigen::MatrixXd restricted =
        frame.vectors.transpose() * ip.gram * frame.vectors;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    for (int i = 0; i < k; ++i) {
        if (std::abs(lambda[i]) <= tol) {
            result.status = OrthoStatus::Degenerate;
            return result;
        }
    }

    // Columns ordered by ascending eigenvalue, so timelike (-) come first.
    Eigen::MatrixXd out(frame.ambient_dim(), k);
    std::vector<int> signs(k);
    for (int i = 0; i < k; ++i) {
        out.col(i) = frame.vectors * es.eigenvectors().col(i) /
                     std::sqrt(std::abs(lambda[i]));
        signs[i] = lambda[i] < 0.0 ? -1 : 1;
    }
    canonicalize_column_signs(out);

    result.status = OrthoStatus::Ok;
    result.frame = SubspaceFrame{std::move(out), std::move(signs)};
    return result;
}

SubspaceFrame orthonormalize(const SubspaceFrame& frame, const InnerProduct& ip,
                             double tol) {
    OrthoResult r = try_orthonormalize(frame, ip, tol);
    switch (r.status) {
        case OrthoStatus::Ok:
            return std::move(r.frame);
        case OrthoStatus::RankDeficient:
            throw RankDeficientError("frame vectors are linearly dependent");
        case OrthoStatus::Degenerate:
        default:
            throw DegenerateSubspaceError(
                "restricted Gram matrix has an eigenvalue within tolerance of zero");
    }
}

int rank_with_tol(const Eigen::MatrixXd& a, double tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    const double threshold = tol * sv[0];
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > threshold) ++rank;
    return rank;
}

JordanPartition jordan_form_nilpotent(const Eigen::MatrixXd& a, double tol,
                                      double rank_tol) {
    const int m = static_cast<int>(a.rows());
    if (a.cols() != m) throw DimensionMismatchError("operator must be square");

    const double norm = a.norm();
    const double sq_norm = (a * a).norm();
    if (sq_norm > tol * std::max(1.0, norm * norm)) {
        throw NotNilpotentError("||A^2|| = " + std::to_string(sq_norm) +
                                " exceeds nilpotency bound");
    }

    const int rank = rank_with_tol(a, rank_tol);
    if (2 * rank > m)
        throw NotNilpotentError("rank " + std::to_string(rank) +
                                " exceeds dim/2, impossible for a square-zero "
                                "operator");
    JordanPartition partition;
    partition.blocks.assign(rank, 2);
    partition.blocks.resize(rank + (m - 2 * rank), 0);
    std::fill(partition.blocks.begin() + rank, partition.blocks.end(), 1);
    return partition;
}

}  // namespace osserman
