#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "osserman/errors.hpp"

namespace osserman {

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kDefaultOrthoTol = 1e-10;
inline constexpr double kDefaultNilpotentTol = 1e-10;

/// Counts of timelike (negative-norm) and spacelike (positive-norm)
/// directions of a nondegenerate symmetric bilinear form. Subspace types
/// (r, s) reuse this struct with neg = r (timelike count first throughout).
struct Signature {
    int neg = 0;
    int pos = 0;

    int dim() const { return neg + pos; }
    bool operator==(const Signature&) const = default;
};

/// A symmetric bilinear form on R^m given by its Gram matrix in the
/// coordinate basis. Construction symmetrizes; nondegeneracy is checked by
/// signature_of, not here.
struct InnerProduct {
    Eigen::MatrixXd gram;

    InnerProduct() = default;
    explicit InnerProduct(Eigen::MatrixXd g) : gram(std::move(g)) {
        gram = ((gram + gram.transpose()) / 2.0).eval();
    }

    int dim() const { return static_cast<int>(gram.rows()); }

    double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
        return a.dot(gram * b);
    }
};

/// k vectors spanning a subspace of R^m, stored as matrix columns. After
/// orthonormalization, signs[i] = (e_i, e_i) = +/-1 with timelike columns
/// first.
struct SubspaceFrame {
    Eigen::MatrixXd vectors;  // m x k, one column per vector
    std::vector<int> signs;   // empty until orthonormalized

    int ambient_dim() const { return static_cast<int>(vectors.rows()); }
    int count() const { return static_cast<int>(vectors.cols()); }
    bool orthonormalized() const {
        return static_cast<int>(signs.size()) == count();
    }

    Signature type() const {
        Signature sig;
        for (int s : signs) (s < 0 ? sig.neg : sig.pos)++;
        return sig;
    }
};

/// Jordan normal form data of a nilpotent operator with A^2 = 0: the block
/// sizes are forced to be 1 or 2 and the multiset is determined by rank.
struct JordanPartition {
    std::vector<int> blocks;  // descending block sizes
    double eigenvalue = 0.0;

    int total() const {
        int t = 0;
        for (int b : blocks) t += b;
        return t;
    }
    int blocks_of(int size) const {
        int n = 0;
        for (int b : blocks)
            if (b == size) ++n;
        return n;
    }
    bool operator==(const JordanPartition&) const = default;
};

/// Eigenvalue-count signature of `ip`: (count < -tol, count > +tol).
/// Throws DegenerateSubspaceError if any eigenvalue lies in [-tol, tol].
Signature signature_of(const InnerProduct& ip, double tol = kDefaultRankTol);

enum class OrthoStatus { Ok, Degenerate, RankDeficient };

struct OrthoResult {
    OrthoStatus status = OrthoStatus::Ok;
    SubspaceFrame frame;  // valid only when status == Ok
};

/// Non-throwing orthonormalization; used by rejection samplers where
/// degenerate draws are routine.
OrthoResult try_orthonormalize(const SubspaceFrame& frame, const InnerProduct& ip,
                               double tol = kDefaultOrthoTol);

/// Orthonormalizes the span of `frame` under `ip` by diagonalizing the
/// restricted Gram matrix and rescaling columns by |lambda|^{-1/2}. The
/// output Gram is diag(signs) with timelike (-1) columns first. Sequential
/// Gram-Schmidt is deliberately not used: it stalls on null vectors, which
/// are generic in indefinite signature.
/// Throws RankDeficientError / DegenerateSubspaceError.
SubspaceFrame orthonormalize(const SubspaceFrame& frame, const InnerProduct& ip,
                             double tol = kDefaultOrthoTol);

/// Number of singular values above tol * sigma_max (zero matrix -> 0).
/// Relative threshold, so rank(c*A) == rank(A) for c != 0.
int rank_with_tol(const Eigen::MatrixXd& a, double tol = kDefaultRankTol);

/// Jordan partition of a 2-step nilpotent operator: rank(A) blocks of size
/// 2 and dim - 2*rank(A) blocks of size 1. The operative precondition
/// ||A^2|| <= tol * max(1, ||A||^2) (Frobenius norms) is verified; failure
/// raises NotNilpotentError, signalling input outside the supported family.
JordanPartition jordan_form_nilpotent(const Eigen::MatrixXd& a,
                                      double tol = kDefaultNilpotentTol,
                                      double rank_tol = kDefaultRankTol);

}  // namespace osserman
