#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "osserman/curvature.hpp"

// Finite-difference curvature oracle. Everything here goes through
// metric_at and the generic coordinate formulas only; it must not touch the
// closed-form Christoffel/curvature code it is used to check.

namespace osserman {

namespace {

Eigen::MatrixXd inverse_metric(const MetricGPsi& metric, const Eigen::VectorXd& q) {
    const Eigen::MatrixXd g = metric_at(metric, q).gram;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (!lu.isInvertible())
        throw IllConditionedError("metric not invertible at a stencil point");
    Eigen::MatrixXd ginv = lu.inverse();
    if (!ginv.allFinite() || (g * ginv - Eigen::MatrixXd::Identity(g.rows(), g.cols()))
                                     .cwiseAbs()
                                     .maxCoeff() > 1e-8)
        throw IllConditionedError("metric inversion lost precision at a stencil point");
    return ginv;
}

// dg[a](b,c) = d_a g_bc by central differences.
std::vector<Eigen::MatrixXd> metric_derivatives(const MetricGPsi& metric,
                                                const Eigen::VectorXd& q, double h) {
    const int m = metric.dim();
    std::vector<Eigen::MatrixXd> dg(m);
    for (int a = 0; a < m; ++a) {
        Eigen::VectorXd qp = q, qm = q;
        qp[a] += h;
        qm[a] -= h;
        dg[a] = (metric_at(metric, qp).gram - metric_at(metric, qm).gram) / (2.0 * h);
    }
    return dg;
}

// Gamma[c](a,b) = Gamma^c_ab from the Koszul formula.
std::vector<Eigen::MatrixXd> christoffel_at(const MetricGPsi& metric,
                                            const Eigen::VectorXd& q, double h) {
    const int m = metric.dim();
    const Eigen::MatrixXd ginv = inverse_metric(metric, q);
    const std::vector<Eigen::MatrixXd> dg = metric_derivatives(metric, q, h);

    std::vector<Eigen::MatrixXd> gamma(m, Eigen::MatrixXd::Zero(m, m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                double total = 0.0;
                for (int d = 0; d < m; ++d)
                    total += ginv(c, d) * (dg[a](b, d) + dg[b](a, d) - dg[d](a, b));
                gamma[c](a, b) = 0.5 * total;
            }
    return gamma;
}

}  // namespace

CurvatureTensor curvature_fd(const MetricGPsi& metric, const Eigen::VectorXd& point,
                             double h) {
    if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");
    const int m = metric.dim();

    Eigen::VectorXd q = Eigen::VectorXd::Zero(m);
    if (point.size() == m) {
        q = point;
    } else if (point.size() == metric.p()) {
        q.head(metric.p()) = point;
    } else {
        throw DimensionMismatchError("point must have size p or dim");
    }

    const std::vector<Eigen::MatrixXd> gamma0 = christoffel_at(metric, q, h);

    // dgamma[a][c](b, e) = d_a Gamma^c_be
    std::vector<std::vector<Eigen::MatrixXd>> dgamma(m);
    for (int a = 0; a < m; ++a) {
        Eigen::VectorXd qp = q, qm = q;
        qp[a] += h;
        qm[a] -= h;
        const auto gp = christoffel_at(metric, qp, h);
        const auto gm = christoffel_at(metric, qm, h);
        dgamma[a].resize(m);
        for (int c = 0; c < m; ++c) dgamma[a][c] = (gp[c] - gm[c]) / (2.0 * h);
    }

    const Eigen::MatrixXd g = metric_at(metric, q).gram;
    CurvatureTensor rt = CurvatureTensor::zero(m, q);

    // R^d_abc for R(d_a, d_b) d_c, then lower the last index.
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                Eigen::VectorXd rup = Eigen::VectorXd::Zero(m);
                for (int d = 0; d < m; ++d) {
                    double total = dgamma[a][d](b, c) - dgamma[b][d](a, c);
                    for (int e = 0; e < m; ++e)
                        total += gamma0[d](a, e) * gamma0[e](b, c) -
                                 gamma0[d](b, e) * gamma0[e](a, c);
                    rup[d] = total;
                }
                const Eigen::VectorXd lowered = g * rup;
                for (int d = 0; d < m; ++d) rt.at(a, b, c, d) = lowered[d];
            }
    return rt;
}

}  // namespace osserman
