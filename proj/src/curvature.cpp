#include "osserman/curvature.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace osserman {

namespace {

Eigen::VectorXd x_part(const MetricGPsi& metric, const Eigen::VectorXd& point) {
    const int p = metric.p();
    if (point.size() == p) return point;
    if (point.size() == metric.dim()) return point.head(p);
    throw DimensionMismatchError("point must have size p or dim");
}

Eigen::VectorXd full_point(const MetricGPsi& metric, const Eigen::VectorXd& point) {
    if (point.size() == metric.dim()) return point;
    Eigen::VectorXd full = Eigen::VectorXd::Zero(metric.dim());
    full.head(metric.p()) = x_part(metric, point);
    return full;
}

}  // namespace

CurvatureTensor CurvatureTensor::zero(int dim, Eigen::VectorXd base_point) {
    CurvatureTensor rt;
    rt.dim = dim;
    rt.base_point = std::move(base_point);
    rt.entries.assign(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0);
    return rt;
}

double CurvatureTensor::max_abs() const {
    double best = 0.0;
    for (double v : entries) best = std::max(best, std::abs(v));
    return best;
}

double max_symmetry_violation(const CurvatureTensor& rt) {
    const int m = rt.dim;
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const double v = rt(i, j, k, l);
                    worst = std::max(worst, std::abs(v + rt(j, i, k, l)));
                    worst = std::max(worst, std::abs(v + rt(i, j, l, k)));
                    worst = std::max(worst, std::abs(v - rt(k, l, i, j)));
                }
    return worst;
}

double max_first_bianchi_violation(const CurvatureTensor& rt) {
    const int m = rt.dim;
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    worst = std::max(worst, std::abs(rt(i, j, k, l) +
                                                     rt(j, k, i, l) +
                                                     rt(k, i, j, l)));
    return worst;
}

double max_off_x_entry(const CurvatureTensor& rt, int p) {
    const int m = rt.dim;
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    if (i >= p || j >= p || k >= p || l >= p)
                        worst = std::max(worst, std::abs(rt(i, j, k, l)));
    return worst;
}

InnerProduct metric_at(const MetricGPsi& metric, const Eigen::VectorXd& point) {
    const int p = metric.p();
    const int m = metric.dim();
    const Eigen::VectorXd x = x_part(metric, point);

    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
    g.topLeftCorner(p, p) = metric.psi.eval(x);
    g.block(0, p, p, p) = Eigen::MatrixXd::Identity(p, p);
    g.block(p, 0, p, p) = Eigen::MatrixXd::Identity(p, p);
    for (int a = 0; a < metric.flat_factor.dim(); ++a)
        g(2 * p + a, 2 * p + a) = a < metric.flat_factor.neg ? -1.0 : 1.0;
    return InnerProduct(std::move(g));
}

ChristoffelSymbols christoffel_closed(const MetricGPsi& metric,
                                      const Eigen::VectorXd& point) {
    const int p = metric.p();
    const int m = metric.dim();
    const Eigen::VectorXd x = x_part(metric, point);

    ChristoffelSymbols ch;
    ch.dim = m;
    ch.gamma.assign(static_cast<std::size_t>(m) * m * m, 0.0);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            for (int k = 0; k < p; ++k) {
                const double v = 0.5 * (metric.psi.first_partial(i, k, j).eval(x) +
                                        metric.psi.first_partial(j, k, i).eval(x) -
                                        metric.psi.first_partial(i, j, k).eval(x));
                ch.at(metric.y_index(k), i, j) = v;
            }
        }
    }
    return ch;
}

CurvatureTensor curvature_closed(const MetricGPsi& metric,
                                 const Eigen::VectorXd& point) {
    const int p = metric.p();
    const Eigen::VectorXd x = x_part(metric, point);
    CurvatureTensor rt = CurvatureTensor::zero(metric.dim(), full_point(metric, point));

    const XBlockCurvature rx = curvature_x_block(metric.psi, x);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            for (int k = 0; k < p; ++k)
                for (int l = 0; l < p; ++l) rt.at(i, j, k, l) = rx(i, j, k, l);
    return rt;
}

XBlockCurvature curvature_x_block(const PsiField& psi, const Eigen::VectorXd& x) {
    const int p = psi.dim();
    XBlockCurvature rx;
    rx.p = p;
    rx.entries.assign(static_cast<std::size_t>(p) * p * p * p, 0.0);

    // Second partials table at x; symmetric in (i,j) and in (k,l).
    std::vector<double> d2(rx.entries.size());
    auto d2_at = [&](int i, int j, int k, int l) -> double& {
        return d2[((static_cast<std::size_t>(i) * p + j) * p + k) * p + l];
    };
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            for (int k = 0; k < p; ++k)
                for (int l = 0; l < p; ++l)
                    d2_at(i, j, k, l) = psi.second_partial(i, j, k, l).eval(x);

    std::size_t idx = 0;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            for (int k = 0; k < p; ++k)
                for (int l = 0; l < p; ++l)
                    rx.entries[idx++] =
                        -0.5 * (d2_at(i, l, j, k) + d2_at(j, k, i, l) -
                                d2_at(i, k, j, l) - d2_at(j, l, i, k));
    return rx;
}

Eigen::MatrixXd jacobi_x_form(const XBlockCurvature& rx,
                              const Eigen::VectorXd& x_dir) {
    const int p = rx.p;
    if (x_dir.size() != p)
        throw DimensionMismatchError("direction must live in the X-block");
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
    for (int a = 0; a < p; ++a)
        for (int c = 0; c < p; ++c) {
            double total = 0.0;
            for (int j = 0; j < p; ++j)
                for (int k = 0; k < p; ++k)
                    total += x_dir[j] * x_dir[k] * rx(a, j, k, c);
            b(a, c) = total;
        }
    return b;
}

JacobiOperator jacobi(const CurvatureTensor& rt, const InnerProduct& ip,
                      const Eigen::VectorXd& x_vec) {
    const int m = rt.dim;
    if (ip.dim() != m || x_vec.size() != m)
        throw DimensionMismatchError("jacobi: dimensions disagree");

    Eigen::MatrixXd form = Eigen::MatrixXd::Zero(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            double total = 0.0;
            for (int j = 0; j < m; ++j) {
                if (x_vec[j] == 0.0) continue;
                for (int k = 0; k < m; ++k) {
                    if (x_vec[k] == 0.0) continue;
                    total += x_vec[j] * x_vec[k] * rt(a, j, k, b);
                }
            }
            form(a, b) = total;
        }

    JacobiOperator op;
    op.matrix = ip.gram.partialPivLu().solve(form);
    op.form = std::move(form);
    return op;
}

JacobiOperator higher_jacobi(const CurvatureTensor& rt, const InnerProduct& ip,
                             const SubspaceFrame& frame, double tol) {
    if (!frame.orthonormalized())
        throw FrameNotOrthonormalError("frame has no sign data");
    const int k = frame.count();
    const Eigen::MatrixXd gram =
        frame.vectors.transpose() * ip.gram * frame.vectors;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const double expected = i == j ? double(frame.signs[i]) : 0.0;
            if (std::abs(gram(i, j) - expected) > tol)
                throw FrameNotOrthonormalError(
                    "frame Gram is not diag(signs) within tolerance");
        }

    const int m = rt.dim;
    Eigen::MatrixXd form = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < k; ++i)
        form += frame.signs[i] * jacobi(rt, ip, frame.vectors.col(i)).form;

    JacobiOperator op;
    op.matrix = ip.gram.partialPivLu().solve(form);
    op.form = std::move(form);
    return op;
}

Eigen::VectorXd rho_x(const Eigen::VectorXd& v, const MetricGPsi& metric) {
    if (v.size() != metric.dim())
        throw DimensionMismatchError("vector dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    out.head(metric.p()) = v.head(metric.p());
    return out;
}

std::vector<Eigen::VectorXd> tilde_basis(const MetricGPsi& metric,
                                         const Eigen::VectorXd& point) {
    const int p = metric.p();
    const Eigen::VectorXd x = x_part(metric, point);
    const Eigen::MatrixXd psi = metric.psi.eval(x);

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(p);
    for (int i = 0; i < p; ++i) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(metric.dim());
        v[metric.x_index(i)] = 1.0;
        for (int j = 0; j < p; ++j) v[metric.y_index(j)] = -0.5 * psi(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace osserman
