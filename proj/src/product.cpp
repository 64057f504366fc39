#include "osserman/product.hpp"

#include <algorithm>

namespace osserman {

MetricGPsi product_metric(const ProductSpec& spec) {
    if (spec.psi.dim() < 2) throw ConfigError("the metric family needs p >= 2");
    if (spec.u < 0 || spec.v < 0)
        throw ConfigError("flat factor signature counts must be nonnegative");
    return MetricGPsi{spec.psi, Signature{spec.u, spec.v}};
}

int rank_formula(int dim_rho, int p) {
    if (dim_rho < 0 || dim_rho > p)
        throw ConfigError("dim rho_X must lie in [0, p]");
    if (dim_rho == 0) return 0;
    if (dim_rho == 1) return p - 1;
    return p;
}

ExpectedVerdict theorem17_case(const TypePair& pair, int p, int u, int v) {
    return expected_jordan_case(pair, p, u, v);
}

SubspaceFrame embed_frame(const SubspaceFrame& frame, int a, int b,
                          const MetricGPsi& product) {
    const int u = product.flat_factor.neg;
    const int v = product.flat_factor.pos;
    if (a > u || b > v)
        throw CapacityExceededError("flat factor has no room for the requested axes");
    if (!frame.orthonormalized())
        throw FrameNotOrthonormalError("embed_frame needs an orthonormalized frame");
    const int p = product.p();
    if (frame.ambient_dim() != 2 * p)
        throw DimensionMismatchError("frame must live in the curved factor R^{2p}");

    const int k = frame.count();
    SubspaceFrame out;
    out.vectors = Eigen::MatrixXd::Zero(product.dim(), k + a + b);
    out.signs.reserve(k + a + b);

    int c = 0;
    // Timelike columns first to keep the canonical sign order.
    for (int i = 0; i < k; ++i) {
        if (frame.signs[i] >= 0) continue;
        out.vectors.col(c).head(2 * p) = frame.vectors.col(i);
        out.signs.push_back(-1);
        ++c;
    }
    for (int j = 0; j < a; ++j) {
        out.vectors(product.flat_index(j), c) = 1.0;
        out.signs.push_back(-1);
        ++c;
    }
    for (int i = 0; i < k; ++i) {
        if (frame.signs[i] < 0) continue;
        out.vectors.col(c).head(2 * p) = frame.vectors.col(i);
        out.signs.push_back(+1);
        ++c;
    }
    for (int j = 0; j < b; ++j) {
        out.vectors(product.flat_index(u + j), c) = 1.0;
        out.signs.push_back(+1);
        ++c;
    }
    return out;
}

}  // namespace osserman
