#include "osserman/grassmann.hpp"

#include <string>

#include "osserman/rng.hpp"

namespace osserman {

std::vector<TypePair> admissible_pairs(const Signature& ambient) {
    std::vector<TypePair> pairs;
    const int m = ambient.dim();
    for (int r = 0; r <= ambient.neg; ++r)
        for (int s = 0; s <= ambient.pos; ++s)
            if (r + s >= 1 && r + s <= m - 1) pairs.push_back({r, s});
    return pairs;
}

bool is_admissible(const TypePair& pair, const Signature& ambient) {
    return pair.r >= 0 && pair.s >= 0 && pair.r <= ambient.neg &&
           pair.s <= ambient.pos && pair.total() >= 1 &&
           pair.total() <= ambient.dim() - 1;
}

TypePair dual_pair(const TypePair& pair, const Signature& ambient) {
    return {ambient.neg - pair.r, ambient.pos - pair.s};
}

SubspaceFrame sample_subspace(const InnerProduct& ip, const TypePair& pair,
                              const SampleConfig& cfg, std::uint64_t sample_index) {
    const Signature ambient = signature_of(ip);
    if (!is_admissible(pair, ambient))
        throw ConfigError("type (" + std::to_string(pair.r) + "," +
                          std::to_string(pair.s) + ") is not admissible in (" +
                          std::to_string(ambient.neg) + "," +
                          std::to_string(ambient.pos) + ")");

    const int m = ip.dim();
    const int k = pair.total();
    Rng rng(derive_seed(cfg.seed, sample_index));

    for (int attempt = 0; attempt < cfg.max_rejects; ++attempt) {
        SubspaceFrame draw;
        draw.vectors.resize(m, k);
        for (int c = 0; c < k; ++c) draw.vectors.col(c) = rng.normal_vector(m);

        OrthoResult ortho = try_orthonormalize(draw, ip, cfg.tol);
        if (ortho.status != OrthoStatus::Ok) continue;
        if (ortho.frame.type() == Signature{pair.r, pair.s})
            return std::move(ortho.frame);
    }
    throw SamplingExhaustedError("no (" + std::to_string(pair.r) + "," +
                                 std::to_string(pair.s) + ") frame within " +
                                 std::to_string(cfg.max_rejects) + " draws");
}

int dim_rho_x(const SubspaceFrame& frame, const MetricGPsi& metric, double tol) {
    if (frame.ambient_dim() != metric.dim())
        throw DimensionMismatchError("frame does not live in the metric's space");
    const Eigen::MatrixXd x_rows = frame.vectors.topRows(metric.p());
    return rank_with_tol(x_rows, tol);
}

}  // namespace osserman
