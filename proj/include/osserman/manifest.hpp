#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "osserman/psi_fields.hpp"
#include "osserman/verify.hpp"

namespace osserman {

struct Tolerances {
    double rank = kDefaultRankTol;
    double ortho = kDefaultOrthoTol;
    double nilpotent = kDefaultNilpotentTol;
    double membership = 1e-8;
    double curvature_oracle = 1e-6;
    double fd_step = 1e-4;
};

/// Everything one run needs, parsed from a JSON manifest file. The seed is
/// recorded in every output so runs can be reproduced bit for bit.
struct RunManifest {
    PsiField psi;
    std::vector<Eigen::VectorXd> base_points;
    GridRegion grid;
    std::optional<std::vector<TypePair>> pairs;  // nullopt = all admissible
    int samples = 200;
    int directions = 32;
    std::uint64_t seed = 0;
    int max_rejects = 1000;
    int u = 0;
    int v = 0;
    Tolerances tol;
    std::string output;         // optional output path
    std::string manifest_hash;  // FNV-1a of the manifest file bytes
};

/// Polynomial from a JSON list of {"exponents": [...], "coefficient": c}.
PolynomialScalarField parse_polynomial(const nlohmann::json& terms, int dim);

/// psi from its JSON spec: kind "potential" (terms of f), "explicit"
/// (upper-triangular component table), or "combination" (weighted parts).
PsiField parse_psi_spec(const nlohmann::json& spec);

/// Loads and validates a manifest file. Throws ConfigError on any problem
/// (missing file, bad JSON, inconsistent dimensions, inadmissible pairs).
RunManifest load_manifest(const std::string& path);

/// FNV-1a 64-bit hash as a hex string.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace osserman
