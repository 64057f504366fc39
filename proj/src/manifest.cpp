#include "osserman/manifest.hpp"

#include <fstream>
#include <sstream>

namespace osserman {

using nlohmann::json;

PolynomialScalarField parse_polynomial(const json& terms, int dim) {
    if (!terms.is_array()) throw ConfigError("polynomial must be a list of terms");
    PolynomialScalarField poly(dim);
    for (const auto& term : terms) {
        if (!term.contains("exponents") || !term.contains("coefficient"))
            throw ConfigError("each term needs 'exponents' and 'coefficient'");
        MultiIndex exponents = term.at("exponents").get<MultiIndex>();
        if (static_cast<int>(exponents.size()) != dim)
            throw ConfigError("term exponent count does not match dim");
        poly.add_term(exponents, term.at("coefficient").get<double>());
    }
    return poly;
}

PsiField parse_psi_spec(const json& spec) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw ConfigError("psi spec needs a 'kind'");
    const std::string kind = spec.at("kind").get<std::string>();

    if (kind == "potential") {
        const int dim = spec.at("dim").get<int>();
        if (dim < 2) throw ConfigError("psi requires dim >= 2");
        return psi_from_potential(parse_polynomial(spec.at("terms"), dim));
    }
    if (kind == "explicit") {
        const int dim = spec.at("dim").get<int>();
        if (dim < 2) throw ConfigError("psi requires dim >= 2");
        std::vector<PolynomialScalarField> comps(dim * dim,
                                                 PolynomialScalarField(dim));
        for (const auto& entry : spec.at("components")) {
            const int i = entry.at("i").get<int>();
            const int j = entry.at("j").get<int>();
            if (i < 0 || j < 0 || i >= dim || j >= dim || i > j)
                throw ConfigError("explicit psi components use upper-triangular "
                                  "indices 0 <= i <= j < dim");
            comps[i * dim + j] = parse_polynomial(entry.at("terms"), dim);
        }
        return PsiField(dim, std::move(comps), PsiProvenance::Explicit);
    }
    if (kind == "combination") {
        std::vector<std::pair<double, PsiField>> parts;
        for (const auto& part : spec.at("parts"))
            parts.emplace_back(part.at("weight").get<double>(),
                               parse_psi_spec(part.at("psi")));
        if (parts.empty()) throw ConfigError("combination needs at least one part");
        return combine(parts);
    }
    throw ConfigError("unknown psi kind '" + kind + "'");
}

RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open manifest '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();

    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& e) {
        throw ConfigError("manifest is not valid JSON: " + std::string(e.what()));
    }

    RunManifest manifest;
    manifest.manifest_hash = fnv1a_hex(bytes);
    try {
        manifest.psi = parse_psi_spec(j.at("psi"));
        const int p = manifest.psi.dim();

        if (j.contains("base_points")) {
            for (const auto& pt : j.at("base_points")) {
                std::vector<double> coords = pt.get<std::vector<double>>();
                if (static_cast<int>(coords.size()) != p)
                    throw ConfigError("base point dimension does not match psi");
                manifest.base_points.push_back(Eigen::Map<Eigen::VectorXd>(
                    coords.data(), static_cast<int>(coords.size())));
            }
        }

        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            for (const auto& axis : g.at("bounds")) {
                const double lo = axis.at(0).get<double>();
                const double hi = axis.at(1).get<double>();
                if (!(lo < hi)) throw ConfigError("grid bounds must satisfy lo < hi");
                manifest.grid.bounds.emplace_back(lo, hi);
            }
            manifest.grid.resolution = g.value("resolution", 5);
            if (manifest.grid.dim() != p)
                throw ConfigError("grid dimension does not match psi");
            if (manifest.grid.resolution < 2)
                throw ConfigError("grid resolution must be at least 2");
        } else {
            manifest.grid = GridRegion::cube(p, -1.0, 1.0, 5);
        }

        if (j.contains("product")) {
            manifest.u = j.at("product").value("u", 0);
            manifest.v = j.at("product").value("v", 0);
            if (manifest.u < 0 || manifest.v < 0)
                throw ConfigError("product signature counts must be nonnegative");
        }

        if (j.contains("pairs") && j.at("pairs").is_array()) {
            std::vector<TypePair> pairs;
            const Signature ambient{p + manifest.u, p + manifest.v};
            for (const auto& entry : j.at("pairs")) {
                TypePair pair{entry.at(0).get<int>(), entry.at(1).get<int>()};
                if (!is_admissible(pair, ambient))
                    throw ConfigError("pair (" + std::to_string(pair.r) + "," +
                                      std::to_string(pair.s) + ") is not admissible");
                pairs.push_back(pair);
            }
            manifest.pairs = std::move(pairs);
        }  // "all-admissible" or absent -> nullopt

        manifest.samples = j.value("samples", 200);
        manifest.directions = j.value("directions", 32);
        manifest.seed = j.value("seed", std::uint64_t{0});
        manifest.max_rejects = j.value("max_rejects", 1000);
        manifest.output = j.value("output", std::string{});
        if (manifest.samples < 1 || manifest.directions < 1)
            throw ConfigError("samples and directions must be positive");

        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            manifest.tol.rank = t.value("rank", manifest.tol.rank);
            manifest.tol.ortho = t.value("ortho", manifest.tol.ortho);
            manifest.tol.nilpotent = t.value("nilpotent", manifest.tol.nilpotent);
            manifest.tol.membership = t.value("membership", manifest.tol.membership);
            manifest.tol.curvature_oracle =
                t.value("curvature_oracle", manifest.tol.curvature_oracle);
            manifest.tol.fd_step = t.value("fd_step", manifest.tol.fd_step);
        }
    } catch (const json::exception& e) {
        throw ConfigError("manifest field error: " + std::string(e.what()));
    }
    return manifest;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash));
    return std::string(buf);
}

}  // namespace osserman
