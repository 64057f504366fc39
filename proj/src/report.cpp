#include "osserman/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "osserman/version.hpp"

namespace osserman {

using nlohmann::json;

json report_envelope(const RunManifest& manifest, const std::string& mode) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["mode"] = mode;
    j["manifest_hash"] = manifest.manifest_hash;
    j["seed"] = manifest.seed;
    j["samples"] = manifest.samples;
    j["product"] = {{"u", manifest.u}, {"v", manifest.v}};
    j["tolerances"] = {{"rank", manifest.tol.rank},
                       {"ortho", manifest.tol.ortho},
                       {"nilpotent", manifest.tol.nilpotent},
                       {"membership", manifest.tol.membership},
                       {"curvature_oracle", manifest.tol.curvature_oracle},
                       {"fd_step", manifest.tol.fd_step}};
    return j;
}

json frame_json(const SubspaceFrame& frame) {
    json vectors = json::array();
    for (int c = 0; c < frame.count(); ++c) {
        json coords = json::array();
        for (int r = 0; r < frame.ambient_dim(); ++r)
            coords.push_back(frame.vectors(r, c));
        vectors.push_back(coords);
    }
    return json{{"signs", frame.signs}, {"vectors", vectors}};
}

json verdict_json(const ScanVerdict& verdict) {
    json hist = json::object();
    for (const auto& [rank, count] : verdict.rank_histogram)
        hist[std::to_string(rank)] = count;

    json witnesses = json::array();
    for (const auto& w : verdict.witnesses) {
        json entry = frame_json(w.frame);
        entry["rank"] = w.rank;
        entry["injected"] = w.injected;
        witnesses.push_back(entry);
    }

    return json{{"pair", {verdict.pair.r, verdict.pair.s}},
                {"samples", verdict.samples},
                {"injected", verdict.injected},
                {"spectrum_constant", verdict.spectrum_constant},
                {"nilpotency_failures", verdict.nilpotency_failures},
                {"rank_histogram", hist},
                {"jordan_constant", verdict.jordan_constant},
                {"membership_certified", verdict.membership_certified},
                {"witnesses", witnesses}};
}

json pair_report_json(const PairReport& report) {
    json j = verdict_json(report.verdict);
    j["expected_jordan"] = report.expected.expected_jordan;
    j["source"] = report.expected.source;
    j["match"] = report.match;
    return j;
}

json duality_json(const DualityReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries)
        entries.push_back(json{{"pair", {e.pair.r, e.pair.s}},
                               {"dual", {e.dual.r, e.dual.s}},
                               {"jordan_constant", e.jordan_a},
                               {"dual_jordan_constant", e.jordan_b},
                               {"ranks_agree", e.ranks_agree},
                               {"agree", e.agree}});
    return json{{"entries", entries}, {"mismatches", report.mismatches}};
}

json membership_json(const MembershipReport& report, double semi_norm_value) {
    json j;
    j["member"] = report.member;
    j["points_checked"] = report.points_checked;
    j["directions_per_point"] = report.directions_per_point;
    j["semi_norm"] = semi_norm_value;
    if (report.witness) {
        json w;
        w["point"] = std::vector<double>(
            report.witness->point.data(),
            report.witness->point.data() + report.witness->point.size());
        w["direction"] = std::vector<double>(
            report.witness->direction.data(),
            report.witness->direction.data() + report.witness->direction.size());
        w["eigenvalues"] = std::vector<double>(
            report.witness->eigenvalues.data(),
            report.witness->eigenvalues.data() + report.witness->eigenvalues.size());
        j["witness"] = w;
    }
    return j;
}

namespace {

std::string pair_str(const json& pair) {
    return "(" + std::to_string(pair.at(0).get<int>()) + "," +
           std::to_string(pair.at(1).get<int>()) + ")";
}

std::string hist_str(const json& hist) {
    std::string out;
    for (auto it = hist.begin(); it != hist.end(); ++it) {
        if (!out.empty()) out += " ";
        out += it.key() + ":" + std::to_string(it.value().get<int>());
    }
    return out;
}

}  // namespace

std::string render_text(const json& report) {
    std::ostringstream out;
    out << "mode: " << report.value("mode", std::string{"?"})
        << "  seed: " << report.value("seed", std::uint64_t{0})
        << "  manifest: " << report.value("manifest_hash", std::string{"?"}) << "\n";

    if (report.contains("membership")) {
        const auto& m = report.at("membership");
        out << "membership: " << (m.at("member").get<bool>() ? "member" : "witness")
            << "  points: " << m.at("points_checked").get<long long>()
            << "  semi-norm: " << m.at("semi_norm").get<double>() << "\n";
        if (m.contains("witness")) {
            out << "  witness point:";
            for (double c : m.at("witness").at("point")) out << " " << c;
            out << "\n  witness direction:";
            for (double c : m.at("witness").at("direction")) out << " " << c;
            out << "\n";
        }
    }

    if (report.contains("results")) {
        out << "\npair      expected  constant  match  samples  ranks\n";
        out << "----      --------  --------  -----  -------  -----\n";
        for (const auto& row : report.at("results")) {
            out << std::left << std::setw(10) << pair_str(row.at("pair"))
                << std::setw(10)
                << (row.contains("expected_jordan")
                        ? (row.at("expected_jordan").get<bool>() ? "yes" : "no")
                        : "-")
                << std::setw(10) << (row.at("jordan_constant").get<bool>() ? "yes" : "no")
                << std::setw(7)
                << (row.contains("match") ? (row.at("match").get<bool>() ? "ok" : "FAIL")
                                          : "-")
                << std::setw(9) << row.at("samples").get<int>()
                << hist_str(row.at("rank_histogram")) << "\n";
        }

        bool any_witness = false;
        for (const auto& row : report.at("results"))
            if (!row.at("witnesses").empty()) any_witness = true;
        if (any_witness) {
            out << "\nwitnesses\n";
            for (const auto& row : report.at("results")) {
                for (const auto& w : row.at("witnesses")) {
                    out << "  " << pair_str(row.at("pair")) << " rank "
                        << w.at("rank").get<int>()
                        << (w.at("injected").get<bool>() ? " (injected)" : "") << "\n";
                }
            }
        }
    }

    if (report.contains("duality")) {
        const auto& d = report.at("duality");
        out << "\nduality mismatches: " << d.at("mismatches").get<int>() << "\n";
    }
    if (report.contains("max_relative_error")) {
        out << "curvature oracle max relative error: "
            << report.at("max_relative_error").get<double>() << "\n";
    }
    return out.str();
}

std::string render_csv(const json& report) {
    std::ostringstream out;
    out << "r,s,expected_jordan,jordan_constant,spectrum_constant,match,samples,"
           "injected,rank_histogram\n";
    if (!report.contains("results")) return out.str();
    for (const auto& row : report.at("results")) {
        out << row.at("pair").at(0).get<int>() << ","
            << row.at("pair").at(1).get<int>() << ",";
        out << (row.contains("expected_jordan")
                    ? (row.at("expected_jordan").get<bool>() ? "true" : "false")
                    : "")
            << ",";
        out << (row.at("jordan_constant").get<bool>() ? "true" : "false") << ","
            << (row.at("spectrum_constant").get<bool>() ? "true" : "false") << ",";
        out << (row.contains("match") ? (row.at("match").get<bool>() ? "true" : "false")
                                      : "")
            << ",";
        out << row.at("samples").get<int>() << "," << row.at("injected").get<int>()
            << ",\"" << hist_str(row.at("rank_histogram")) << "\"\n";
    }
    return out.str();
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << contents;
}

}  // namespace osserman
