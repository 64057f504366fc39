#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "osserman/manifest.hpp"
#include "osserman/product.hpp"
#include "osserman/report.hpp"
#include "osserman/rng.hpp"
#include "osserman/version.hpp"

namespace {

using namespace osserman;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitScienceFailure = 1;  // witness found / table mismatch
constexpr int kExitConfigError = 2;     // operational problem

struct CommonOptions {
    std::string manifest_path;
    std::optional<std::uint64_t> seed_flag;
    std::optional<int> samples_flag;
    std::optional<double> tol_rank;
    std::optional<double> tol_nilpotent;
    std::string out_path;
    int jobs = 1;
};

RunManifest load_with_overrides(const CommonOptions& opt) {
    RunManifest manifest = load_manifest(opt.manifest_path);
    if (const char* env = std::getenv("OSSERMAN_LAB_SEED"))
        manifest.seed = std::strtoull(env, nullptr, 10);
    if (opt.seed_flag) manifest.seed = *opt.seed_flag;
    if (opt.samples_flag) manifest.samples = *opt.samples_flag;
    if (opt.tol_rank) manifest.tol.rank = *opt.tol_rank;
    if (opt.tol_nilpotent) manifest.tol.nilpotent = *opt.tol_nilpotent;
    if (!opt.out_path.empty()) manifest.output = opt.out_path;
    return manifest;
}

ScanConfig scan_config(const RunManifest& manifest) {
    ScanConfig cfg;
    cfg.count = manifest.samples;
    cfg.seed = manifest.seed;
    cfg.max_rejects = manifest.max_rejects;
    cfg.ortho_tol = manifest.tol.ortho;
    cfg.rank_tol = manifest.tol.rank;
    cfg.nilpotent_tol = manifest.tol.nilpotent;
    return cfg;
}

void emit(const RunManifest& manifest, const json& report) {
    std::cout << render_text(report);
    if (!manifest.output.empty())
        write_file(manifest.output, dump_report(report));
}

int cmd_check_psi(const CommonOptions& opt) {
    const RunManifest manifest = load_with_overrides(opt);
    const double norm = semi_norm(manifest.psi, manifest.grid);
    const MembershipReport membership =
        psi_membership_scan(manifest.psi, manifest.grid, manifest.directions,
                            manifest.tol.membership, manifest.seed);

    json report = report_envelope(manifest, "check-psi");
    report["membership"] = membership_json(membership, norm);
    emit(manifest, report);
    return membership.member ? kExitOk : kExitScienceFailure;
}

std::vector<PairReport> run_pairs(const MetricGPsi& metric,
                                  const RunManifest& manifest,
                                  const std::vector<TypePair>& pairs,
                                  bool certified, int jobs) {
    const ScanConfig cfg = scan_config(manifest);
    if (jobs <= 1 || pairs.size() <= 1)
        return run_theorem_harness(metric, manifest.base_points, pairs, cfg, certified);

    std::vector<std::future<std::vector<PairReport>>> futures;
    for (const TypePair& pair : pairs)
        futures.push_back(std::async(std::launch::async, [&, pair] {
            return run_theorem_harness(metric, manifest.base_points, {pair}, cfg,
                                       certified);
        }));
    std::vector<PairReport> reports;
    for (auto& f : futures)
        for (auto& r : f.get()) reports.push_back(std::move(r));
    return reports;
}

int cmd_verify(const CommonOptions& opt, const std::string& theorem,
               bool waive_membership) {
    const RunManifest manifest = load_with_overrides(opt);
    const int p = manifest.psi.dim();

    if (theorem == "curvature-oracle") {
        const MetricGPsi metric =
            product_metric({manifest.psi, manifest.u, manifest.v});
        std::vector<Eigen::VectorXd> points = manifest.base_points;
        if (points.empty()) points.push_back(Eigen::VectorXd::Zero(p));

        double max_rel = 0.0;
        double max_off_x = 0.0;
        for (const auto& point : points) {
            const CurvatureTensor closed = curvature_closed(metric, point);
            const CurvatureTensor fd =
                curvature_fd(metric, point, manifest.tol.fd_step);
            const double scale = std::max(1.0, closed.max_abs());
            for (std::size_t i = 0; i < closed.entries.size(); ++i)
                max_rel = std::max(
                    max_rel, std::abs(closed.entries[i] - fd.entries[i]) / scale);
            max_off_x = std::max(max_off_x, max_off_x_entry(fd, p));
        }

        json report = report_envelope(manifest, "curvature-oracle");
        report["max_relative_error"] = max_rel;
        report["max_off_x_entry_fd"] = max_off_x;
        report["points"] = static_cast<int>(points.size());
        report["pass"] = max_rel < manifest.tol.curvature_oracle;
        emit(manifest, report);
        return max_rel < manifest.tol.curvature_oracle ? kExitOk
                                                       : kExitScienceFailure;
    }

    int u = manifest.u, v = manifest.v;
    if (theorem == "thm16") {
        if (u != 0 || v != 0)
            throw ConfigError("thm16 mode applies to the balanced metric; drop the "
                              "product factor or use thm17");
    }
    const MetricGPsi metric = product_metric({manifest.psi, u, v});
    if (manifest.base_points.empty())
        throw ConfigError("verify needs at least one base point");

    // Membership gate: the Jordan tables presuppose psi in the certified
    // class, so scan first unless explicitly waived.
    MembershipReport membership;
    bool certified = false;
    if (waive_membership) {
        membership.member = false;
    } else {
        membership = psi_membership_scan(manifest.psi, manifest.grid,
                                         manifest.directions,
                                         manifest.tol.membership, manifest.seed);
        certified = membership.member;
        if (!certified)
            throw ConfigError(
                "psi failed the membership scan; fix psi or pass "
                "--waive-membership to scan anyway");
    }

    const Signature ambient = metric.total_signature();
    std::vector<TypePair> pairs =
        manifest.pairs ? *manifest.pairs : admissible_pairs(ambient);
    std::sort(pairs.begin(), pairs.end());  // report order independent of --jobs

    const std::vector<PairReport> reports =
        run_pairs(metric, manifest, pairs, certified, opt.jobs);

    std::vector<ScanVerdict> verdicts;
    for (const auto& r : reports) verdicts.push_back(r.verdict);
    const DualityReport duality = duality_crosscheck(verdicts, ambient);

    int mismatches = 0;
    json results = json::array();
    for (const auto& r : reports) {
        results.push_back(pair_report_json(r));
        if (!r.match) ++mismatches;
    }

    json report = report_envelope(manifest, theorem);
    report["membership_certified"] = certified;
    if (!waive_membership) {
        report["membership"] =
            membership_json(membership, semi_norm(manifest.psi, manifest.grid));
    }
    report["results"] = results;
    report["duality"] = duality_json(duality);
    report["summary"] = {{"pairs", static_cast<int>(reports.size())},
                         {"mismatches", mismatches},
                         {"duality_mismatches", duality.mismatches}};
    emit(manifest, report);

    const bool table_ok = mismatches == 0 && duality.mismatches == 0;
    if (theorem == "duality") return duality.mismatches == 0 ? kExitOk : kExitScienceFailure;
    return table_ok ? kExitOk : kExitScienceFailure;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& format,
               const std::string& out_path) {
    std::string rendered;
    for (const auto& path : inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("cannot open report '" + path + "'");
        json report;
        try {
            report = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("report is not valid JSON: " + std::string(e.what()));
        }
        if (!report.contains("schema_version") ||
            report.at("schema_version").get<int>() != kReportSchemaVersion)
            throw ConfigError("report schema version mismatch in '" + path + "'");
        rendered += format == "csv" ? render_csv(report) : render_text(report);
    }
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        write_file(out_path, rendered);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher order Jacobi operator verification lab"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string theorem = "thm16";
    bool waive_membership = false;
    std::vector<std::string> report_inputs;
    std::string report_format = "text";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--manifest", opt.manifest_path, "manifest JSON file")
            ->required();
        cmd->add_option("--seed", opt.seed_flag, "override the manifest seed");
        cmd->add_option("--samples", opt.samples_flag, "random frames per pair");
        cmd->add_option("--tol-rank", opt.tol_rank, "relative rank tolerance");
        cmd->add_option("--tol-nilpotent", opt.tol_nilpotent,
                        "nilpotency tolerance");
        cmd->add_option("--out", opt.out_path, "write the JSON report here");
        cmd->add_option("--jobs", opt.jobs, "parallel pair scans");
    };

    CLI::App* check = app.add_subcommand("check-psi", "membership scan for psi");
    add_common(check);

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify);
    verify->add_option("--theorem", theorem, "thm16 | thm17 | duality | curvature-oracle")
        ->check(CLI::IsMember({"thm16", "thm17", "duality", "curvature-oracle"}));
    verify->add_flag("--waive-membership", waive_membership,
                     "scan even if psi is not certified");

    CLI::App* report = app.add_subcommand("report", "render report files");
    report->add_option("--in", report_inputs, "report JSON files")->required();
    report->add_option("--format", report_format, "text | csv")
        ->check(CLI::IsMember({"text", "csv"}));
    report->add_option("--out", opt.out_path, "write rendering here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check_psi(opt);
        if (verify->parsed()) return cmd_verify(opt, theorem, waive_membership);
        if (report->parsed())
            return cmd_report(report_inputs, report_format, opt.out_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}
