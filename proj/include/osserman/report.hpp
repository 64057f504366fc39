#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "osserman/manifest.hpp"
#include "osserman/verify.hpp"

namespace osserman {

/// Report envelope: every emitted document carries tool version, schema
/// version, manifest hash, seed, and tolerances, which together are enough
/// to re-run the job byte for byte.
nlohmann::json report_envelope(const RunManifest& manifest, const std::string& mode);

nlohmann::json frame_json(const SubspaceFrame& frame);
nlohmann::json verdict_json(const ScanVerdict& verdict);
nlohmann::json pair_report_json(const PairReport& report);
nlohmann::json duality_json(const DualityReport& report);
nlohmann::json membership_json(const MembershipReport& report, double semi_norm_value);

/// Plain-text rendering of a verify/check-psi report: pair-by-pair table,
/// rank histograms, witness listing.
std::string render_text(const nlohmann::json& report);

/// CSV projection of the per-pair table.
std::string render_csv(const nlohmann::json& report);

/// Serialized with sorted keys and fixed indentation; identical inputs give
/// identical bytes.
std::string dump_report(const nlohmann::json& report);

void write_file(const std::string& path, const std::string& contents);

}  // namespace osserman
