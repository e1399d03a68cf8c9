#pragma once

#include "curvestats/census.hpp"
#include "curvestats/rmt.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace curvestats::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

/// Note embedded in every report payload: the conjectural limits are not
/// desk-reproducible, so moment gaps are informational columns only.
extern const char* kGapDisclaimer;

nlohmann::json predict_payload(long q, int n_max, int digits, int window_hi);
nlohmann::json series_payload(int n, int depth);
nlohmann::json trace_payload(int g_lo, int g_hi, int n, long q, int depth);
nlohmann::json rmt_payload(const rmt::ExperimentParams& params);
nlohmann::json rmt_payload(const rmt::ExperimentReport& report);
nlohmann::json census_payload(census::CurveKind kind, int p, int k, int n_max, int max_ext,
                              int workers);
nlohmann::json report_payload(const nlohmann::json& census_envelope,
                              const nlohmann::json& rmt_envelope, long q);

/// Envelope = command echo + parameters + version + results + duration.
/// The results object is byte-stable for fixed parameters; duration is the
/// only volatile field and execution knobs (workers, output paths) are not
/// echoed into parameters.
nlohmann::json make_envelope(const std::string& command, const nlohmann::json& parameters,
                             const nlohmann::json& results, double duration_seconds);

std::string render_csv(const std::string& command, const nlohmann::json& payload);

/// Parse field specs like "9", "2^3", "3^2".
std::pair<int, int> parse_field_spec(const std::string& spec);

int run_cli(const std::vector<std::string>& args);

}  // namespace curvestats::cli
