#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfmod/transform.hpp"

namespace mfmod {

inline constexpr const char* kToolVersion = "0.1.0";

enum class MetricDirection { lower_better, higher_better };

// Direction-aware relative change in percent, truncated toward zero at one
// decimal place. Throws Error("bad-metric") unless before > 0.
double improvement(double before, double after, MetricDirection direction);

struct MetricPair {
    std::string name;
    double before = 0.0;
    double after = 0.0;
    MetricDirection direction = MetricDirection::lower_better;
    double improvement = 0.0;

    bool operator==(const MetricPair&) const = default;
};

MetricPair make_metric_pair(const std::string& name, double before, double after,
                            MetricDirection direction);

struct GraphSummary {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    bool has_cycle = false;

    bool operator==(const GraphSummary&) const = default;
};

struct VerificationSummary {
    double accuracy_index = 100.0;
    std::size_t mismatch_count = 0;

    bool operator==(const VerificationSummary&) const = default;
};

struct MigrationSummary {
    double integrity = 100.0;  // I_d
    double efficiency = 0.0;   // E_m
    double objective = 0.0;    // R_opt
    bool operator==(const MigrationSummary&) const = default;
};

struct Report {
    std::optional<GraphSummary> graph;
    std::optional<DeviationScores> scores;
    std::optional<VerificationSummary> verification;
    std::optional<MigrationSummary> migration;
    std::vector<MetricPair> metrics;
    std::string tool_version = kToolVersion;
    std::string timestamp; // injected by the caller, never sampled here
};

enum class ReportFormat { json, markdown, csv };

nlohmann::json report_to_json(const Report& report);

// Inverse of report_to_json. Throws Error("bad-report") on shape mismatch.
Report report_from_json(const nlohmann::json& value);

// json: the full schema; markdown: summary tables; csv: metric pairs only.
std::string emit_report(const Report& report, ReportFormat format);

// Metric file: a JSON object of name -> {"value": number, "direction":
// "lower-better"|"higher-better"}, in author order. Pairs the two files by
// name, requiring agreement on direction. Throws Error("bad-metric").
std::vector<MetricPair> pair_metrics(const std::string& before_text,
                                     const std::string& after_text);

} // namespace mfmod
