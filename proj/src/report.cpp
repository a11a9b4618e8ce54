#include "mfmod/report.hpp"

#include <cmath>
#include <sstream>

#include "mfmod/errors.hpp"

namespace mfmod {

double improvement(double before, double after, MetricDirection direction) {
    if (!(before > 0.0)) {
        std::ostringstream message;
        message << "improvement needs a positive before value, got " << before;
        throw Error("bad-metric", message.str());
    }
    const double change =
        direction == MetricDirection::lower_better ? before - after : after - before;
    const double percent = change / before * 100.0;
    return std::trunc(percent * 10.0) / 10.0;
}

MetricPair make_metric_pair(const std::string& name, double before, double after,
                            MetricDirection direction) {
    return MetricPair{name, before, after, direction,
                      improvement(before, after, direction)};
}

namespace {

std::string direction_name(MetricDirection direction) {
    return direction == MetricDirection::lower_better ? "lower-better"
                                                      : "higher-better";
}

MetricDirection direction_from_name(const std::string& name) {
    if (name == "lower-better") {
        return MetricDirection::lower_better;
    }
    if (name == "higher-better") {
        return MetricDirection::higher_better;
    }
    throw Error("bad-metric", "unknown direction \"" + name + "\"");
}

std::string number_text(double value) {
    return nlohmann::json(value).dump();
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') {
            quoted += "\"\"";
        } else {
            quoted += ch;
        }
    }
    quoted += "\"";
    return quoted;
}

} // namespace

nlohmann::json report_to_json(const Report& report) {
    nlohmann::json value;
    value["tool_version"] = report.tool_version;
    value["timestamp"] = report.timestamp;
    value["graph"] = nullptr;
    if (report.graph.has_value()) {
        value["graph"] = {{"vertex_count", report.graph->vertex_count},
                          {"edge_count", report.graph->edge_count},
                          {"has_cycle", report.graph->has_cycle}};
    }
    value["scores"] = nullptr;
    if (report.scores.has_value()) {
        value["scores"] = {{"s_d", report.scores->s_d},
                           {"p_d", report.scores->p_d},
                           {"e_trans", report.scores->e_trans}};
    }
    value["verification"] = nullptr;
    if (report.verification.has_value()) {
        value["verification"] = {
            {"accuracy_index", report.verification->accuracy_index},
            {"mismatch_count", report.verification->mismatch_count}};
    }
    value["migration"] = nullptr;
    if (report.migration.has_value()) {
        value["migration"] = {{"integrity", report.migration->integrity},
                              {"efficiency", report.migration->efficiency},
                              {"objective", report.migration->objective}};
    }
    nlohmann::json metrics = nlohmann::json::array();
    for (const auto& pair : report.metrics) {
        metrics.push_back({{"name", pair.name},
                           {"before", pair.before},
                           {"after", pair.after},
                           {"direction", direction_name(pair.direction)},
                           {"improvement", pair.improvement}});
    }
    value["metrics"] = std::move(metrics);
    return value;
}

Report report_from_json(const nlohmann::json& value) {
    try {
        Report report;
        report.tool_version = value.at("tool_version").get<std::string>();
        report.timestamp = value.at("timestamp").get<std::string>();
        if (!value.at("graph").is_null()) {
            const auto& graph = value.at("graph");
            report.graph = GraphSummary{graph.at("vertex_count").get<std::size_t>(),
                                        graph.at("edge_count").get<std::size_t>(),
                                        graph.at("has_cycle").get<bool>()};
        }
        if (!value.at("scores").is_null()) {
            const auto& scores = value.at("scores");
            report.scores = DeviationScores{scores.at("s_d").get<double>(),
                                            scores.at("p_d").get<double>(),
                                            scores.at("e_trans").get<double>()};
        }
        if (!value.at("verification").is_null()) {
            const auto& verification = value.at("verification");
            report.verification = VerificationSummary{
                verification.at("accuracy_index").get<double>(),
                verification.at("mismatch_count").get<std::size_t>()};
        }
        if (!value.at("migration").is_null()) {
            const auto& migration = value.at("migration");
            report.migration =
                MigrationSummary{migration.at("integrity").get<double>(),
                                 migration.at("efficiency").get<double>(),
                                 migration.at("objective").get<double>()};
        }
        for (const auto& entry : value.at("metrics")) {
            MetricPair pair;
            pair.name = entry.at("name").get<std::string>();
            pair.before = entry.at("before").get<double>();
            pair.after = entry.at("after").get<double>();
            pair.direction =
                direction_from_name(entry.at("direction").get<std::string>());
            pair.improvement = entry.at("improvement").get<double>();
            report.metrics.push_back(std::move(pair));
        }
        return report;
    } catch (const nlohmann::json::exception& failure) {
        throw Error("bad-report", failure.what());
    }
}

namespace {

std::string emit_markdown(const Report& report) {
    std::ostringstream out;
    out << "# modernization report\n\n";
    out << "- tool version: " << report.tool_version << "\n";
    out << "- timestamp: " << report.timestamp << "\n";
    if (report.graph.has_value()) {
        out << "\n## dependency graph\n\n";
        out << "| quantity | value |\n| --- | --- |\n";
        out << "| vertices | " << report.graph->vertex_count << " |\n";
        out << "| edges | " << report.graph->edge_count << " |\n";
        out << "| cycles | " << (report.graph->has_cycle ? "yes" : "no") << " |\n";
    }
    if (report.scores.has_value()) {
        out << "\n## transformation scores\n\n";
        out << "| s_d | p_d | e_trans |\n| --- | --- | --- |\n";
        out << "| " << number_text(report.scores->s_d) << " | "
            << number_text(report.scores->p_d) << " | "
            << number_text(report.scores->e_trans) << " |\n";
    }
    if (report.verification.has_value()) {
        out << "\n## verification\n\n";
        out << "| A_i | mismatches |\n| --- | --- |\n";
        out << "| " << number_text(report.verification->accuracy_index) << " | "
            << report.verification->mismatch_count << " |\n";
    }
    if (report.migration.has_value()) {
        out << "\n## migration\n\n";
        out << "| I_d | E_m | R_opt |\n| --- | --- | --- |\n";
        out << "| " << number_text(report.migration->integrity) << " | "
            << number_text(report.migration->efficiency) << " | "
            << number_text(report.migration->objective) << " |\n";
    }
    if (!report.metrics.empty()) {
        out << "\n## metrics\n\n";
        out << "| name | before | after | direction | improvement (%) |\n";
        out << "| --- | --- | --- | --- | --- |\n";
        for (const auto& pair : report.metrics) {
            out << "| " << pair.name << " | " << number_text(pair.before) << " | "
                << number_text(pair.after) << " | " << direction_name(pair.direction)
                << " | " << number_text(pair.improvement) << " |\n";
        }
    }
    return out.str();
}

std::string emit_csv(const Report& report) {
    std::string out = "name,before,after,improvement\n";
    for (const auto& pair : report.metrics) {
        out += csv_field(pair.name);
        out += ',';
        out += number_text(pair.before);
        out += ',';
        out += number_text(pair.after);
        out += ',';
        out += number_text(pair.improvement);
        out += '\n';
    }
    return out;
}

} // namespace

std::string emit_report(const Report& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::json:
        return report_to_json(report).dump(2) + "\n";
    case ReportFormat::markdown:
        return emit_markdown(report);
    case ReportFormat::csv:
        return emit_csv(report);
    }
    return {};
}

std::vector<MetricPair> pair_metrics(const std::string& before_text,
                                     const std::string& after_text) {
    const auto before = nlohmann::ordered_json::parse(before_text, nullptr, false);
    const auto after = nlohmann::ordered_json::parse(after_text, nullptr, false);
    if (before.is_discarded() || !before.is_object() || after.is_discarded() ||
        !after.is_object()) {
        throw Error("bad-metric", "metric files must be JSON objects");
    }
    std::vector<MetricPair> pairs;
    for (const auto& [name, entry] : before.items()) {
        if (!entry.is_object() || !entry.contains("value") ||
            !entry.contains("direction")) {
            throw Error("bad-metric",
                        "metric \"" + name + "\" needs value and direction");
        }
        if (!after.contains(name)) {
            throw Error("bad-metric",
                        "metric \"" + name + "\" is missing from the after file");
        }
        const auto& counterpart = after.at(name);
        if (!counterpart.is_object() || !counterpart.contains("value")) {
            throw Error("bad-metric",
                        "metric \"" + name + "\" needs a value in the after file");
        }
        const MetricDirection direction =
            direction_from_name(entry.at("direction").get<std::string>());
        if (counterpart.contains("direction") &&
            direction_from_name(counterpart.at("direction").get<std::string>()) !=
                direction) {
            throw Error("bad-metric",
                        "metric \"" + name + "\" changes direction between files");
        }
        pairs.push_back(make_metric_pair(name, entry.at("value").get<double>(),
                                         counterpart.at("value").get<double>(),
                                         direction));
    }
    return pairs;
}

} // namespace mfmod
