#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfmod/parser.hpp"
#include "mfmod/pipeline.hpp"
#include "mfmod/validate.hpp"

namespace py = pybind11;

namespace {

nlohmann::json diagnostics_json(const mfmod::SourceUnit& unit,
                                const std::vector<mfmod::Diagnostic>& diagnostics) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& diagnostic : diagnostics) {
        list.push_back({{"code", diagnostic.code},
                        {"message", diagnostic.message},
                        {"line", diagnostic.location.line},
                        {"column", diagnostic.location.column},
                        {"rendered", format_diagnostic(unit, diagnostic)}});
    }
    return list;
}

// Parses and validates; on success fills `out` and returns an empty list.
nlohmann::json load_program(const std::string& text, mfmod::Program& out) {
    mfmod::SourceUnit unit("<memory>", text);
    mfmod::ParseResult parsed = mfmod::parse(unit);
    if (!parsed.program.has_value()) {
        return diagnostics_json(unit, parsed.diagnostics);
    }
    std::vector<mfmod::Diagnostic> issues = mfmod::validate(*parsed.program);
    if (mfmod::has_errors(issues)) {
        return diagnostics_json(unit, issues);
    }
    out = std::move(*parsed.program);
    return nlohmann::json::array();
}

std::string parse_json(const std::string& text) {
    mfmod::Program program;
    nlohmann::json diagnostics = load_program(text, program);
    if (!diagnostics.empty()) {
        return nlohmann::json{{"ok", false}, {"diagnostics", diagnostics}}.dump();
    }
    nlohmann::json paragraphs = nlohmann::json::array();
    for (const auto& paragraph : program.paragraphs) {
        paragraphs.push_back(paragraph.name);
    }
    nlohmann::json items = nlohmann::json::array();
    for (const auto& item : program.data_items) {
        items.push_back({{"name", item.name}, {"picture", item.picture.to_string()}});
    }
    return nlohmann::json{{"ok", true},
                          {"program_id", program.program_id},
                          {"paragraphs", std::move(paragraphs)},
                          {"data_items", std::move(items)}}
        .dump();
}

std::string analyze_json(const std::string& text) {
    mfmod::Program program;
    nlohmann::json diagnostics = load_program(text, program);
    if (!diagnostics.empty()) {
        return nlohmann::json{{"ok", false}, {"diagnostics", diagnostics}}.dump();
    }
    const mfmod::DependencyGraph graph = mfmod::build_graph(program);
    return nlohmann::json{{"ok", true},
                          {"graph", mfmod::graph_to_json(graph)},
                          {"matrix", mfmod::matrix_to_json(mfmod::to_matrix(graph))},
                          {"metrics", mfmod::metrics_to_json(mfmod::analyze(graph))}}
        .dump();
}

std::string export_dot_text(const std::string& text) {
    mfmod::Program program;
    nlohmann::json diagnostics = load_program(text, program);
    if (!diagnostics.empty()) {
        throw mfmod::Error("diagnostics", diagnostics.dump());
    }
    return mfmod::export_dot(mfmod::build_graph(program));
}

std::string transform_json(const std::string& text, double alpha, double beta,
                           std::size_t tests, std::uint64_t seed) {
    mfmod::Program program;
    nlohmann::json diagnostics = load_program(text, program);
    if (!diagnostics.empty()) {
        return nlohmann::json{{"ok", false}, {"diagnostics", diagnostics}}.dump();
    }
    const mfmod::TransformWeights weights = mfmod::make_weights(alpha, beta);
    const std::vector<mfmod::TransformCandidate> candidates = mfmod::lower(program);
    const std::vector<mfmod::TestCase> cases =
        mfmod::generate_tests(program, tests, seed);
    std::vector<mfmod::DeviationScores> scores;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& candidate : candidates) {
        scores.push_back(score_candidate(candidate, program, weights, cases));
        const mfmod::VerificationReport verification =
            verify_candidate(program, candidate.ir, cases);
        rows.push_back({{"s_d", scores.back().s_d},
                        {"p_d", scores.back().p_d},
                        {"e_trans", scores.back().e_trans},
                        {"accuracy_index", verification.accuracy_index},
                        {"rule_trace", candidate.rule_trace}});
    }
    const std::size_t selected = mfmod::select(candidates, scores);
    return nlohmann::json{{"ok", true},
                          {"mir_text", render(candidates[selected].ir)},
                          {"selected", selected},
                          {"candidates", std::move(rows)}}
        .dump();
}

std::string verify_json(const std::string& source_text, const std::string& mir_text,
                        std::size_t tests, std::uint64_t seed) {
    mfmod::Program program;
    nlohmann::json diagnostics = load_program(source_text, program);
    if (!diagnostics.empty()) {
        return nlohmann::json{{"ok", false}, {"diagnostics", diagnostics}}.dump();
    }
    mfmod::MirParseResult parsed = mfmod::parse_mir(mir_text);
    if (!parsed.ir.has_value()) {
        mfmod::SourceUnit unit("<memory>", mir_text);
        return nlohmann::json{{"ok", false},
                              {"diagnostics",
                               diagnostics_json(unit, parsed.diagnostics)}}
            .dump();
    }
    const mfmod::VerificationReport report = verify_candidate(
        program, *parsed.ir, mfmod::generate_tests(program, tests, seed));
    nlohmann::json value = verification_to_json(report);
    value["ok"] = true;
    return value.dump();
}

std::string mir_roundtrip(const std::string& mir_text) {
    mfmod::MirParseResult parsed = mfmod::parse_mir(mir_text);
    if (!parsed.ir.has_value()) {
        std::string detail = "not a well-formed unit";
        if (!parsed.diagnostics.empty()) {
            detail = parsed.diagnostics.front().message;
        }
        throw mfmod::Error("mir-syntax", detail);
    }
    return render(*parsed.ir);
}

double improvement_value(double before, double after, const std::string& direction) {
    if (direction != "lower-better" && direction != "higher-better") {
        throw mfmod::Error("bad-metric", "unknown direction \"" + direction + "\"");
    }
    return improvement(before, after,
                       direction == "lower-better"
                           ? mfmod::MetricDirection::lower_better
                           : mfmod::MetricDirection::higher_better);
}

std::string migrate_json(const std::string& layout_text, const std::string& data_text,
                         const std::string& format, const std::string& nodes_text,
                         double sla) {
    mfmod::SourceUnit unit("<layout>", layout_text);
    mfmod::LayoutParseResult layout = mfmod::parse_layout(unit);
    if (!layout.layout.has_value()) {
        return nlohmann::json{{"ok", false},
                              {"diagnostics",
                               diagnostics_json(unit, layout.diagnostics)}}
            .dump();
    }
    const mfmod::ParsedRecords records =
        mfmod::parse_records(mfmod::split_lines(data_text), *layout.layout);
    const mfmod::IntegrityCounts integrity = profile(records, *layout.layout);

    const std::vector<mfmod::TransferTask> tasks =
        mfmod::make_tasks(records.valid.size(), layout.layout->record_width,
                          mfmod::kBatchRecords, mfmod::kSecondsPerByte);
    std::vector<mfmod::NodeSpec> nodes;
    if (!nodes_text.empty()) {
        nodes = mfmod::parse_node_specs(nodes_text);
    } else {
        std::uint64_t total = 0;
        for (const auto& task : tasks) {
            total += task.payload_bytes;
        }
        nodes.push_back({"local", 1.0, total});
    }
    const mfmod::SchedulePlan plan = mfmod::schedule(tasks, nodes);

    std::ostringstream sink;
    const mfmod::MigrationStats stats = transfer(
        records.valid, *layout.layout, plan,
        format == "jsonl" ? mfmod::SinkFormat::jsonl : mfmod::SinkFormat::csv, sink,
        records.invalid.size());

    std::vector<mfmod::MonitorSample> samples;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        samples.push_back({i, nodes[plan.assignment[i]].id, true, 1.0});
    }
    if (samples.empty()) {
        samples.push_back({0, nodes.front().id, true, 0.0});
    }
    const mfmod::SlaReport sla_report = monitor(samples, sla);

    return nlohmann::json{{"ok", true},
                          {"output", sink.str()},
                          {"integrity", integrity_to_json(integrity)},
                          {"stats", stats_to_json(stats)},
                          {"sla", sla_to_json(sla_report)},
                          {"objective", plan.objective}}
        .dump();
}

std::string schedule_json(const std::vector<std::uint64_t>& payloads,
                          double seconds_per_byte, const std::string& nodes_text) {
    std::vector<mfmod::TransferTask> tasks;
    for (std::size_t i = 0; i < payloads.size(); ++i) {
        tasks.push_back({i, payloads[i], seconds_per_byte});
    }
    const mfmod::SchedulePlan plan =
        mfmod::schedule(tasks, mfmod::parse_node_specs(nodes_text));
    return nlohmann::json{{"assignment", plan.assignment},
                          {"objective", plan.objective}}
        .dump();
}

} // namespace

PYBIND11_MODULE(_mfmod, m) {
    m.doc() = "COBOL subset modernization toolchain";
    m.attr("__version__") = mfmod::kToolVersion;

    m.def("parse_json", &parse_json, py::arg("source"),
          "Parse and validate a source unit; returns a JSON summary");
    m.def("analyze_json", &analyze_json, py::arg("source"),
          "Dependency graph, matrix and metrics as JSON");
    m.def("export_dot", &export_dot_text, py::arg("source"),
          "Dependency graph in DOT form");
    m.def("transform_json", &transform_json, py::arg("source"),
          py::arg("alpha") = 0.5, py::arg("beta") = 0.5, py::arg("tests") = 100,
          py::arg("seed") = 42, "Lower, score and select; returns JSON");
    m.def("verify_json", &verify_json, py::arg("source"), py::arg("mir_text"),
          py::arg("tests") = 100, py::arg("seed") = 42,
          "Differential verification report as JSON");
    m.def("mir_roundtrip", &mir_roundtrip, py::arg("mir_text"),
          "Parse IR text and render it back canonically");
    m.def("improvement", &improvement_value, py::arg("before"), py::arg("after"),
          py::arg("direction"), "Direction-aware relative change in percent");
    m.def("migrate_json", &migrate_json, py::arg("layout"), py::arg("data"),
          py::arg("format") = "csv", py::arg("nodes") = "", py::arg("sla") = 99.5,
          "Record validation, scheduling and transfer; returns JSON");
    m.def("schedule_json", &schedule_json, py::arg("payloads"),
          py::arg("seconds_per_byte"), py::arg("nodes"),
          "Greedy task assignment as JSON");
}
