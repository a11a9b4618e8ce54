#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mfmod/parser.hpp"
#include "mfmod/pipeline.hpp"
#include "mfmod/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitGate = 2;
constexpr int kExitIo = 3;

std::string utc_now_text() {
    const std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm parts{};
    gmtime_r(&now, &parts);
    char text[64];
    std::snprintf(text, sizeof(text), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  parts.tm_year + 1900, parts.tm_mon + 1, parts.tm_mday,
                  parts.tm_hour, parts.tm_min, parts.tm_sec);
    return text;
}

mfmod::Program load_program(const std::string& path, mfmod::SourceUnit& unit) {
    const std::string text = mfmod::read_text_file(path);
    unit = mfmod::SourceUnit(path, text);
    mfmod::ParseResult parsed = mfmod::parse(unit);
    if (!parsed.program.has_value()) {
        std::string rendered;
        for (const auto& diagnostic : parsed.diagnostics) {
            rendered += format_diagnostic(unit, diagnostic) + "\n";
        }
        throw mfmod::DiagnosticsError(std::move(parsed.diagnostics), rendered);
    }
    std::vector<mfmod::Diagnostic> issues = mfmod::validate(*parsed.program);
    if (mfmod::has_errors(issues)) {
        std::string rendered;
        for (const auto& diagnostic : issues) {
            rendered += format_diagnostic(unit, diagnostic) + "\n";
        }
        throw mfmod::DiagnosticsError(std::move(issues), rendered);
    }
    return std::move(*parsed.program);
}

int run_analyze(const std::string& source_path, const std::string& dot_path,
                const std::string& json_path) {
    mfmod::SourceUnit unit;
    const mfmod::Program program = load_program(source_path, unit);
    const mfmod::DependencyGraph graph = mfmod::build_graph(program);
    const mfmod::GraphMetrics metrics = mfmod::analyze(graph);

    if (!dot_path.empty()) {
        mfmod::write_text_file(dot_path, mfmod::export_dot(graph));
    }
    if (!json_path.empty()) {
        nlohmann::json bundle = {{"graph", mfmod::graph_to_json(graph)},
                                 {"matrix", mfmod::matrix_to_json(mfmod::to_matrix(graph))},
                                 {"metrics", mfmod::metrics_to_json(metrics)}};
        mfmod::write_text_file(json_path, bundle.dump(2) + "\n");
    }

    std::cout << "program " << program.program_id << ": " << metrics.vertex_count
              << " paragraphs, " << metrics.edge_count << " dependency edges, "
              << (metrics.has_cycle ? "cyclic" : "acyclic") << "\n";
    if (metrics.topological_order.has_value()) {
        std::cout << "order:";
        for (const auto& name : *metrics.topological_order) {
            std::cout << " " << name;
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int run_transform(mfmod::RunConfig config, const std::string& out_path,
                  const std::string& report_path) {
    const mfmod::PipelineOutcome outcome = mfmod::run_pipeline(config);
    if (out_path.empty()) {
        std::cout << outcome.mir_text;
    } else {
        mfmod::write_text_file(out_path, outcome.mir_text);
    }
    if (!report_path.empty()) {
        mfmod::write_text_file(report_path,
                               emit_report(outcome.report, mfmod::ReportFormat::json));
    }
    const mfmod::VerificationReport& verification =
        outcome.verifications[outcome.selected];
    std::cerr << "selected candidate " << outcome.selected << " of "
              << outcome.candidates.size() << ", A_i = "
              << verification.accuracy_index << ", e_trans = "
              << outcome.scores[outcome.selected].e_trans << "\n";
    return kExitOk;
}

int run_verify(const std::string& source_path, const std::string& mir_path,
               std::size_t tests, std::uint64_t seed, double gate) {
    mfmod::SourceUnit unit;
    const mfmod::Program program = load_program(source_path, unit);

    const std::string mir_text = mfmod::read_text_file(mir_path);
    mfmod::MirParseResult parsed = mfmod::parse_mir(mir_text);
    if (!parsed.ir.has_value()) {
        std::string rendered;
        mfmod::SourceUnit mir_unit(mir_path, mir_text);
        for (const auto& diagnostic : parsed.diagnostics) {
            rendered += format_diagnostic(mir_unit, diagnostic) + "\n";
        }
        throw mfmod::DiagnosticsError(std::move(parsed.diagnostics), rendered);
    }
    std::vector<mfmod::Diagnostic> issues = mfmod::check_ir(*parsed.ir);
    if (mfmod::has_errors(issues)) {
        std::string rendered;
        mfmod::SourceUnit mir_unit(mir_path, mir_text);
        for (const auto& diagnostic : issues) {
            rendered += format_diagnostic(mir_unit, diagnostic) + "\n";
        }
        throw mfmod::DiagnosticsError(std::move(issues), rendered);
    }

    const std::vector<mfmod::TestCase> cases =
        mfmod::generate_tests(program, tests, seed);
    const mfmod::VerificationReport report =
        mfmod::verify_candidate(program, *parsed.ir, cases);

    std::cout << "A_i = " << report.accuracy_index << " (" << report.matching_cases
              << "/" << report.total_cases << " cases)\n";
    constexpr std::size_t kMismatchLimit = 5;
    for (std::size_t i = 0; i < report.mismatches.size() && i < kMismatchLimit; ++i) {
        std::cout << mismatch_text(report.mismatches[i]);
    }
    if (report.mismatches.size() > kMismatchLimit) {
        std::cout << "(" << report.mismatches.size() - kMismatchLimit
                  << " further mismatches suppressed)\n";
    }
    if (report.accuracy_index < gate) {
        std::cerr << "accuracy below the gate of " << gate << "\n";
        return kExitGate;
    }
    return kExitOk;
}

int run_migrate(const mfmod::MigrationConfig& config, const std::string& json_path) {
    const mfmod::MigrationOutcome outcome = mfmod::run_migration_stage(config);
    if (!json_path.empty()) {
        nlohmann::json bundle = {{"integrity", integrity_to_json(outcome.integrity)},
                                 {"stats", stats_to_json(outcome.stats)},
                                 {"sla", sla_to_json(outcome.sla)},
                                 {"objective", outcome.plan.objective}};
        mfmod::write_text_file(json_path, bundle.dump(2) + "\n");
    }
    std::cout << "records: " << outcome.stats.records_in << " in, "
              << outcome.stats.records_out << " out, " << outcome.stats.quarantined
              << " quarantined\n";
    std::cout << "integrity I_d = " << outcome.integrity.integrity
              << ", duplicates = " << outcome.integrity.duplicates << "\n";
    std::cout << "schedule R_opt = " << outcome.plan.objective << " node-seconds on "
              << outcome.plan.nodes.size() << " nodes\n";
    std::cout << "transfer: " << outcome.stats.bytes_transferred << " bytes in "
              << outcome.stats.compute_seconds << " s, E_m = "
              << outcome.stats.efficiency << "\n";
    std::cout << "sla: uptime = " << outcome.sla.uptime << ", breaches = "
              << outcome.sla.breaches.size() << "\n";
    return kExitOk;
}

int run_report(const std::string& before_path, const std::string& after_path,
               const std::string& format_name, const std::string& out_path,
               const std::string& timestamp) {
    mfmod::Report report;
    report.metrics = mfmod::pair_metrics(mfmod::read_text_file(before_path),
                                         mfmod::read_text_file(after_path));
    report.timestamp = timestamp;
    mfmod::ReportFormat format = mfmod::ReportFormat::json;
    if (format_name == "markdown") {
        format = mfmod::ReportFormat::markdown;
    } else if (format_name == "csv") {
        format = mfmod::ReportFormat::csv;
    }
    const std::string text = emit_report(report, format);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        mfmod::write_text_file(out_path, text);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"COBOL subset modernization toolchain"};
    app.require_subcommand(1);

    std::string source_path;
    std::string mir_path;
    std::string dot_path;
    std::string json_path;
    std::string out_path;
    std::string report_path;
    std::string layout_path;
    std::string input_path;
    std::string output_path;
    std::string nodes_text;
    std::string before_path;
    std::string after_path;
    std::string format_name = "json";
    std::string backend_name = "rules";
    std::string timestamp;
    double alpha = 0.5;
    double beta = 0.5;
    double sla = 99.5;
    double gate = 100.0;
    std::size_t tests = 100;
    std::uint64_t seed = 42;

    CLI::App* analyze = app.add_subcommand("analyze", "Build the dependency graph");
    analyze->add_option("src", source_path, "COBOL source file")->required();
    analyze->add_option("--dot", dot_path, "write graph in DOT form");
    analyze->add_option("--json", json_path, "write graph, matrix and metrics JSON");

    CLI::App* transform =
        app.add_subcommand("transform", "Lower to the modern IR and select");
    transform->add_option("src", source_path, "COBOL source file")->required();
    transform->add_option("--alpha", alpha, "structural deviation weight");
    transform->add_option("--beta", beta, "performance deviation weight");
    transform->add_option("--backend", backend_name, "rules or external")
        ->check(CLI::IsMember({"rules", "external"}));
    transform->add_option("-o,--output", out_path, "IR output file");
    transform->add_option("--tests", tests, "differential test count");
    transform->add_option("--seed", seed, "test generator seed");
    transform->add_option("--gate", gate, "accuracy gate percentage");
    transform->add_option("--report", report_path, "write run report JSON");
    transform->add_option("--timestamp", timestamp, "report timestamp override");

    CLI::App* verify = app.add_subcommand("verify", "Differential-test an IR file");
    verify->add_option("src", source_path, "COBOL source file")->required();
    verify->add_option("mir", mir_path, "IR file to verify")->required();
    verify->add_option("--tests", tests, "differential test count");
    verify->add_option("--seed", seed, "test generator seed");
    verify->add_option("--gate", gate, "accuracy gate percentage");

    CLI::App* migrate = app.add_subcommand("migrate", "Validate and move records");
    migrate->add_option("--layout", layout_path, "record layout file")->required();
    migrate->add_option("--input", input_path, "fixed-width data file")->required();
    migrate->add_option("--output", output_path, "sink file (.csv or .jsonl)")
        ->required();
    migrate->add_option("--nodes", nodes_text, "id:efficiency:capacity[,...]");
    migrate->add_option("--sla", sla, "uptime threshold percentage");
    migrate->add_option("--json", json_path, "write stats JSON");

    CLI::App* report = app.add_subcommand("report", "Pair metric files");
    report->add_option("--before", before_path, "baseline metrics JSON")->required();
    report->add_option("--after", after_path, "modernized metrics JSON")->required();
    report->add_option("--format", format_name, "json, markdown or csv")
        ->check(CLI::IsMember({"json", "markdown", "csv"}));
    report->add_option("-o,--output", out_path, "report output file");
    report->add_option("--timestamp", timestamp, "report timestamp override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            return run_analyze(source_path, dot_path, json_path);
        }
        if (transform->parsed()) {
            mfmod::RunConfig config;
            config.source_path = source_path;
            config.alpha = alpha;
            config.beta = beta;
            config.test_count = tests;
            config.seed = seed;
            config.backend = backend_name == "external"
                                 ? mfmod::BackendKind::external
                                 : mfmod::BackendKind::rules;
            config.accuracy_gate = gate;
            config.timestamp = timestamp.empty() ? utc_now_text() : timestamp;
            return run_transform(std::move(config), out_path, report_path);
        }
        if (verify->parsed()) {
            return run_verify(source_path, mir_path, tests, seed, gate);
        }
        if (migrate->parsed()) {
            mfmod::MigrationConfig config;
            config.layout_path = layout_path;
            config.input_path = input_path;
            config.output_path = output_path;
            if (!nodes_text.empty()) {
                config.nodes = mfmod::parse_node_specs(nodes_text);
            }
            config.sla_threshold = sla;
            return run_migrate(config, json_path);
        }
        if (report->parsed()) {
            return run_report(before_path, after_path, format_name, out_path,
                              timestamp.empty() ? utc_now_text() : timestamp);
        }
    } catch (const mfmod::DiagnosticsError& failure) {
        std::cerr << failure.what();
        return kExitDiagnostics;
    } catch (const mfmod::GateError& failure) {
        std::cerr << failure.what() << "\n";
        return kExitGate;
    } catch (const mfmod::BackendError& failure) {
        std::cerr << failure.code() << ": " << failure.what() << "\n";
        return kExitIo;
    } catch (const mfmod::IoError& failure) {
        std::cerr << failure.code() << ": " << failure.what() << "\n";
        return kExitIo;
    } catch (const mfmod::Error& failure) {
        std::cerr << failure.code() << ": " << failure.what() << "\n";
        return kExitDiagnostics;
    }
    return kExitOk;
}
