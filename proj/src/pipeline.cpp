#include "mfmod/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "mfmod/parser.hpp"
#include "mfmod/validate.hpp"

namespace mfmod {

std::string read_text_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    if (stream.bad()) {
        throw IoError("cannot read " + path);
    }
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) {
        throw IoError("cannot open " + path + " for writing");
    }
    stream << text;
    stream.flush();
    if (!stream.good()) {
        throw IoError("cannot write " + path);
    }
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            if (start < text.size()) {
                lines.push_back(text.substr(start));
            }
            break;
        }
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

namespace {

std::string render_diagnostics(const SourceUnit& unit,
                               const std::vector<Diagnostic>& diagnostics) {
    std::string rendered;
    for (const auto& diagnostic : diagnostics) {
        rendered += format_diagnostic(unit, diagnostic);
        rendered += '\n';
    }
    return rendered;
}

[[noreturn]] void reject(const SourceUnit& unit,
                         std::vector<Diagnostic> diagnostics) {
    std::string rendered = render_diagnostics(unit, diagnostics);
    throw DiagnosticsError(std::move(diagnostics), rendered);
}

} // namespace

MigrationOutcome run_migration_stage(const MigrationConfig& config) {
    const std::string layout_text = read_text_file(config.layout_path);
    SourceUnit layout_unit(config.layout_path, layout_text);
    LayoutParseResult layout_result = parse_layout(layout_unit);
    if (!layout_result.layout.has_value()) {
        reject(layout_unit, std::move(layout_result.diagnostics));
    }
    const RecordLayout& layout = *layout_result.layout;

    const std::vector<std::string> lines =
        split_lines(read_text_file(config.input_path));
    const ParsedRecords records = parse_records(lines, layout);

    MigrationOutcome outcome;
    outcome.integrity = profile(records, layout);

    const std::vector<TransferTask> tasks = make_tasks(
        records.valid.size(), layout.record_width, kBatchRecords, kSecondsPerByte);
    std::vector<NodeSpec> nodes = config.nodes;
    if (nodes.empty()) {
        std::uint64_t total_payload = 0;
        for (const auto& task : tasks) {
            total_payload += task.payload_bytes;
        }
        nodes.push_back({"local", 1.0, total_payload});
    }
    outcome.plan = schedule(tasks, nodes);

    const bool jsonl =
        config.output_path.size() >= 6 &&
        config.output_path.compare(config.output_path.size() - 6, 6, ".jsonl") == 0;
    std::ofstream sink(config.output_path, std::ios::binary);
    if (!sink) {
        throw IoError("cannot open " + config.output_path + " for writing");
    }
    outcome.stats = transfer(records.valid, layout, outcome.plan,
                             jsonl ? SinkFormat::jsonl : SinkFormat::csv, sink,
                             records.invalid.size());

    // Health samples come from the simulation itself: one per completed
    // task in event order, reporting that task's effective throughput.
    std::vector<MonitorSample> samples;
    const SchedulePlan& plan = outcome.plan;
    for (std::size_t n = 0; n < plan.nodes.size(); ++n) {
        for (std::size_t t = 0; t < plan.tasks.size(); ++t) {
            if (plan.assignment[t] != n) {
                continue;
            }
            const double seconds = static_cast<double>(plan.tasks[t].payload_bytes) *
                                   plan.tasks[t].seconds_per_byte /
                                   plan.nodes[n].efficiency;
            MonitorSample sample;
            sample.tick = samples.size();
            sample.node_id = plan.nodes[n].id;
            sample.up = true;
            sample.bandwidth =
                seconds > 0.0
                    ? static_cast<double>(plan.tasks[t].payload_bytes) / seconds
                    : 0.0;
            samples.push_back(std::move(sample));
        }
    }
    if (samples.empty()) {
        samples.push_back({0, nodes.front().id, true, 0.0});
    }
    outcome.sla = monitor(samples, config.sla_threshold);
    return outcome;
}

PipelineOutcome run_pipeline(const RunConfig& config) {
    const TransformWeights weights = make_weights(config.alpha, config.beta);

    const std::string source_text = read_text_file(config.source_path);
    SourceUnit unit(config.source_path, source_text);
    ParseResult parsed = parse(unit);
    if (!parsed.program.has_value()) {
        reject(unit, std::move(parsed.diagnostics));
    }
    const Program& program = *parsed.program;
    std::vector<Diagnostic> issues = validate(program);
    if (has_errors(issues)) {
        reject(unit, std::move(issues));
    }

    PipelineOutcome outcome;
    outcome.graph = build_graph(program);
    outcome.metrics = analyze(outcome.graph);

    if (config.backend == BackendKind::external) {
        BackendEndpoint endpoint;
        if (config.endpoint.has_value()) {
            endpoint = *config.endpoint;
        } else if (auto from_env = backend_from_env()) {
            endpoint = *from_env;
        } else {
            throw BackendError("backend-unavailable",
                               "external backend selected but MFMOD_BACKEND_URL "
                               "is not set");
        }
        TransformCandidate candidate;
        candidate.ir = request_backend_transform(endpoint, source_text, outcome.graph);
        candidate.provenance = Provenance::external_backend;
        outcome.candidates.push_back(std::move(candidate));
    } else {
        outcome.candidates = lower(program);
    }

    const std::vector<TestCase> tests =
        generate_tests(program, config.test_count, config.seed);

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < outcome.candidates.size(); ++i) {
        outcome.verifications.push_back(
            verify_candidate(program, outcome.candidates[i].ir, tests));
        outcome.scores.push_back(
            score_candidate(outcome.candidates[i], program, weights, tests));
        if (outcome.verifications[i].accuracy_index >= config.accuracy_gate) {
            eligible.push_back(i);
        }
    }
    if (eligible.empty()) {
        std::ostringstream message;
        message << "no candidate reached the accuracy gate of "
                << config.accuracy_gate << ";";
        for (std::size_t i = 0; i < outcome.verifications.size(); ++i) {
            message << " candidate " << i << " scored "
                    << outcome.verifications[i].accuracy_index;
        }
        throw GateError(message.str());
    }

    std::vector<TransformCandidate> eligible_candidates;
    std::vector<DeviationScores> eligible_scores;
    for (const std::size_t index : eligible) {
        eligible_candidates.push_back(outcome.candidates[index]);
        eligible_scores.push_back(outcome.scores[index]);
    }
    outcome.selected = eligible[select(eligible_candidates, eligible_scores)];
    outcome.mir_text = render(outcome.candidates[outcome.selected].ir);

    outcome.report.graph =
        GraphSummary{outcome.metrics.vertex_count, outcome.metrics.edge_count,
                     outcome.metrics.has_cycle};
    outcome.report.scores = outcome.scores[outcome.selected];
    outcome.report.verification = VerificationSummary{
        outcome.verifications[outcome.selected].accuracy_index,
        outcome.verifications[outcome.selected].mismatches.size()};
    outcome.report.timestamp = config.timestamp;

    if (config.layout_path.has_value() && config.input_path.has_value() &&
        config.output_path.has_value()) {
        MigrationConfig migration{*config.layout_path, *config.input_path,
                                  *config.output_path, config.nodes,
                                  config.sla_threshold};
        outcome.migration = run_migration_stage(migration);
        outcome.report.migration = MigrationSummary{
            outcome.migration->integrity.integrity,
            outcome.migration->stats.efficiency, outcome.migration->plan.objective};
    }
    return outcome;
}

} // namespace mfmod
