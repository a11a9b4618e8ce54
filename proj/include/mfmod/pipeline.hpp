#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfmod/backend.hpp"
#include "mfmod/depgraph.hpp"
#include "mfmod/errors.hpp"
#include "mfmod/migrate.hpp"
#include "mfmod/report.hpp"
#include "mfmod/transform.hpp"
#include "mfmod/verify.hpp"

namespace mfmod {

// Input rejected with diagnostics; maps to exit code 1.
class DiagnosticsError : public Error {
  public:
    DiagnosticsError(std::vector<Diagnostic> diagnostics, const std::string& rendered)
        : Error("diagnostics", rendered), diagnostics_(std::move(diagnostics)) {}

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  private:
    std::vector<Diagnostic> diagnostics_;
};

// No candidate met the accuracy gate; maps to exit code 2.
class GateError : public Error {
  public:
    explicit GateError(const std::string& message)
        : Error("verification-gate", message) {}
};

enum class BackendKind { rules, external };

struct RunConfig {
    std::string source_path;
    double alpha = 0.5;
    double beta = 0.5;
    std::size_t test_count = 100;
    std::uint64_t seed = 42;
    BackendKind backend = BackendKind::rules;
    std::optional<BackendEndpoint> endpoint; // external backend only
    double accuracy_gate = 100.0;            // candidates below it are rejected

    // Migration stage, run when all three paths are present.
    std::optional<std::string> layout_path;
    std::optional<std::string> input_path;
    std::optional<std::string> output_path;
    std::vector<NodeSpec> nodes; // empty means one ample local node
    double sla_threshold = 99.5;

    std::string timestamp; // copied into the report verbatim
};

struct MigrationConfig {
    std::string layout_path;
    std::string input_path;
    std::string output_path; // .jsonl selects JSON lines, anything else CSV
    std::vector<NodeSpec> nodes; // empty means one ample local node
    double sla_threshold = 99.5;
};

struct MigrationOutcome {
    IntegrityCounts integrity;
    SchedulePlan plan;
    MigrationStats stats;
    SlaReport sla;
};

// Layout -> records -> profile -> schedule -> transfer -> monitor. Health
// samples are synthesized from the simulation, one per completed task.
MigrationOutcome run_migration_stage(const MigrationConfig& config);

struct PipelineOutcome {
    Report report;
    DependencyGraph graph;
    GraphMetrics metrics;
    std::vector<TransformCandidate> candidates;
    std::vector<DeviationScores> scores;           // one per candidate
    std::vector<VerificationReport> verifications; // one per candidate
    std::size_t selected = 0;
    std::string mir_text; // rendered selected candidate
    std::optional<MigrationOutcome> migration;
};

// parse -> validate -> graph -> lower/backend -> tests -> verify -> score ->
// select -> optional migrate. Fails fast: DiagnosticsError on rejected input,
// GateError when no candidate passes the gate, BackendError and IoError pass
// through from their stages.
PipelineOutcome run_pipeline(const RunConfig& config);

// Batching defaults for the migration stage.
inline constexpr std::size_t kBatchRecords = 1000;
inline constexpr double kSecondsPerByte = 1e-6;

std::string read_text_file(const std::string& path);  // IoError
void write_text_file(const std::string& path, const std::string& text);

// Splits on newlines, tolerating one trailing carriage return per line and
// ignoring a final empty line.
std::vector<std::string> split_lines(const std::string& text);

} // namespace mfmod
