#include <filesystem>
#include <fstream>
#include <string>

#include "helpers.hpp"

#include "mfmod/errors.hpp"
#include "mfmod/pipeline.hpp"

using namespace mfmod;

namespace {

std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        std::filesystem::path path =
            std::filesystem::temp_directory_path() / "mfmod-pipeline-tests";
        std::filesystem::create_directories(path);
        return path;
    }();
    return dir;
}

std::string scratch_file(const std::string& name, const std::string& text) {
    const std::filesystem::path path = scratch_dir() / name;
    write_text_file(path.string(), text);
    return path.string();
}

const char* kLayoutText =
    "01 REC-ID PIC 9(6).\n"
    "01 AMOUNT PIC S9(5)V99.\n"
    "01 TAG PIC X(4).\n";

std::string record_lines(std::size_t valid, std::size_t invalid) {
    std::string text;
    for (std::size_t i = 0; i < valid; ++i) {
        std::string id = std::to_string(i);
        text += std::string(6 - id.size(), '0') + id + "+0000100" + "GOOD\n";
    }
    for (std::size_t i = 0; i < invalid; ++i)
        text += "short\n";
    return text;
}

} // namespace

TEST_CASE("line splitting tolerates dos endings and trailing newlines") {
    CHECK(split_lines("").empty());
    CHECK(split_lines("a\nb") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("a\nb\n") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("a\r\nb\r\n") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("a\n\nb") == std::vector<std::string>{"a", "", "b"});
    CHECK(split_lines("\n") == std::vector<std::string>{""});
}

TEST_CASE("text files round-trip and failures carry io codes") {
    const std::string path = scratch_file("roundtrip.txt", "alpha\nbeta\n");
    CHECK(read_text_file(path) == "alpha\nbeta\n");

    CHECK_THROWS_AS(read_text_file((scratch_dir() / "absent.txt").string()),
                    IoError);
    CHECK_THROWS_AS(write_text_file(
                        (scratch_dir() / "no-such-dir" / "file.txt").string(),
                        "x"),
                    IoError);
}

TEST_CASE("batching defaults stay frozen") {
    CHECK(kBatchRecords == 1000);
    CHECK(kSecondsPerByte == 1e-6);
}

TEST_CASE("the rules pipeline produces a coherent, deterministic outcome") {
    RunConfig config;
    config.source_path = testutil::corpus_path("payroll");
    config.test_count = 50;
    config.seed = 42;
    config.timestamp = "2026-01-01T00:00:00Z";

    PipelineOutcome outcome = run_pipeline(config);

    CHECK(outcome.candidates.size() == 2); // baseline and the loop rewrite
    CHECK(outcome.scores.size() == outcome.candidates.size());
    CHECK(outcome.verifications.size() == outcome.candidates.size());
    REQUIRE(outcome.selected < outcome.candidates.size());
    CHECK(outcome.mir_text == render(outcome.candidates[outcome.selected].ir));

    // every rule-engine candidate of this program is exact
    for (const auto& verification : outcome.verifications)
        CHECK(verification.accuracy_index == 100.0);

    REQUIRE(outcome.report.graph.has_value());
    CHECK(outcome.report.graph->vertex_count == outcome.metrics.vertex_count);
    CHECK(outcome.report.graph->edge_count == outcome.metrics.edge_count);
    REQUIRE(outcome.report.verification.has_value());
    CHECK(outcome.report.verification->accuracy_index == 100.0);
    CHECK(outcome.report.verification->mismatch_count == 0);
    REQUIRE(outcome.report.scores.has_value());
    CHECK(outcome.report.scores->e_trans ==
          outcome.scores[outcome.selected].e_trans);
    CHECK(outcome.report.timestamp == "2026-01-01T00:00:00Z");
    CHECK_FALSE(outcome.report.migration.has_value());

    // a second run with the same inputs is byte-identical
    PipelineOutcome again = run_pipeline(config);
    CHECK(report_to_json(again.report).dump() ==
          report_to_json(outcome.report).dump());
    CHECK(again.mir_text == outcome.mir_text);
    CHECK(again.selected == outcome.selected);
}

TEST_CASE("pipeline failures map onto their error kinds") {
    RunConfig config;
    config.source_path = testutil::corpus_path("payroll");

    SUBCASE("weights must form a convex pair") {
        config.alpha = 0.7;
        config.beta = 0.7;
        try {
            run_pipeline(config);
            FAIL("accepted non-convex weights");
        } catch (const Error& error) {
            CHECK(error.code() == "bad-weights");
        }
    }
    SUBCASE("missing source file") {
        config.source_path = (scratch_dir() / "nowhere.cbl").string();
        CHECK_THROWS_AS(run_pipeline(config), IoError);
    }
    SUBCASE("unparseable source") {
        config.source_path = scratch_file("broken.cbl", "PROCEDURE DIVISION?\n");
        try {
            run_pipeline(config);
            FAIL("accepted a broken program");
        } catch (const DiagnosticsError& error) {
            CHECK(error.code() == "diagnostics");
            CHECK_FALSE(error.diagnostics().empty());
            CHECK(error.what() != std::string{});
        }
    }
    SUBCASE("source that parses but does not validate") {
        config.source_path = scratch_file(
            "undef.cbl",
            "IDENTIFICATION DIVISION.\nPROGRAM-ID. UNDEF.\n"
            "PROCEDURE DIVISION.\nMAIN-PARA.\n    PERFORM GHOST-PARA.\n");
        CHECK_THROWS_AS(run_pipeline(config), DiagnosticsError);
    }
    SUBCASE("an unreachable accuracy gate") {
        config.accuracy_gate = 100.5;
        try {
            run_pipeline(config);
            FAIL("passed an impossible gate");
        } catch (const GateError& error) {
            CHECK(error.code() == "verification-gate");
            CHECK(std::string(error.what()).find("accuracy gate") !=
                  std::string::npos);
        }
    }
}

TEST_CASE("the migration stage runs layout to sla in one call") {
    MigrationConfig config;
    config.layout_path = scratch_file("layout.cbl", kLayoutText);
    config.input_path = scratch_file("records.dat", record_lines(25, 5));
    config.output_path = (scratch_dir() / "out.csv").string();

    MigrationOutcome outcome = run_migration_stage(config);

    CHECK(outcome.integrity.total == 30);
    CHECK(outcome.integrity.valid == 25);
    CHECK(outcome.integrity.invalid_by_reason.at("bad-length") == 5);

    // 25 records of 18 bytes fit one batch on the implied local node
    REQUIRE(outcome.plan.tasks.size() == 1);
    CHECK(outcome.plan.tasks[0].payload_bytes == 450);
    REQUIRE(outcome.plan.nodes.size() == 1);
    CHECK(outcome.plan.nodes[0].id == "local");
    CHECK(outcome.plan.nodes[0].capacity_bytes == 450);

    CHECK(outcome.stats.records_in == 30);
    CHECK(outcome.stats.records_out == 25);
    CHECK(outcome.stats.quarantined == 5);
    CHECK(outcome.stats.records_out + outcome.stats.quarantined ==
          outcome.stats.records_in);

    CHECK(outcome.sla.uptime == 100.0);
    CHECK(outcome.sla.breaches.empty());

    const std::string csv = read_text_file(config.output_path);
    CHECK(csv.rfind("REC-ID,AMOUNT,TAG\n", 0) == 0);
    CHECK(split_lines(csv).size() == 26); // header plus one line per record
}

TEST_CASE("the sink format follows the output extension") {
    MigrationConfig config;
    config.layout_path = scratch_file("layout2.cbl", kLayoutText);
    config.input_path = scratch_file("records2.dat", record_lines(3, 0));
    config.output_path = (scratch_dir() / "out.jsonl").string();

    run_migration_stage(config);
    const std::vector<std::string> lines =
        split_lines(read_text_file(config.output_path));
    REQUIRE(lines.size() == 3);
    for (const auto& line : lines) {
        const nlohmann::json row = nlohmann::json::parse(line);
        CHECK(row["TAG"] == "GOOD");
        CHECK(row["AMOUNT"] == 1.0);
    }
}

TEST_CASE("a stream with no valid records still migrates cleanly") {
    MigrationConfig config;
    config.layout_path = scratch_file("layout3.cbl", kLayoutText);
    config.input_path = scratch_file("records3.dat", "garbage\n");
    config.output_path = (scratch_dir() / "out3.csv").string();

    MigrationOutcome outcome = run_migration_stage(config);
    CHECK(outcome.stats.records_in == 1);
    CHECK(outcome.stats.records_out == 0);
    CHECK(outcome.stats.quarantined == 1);
    CHECK(outcome.stats.bytes_transferred == 0);
    CHECK(outcome.sla.uptime == 100.0); // synthesized heartbeat sample
}

TEST_CASE("a bad layout rejects the migration with diagnostics") {
    MigrationConfig config;
    config.layout_path = scratch_file("layout4.cbl", "01 BROKEN PIC 9(19).\n");
    config.input_path = scratch_file("records4.dat", "");
    config.output_path = (scratch_dir() / "out4.csv").string();
    CHECK_THROWS_AS(run_migration_stage(config), DiagnosticsError);
}

TEST_CASE("a full run wires the migration summary into the report") {
    RunConfig config;
    config.source_path = testutil::corpus_path("queue");
    config.test_count = 20;
    config.seed = 42;
    config.timestamp = "t";
    config.layout_path = scratch_file("layout5.cbl", kLayoutText);
    config.input_path = scratch_file("records5.dat", record_lines(10, 2));
    config.output_path = (scratch_dir() / "out5.csv").string();

    PipelineOutcome outcome = run_pipeline(config);
    REQUIRE(outcome.migration.has_value());
    REQUIRE(outcome.report.migration.has_value());
    CHECK(outcome.report.migration->integrity ==
          outcome.migration->integrity.integrity);
    CHECK(outcome.report.migration->efficiency ==
          outcome.migration->stats.efficiency);
    CHECK(outcome.report.migration->objective ==
          outcome.migration->plan.objective);
    CHECK(outcome.report.migration->integrity == 100.0 * 10.0 / 12.0);
}
