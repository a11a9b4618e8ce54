"""End-to-end checks of the mfmod command line interface.

The binary under test comes from the MFMOD_CLI environment variable; a build
tree default is used when it is unset.
"""

import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

TESTS_DIR = Path(__file__).resolve().parents[1]
REPO_ROOT = TESTS_DIR.parent

CLI = os.environ.get("MFMOD_CLI", str(REPO_ROOT / "build" / "tools" / "mfmod"))

PAYROLL = TESTS_DIR / "corpus" / "payroll.cbl"
METRICS_BEFORE = TESTS_DIR / "data" / "metrics_before.json"
METRICS_AFTER = TESTS_DIR / "data" / "metrics_after.json"
REPORT_SCHEMA = REPO_ROOT / "docs" / "report.schema.json"

LAYOUT_TEXT = "01 REC-ID PIC 9(6).\n01 AMOUNT PIC S9(5)V99.\n01 TAG PIC X(4).\n"


def run_cli(*args, env_extra=None):
    env = {k: v for k, v in os.environ.items() if not k.startswith("MFMOD_BACKEND")}
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [CLI, *args], capture_output=True, text=True, timeout=120, env=env
    )


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture()
def record_files(tmp_path):
    layout = write(tmp_path / "layout.cbl", LAYOUT_TEXT)
    lines = []
    for i in range(40):
        lines.append(f"{i:06d}+{100 + i:07d}GOOD")
    lines.append("short")  # one quarantined record
    data = write(tmp_path / "records.dat", "\n".join(lines) + "\n")
    return layout, data


def test_analyze_prints_the_graph_shape(tmp_path):
    dot_path = tmp_path / "graph.dot"
    json_path = tmp_path / "graph.json"
    result = run_cli(
        "analyze", str(PAYROLL), "--dot", str(dot_path), "--json", str(json_path)
    )
    assert result.returncode == 0, result.stderr
    assert "program PAYROLL" in result.stdout
    assert "5 paragraphs" in result.stdout
    assert "acyclic" in result.stdout

    dot = dot_path.read_text()
    assert dot.startswith("digraph dependencies {")
    assert '[label="control"];' in dot

    bundle = json.loads(json_path.read_text())
    assert set(bundle) == {"graph", "matrix", "metrics"}
    assert bundle["metrics"]["vertex_count"] == 5
    order = bundle["matrix"]["order"]
    assert len(bundle["matrix"]["cells"]) == len(order)


def test_analyze_missing_file_is_an_io_failure():
    result = run_cli("analyze", "/nonexistent/prog.cbl")
    assert result.returncode == 3
    assert result.stderr.strip()


def test_analyze_rejects_bad_source(tmp_path):
    bad = write(tmp_path / "bad.cbl", "IDENTIFICATION DIVISION.\nGO TO NOWHERE.\n")
    result = run_cli("analyze", bad)
    assert result.returncode == 1
    assert "bad.cbl" in result.stderr


def test_transform_emits_ir_and_a_schema_valid_report(tmp_path):
    mir_path = tmp_path / "payroll.mir"
    report_path = tmp_path / "report.json"
    result = run_cli(
        "transform",
        str(PAYROLL),
        "--alpha",
        "0.5",
        "--beta",
        "0.5",
        "-o",
        str(mir_path),
        "--report",
        str(report_path),
        "--timestamp",
        "2026-01-01T00:00:00Z",
    )
    assert result.returncode == 0, result.stderr
    assert "A_i = 100" in result.stderr

    mir_text = mir_path.read_text()
    assert mir_text.startswith("unit PAYROLL;")
    assert "fn main()" in mir_text

    report = json.loads(report_path.read_text())
    schema = json.loads(REPORT_SCHEMA.read_text())
    jsonschema.validate(report, schema)
    assert report["tool_version"] == "0.1.0"
    assert report["verification"]["accuracy_index"] == 100.0
    assert report["timestamp"] == "2026-01-01T00:00:00Z"

    # a second run with the same inputs is byte-identical
    report_path2 = tmp_path / "report2.json"
    rerun = run_cli(
        "transform",
        str(PAYROLL),
        "-o",
        str(tmp_path / "payroll2.mir"),
        "--report",
        str(report_path2),
        "--timestamp",
        "2026-01-01T00:00:00Z",
    )
    assert rerun.returncode == 0
    assert report_path2.read_text() == report_path.read_text()
    assert (tmp_path / "payroll2.mir").read_text() == mir_text


def test_transform_stdout_holds_the_unit():
    result = run_cli("transform", str(PAYROLL))
    assert result.returncode == 0
    assert result.stdout.startswith("unit PAYROLL;")


def test_transform_rejects_bad_weights():
    result = run_cli("transform", str(PAYROLL), "--alpha", "0.9", "--beta", "0.9")
    assert result.returncode == 1
    assert "bad-weights" in result.stderr


def test_verify_passes_the_emitted_unit_and_gates_a_tampered_one(tmp_path):
    mir_path = tmp_path / "payroll.mir"
    assert run_cli("transform", str(PAYROLL), "-o", str(mir_path)).returncode == 0

    good = run_cli("verify", str(PAYROLL), str(mir_path))
    assert good.returncode == 0, good.stderr
    assert "A_i = 100 (100/100 cases)" in good.stdout

    tampered_path = tmp_path / "tampered.mir"
    tampered_path.write_text(mir_path.read_text().replace("= 0.15;", "= 0.16;"))
    bad = run_cli("verify", str(PAYROLL), str(tampered_path))
    assert bad.returncode == 2
    assert "diverged" in bad.stdout
    assert "below the gate" in bad.stderr


def test_verify_reports_ir_diagnostics(tmp_path):
    mangled = write(tmp_path / "broken.mir", "unit ;;; nope\n")
    result = run_cli("verify", str(PAYROLL), mangled)
    assert result.returncode == 1
    assert "broken.mir" in result.stderr


def test_verify_missing_ir_file_is_an_io_failure():
    result = run_cli("verify", str(PAYROLL), "/nonexistent/unit.mir")
    assert result.returncode == 3


def test_migrate_moves_records_and_writes_the_bundle(tmp_path, record_files):
    layout, data = record_files
    out_path = tmp_path / "out.csv"
    json_path = tmp_path / "stats.json"
    result = run_cli(
        "migrate",
        "--layout",
        layout,
        "--input",
        data,
        "--output",
        str(out_path),
        "--json",
        str(json_path),
    )
    assert result.returncode == 0, result.stderr
    assert "records: 41 in, 40 out, 1 quarantined" in result.stdout
    assert "integrity I_d = " in result.stdout
    assert "E_m = " in result.stdout

    csv_lines = out_path.read_text().splitlines()
    assert csv_lines[0] == "REC-ID,AMOUNT,TAG"
    assert len(csv_lines) == 41  # header plus forty records

    bundle = json.loads(json_path.read_text())
    assert set(bundle) == {"integrity", "stats", "sla", "objective"}
    assert bundle["stats"]["records_in"] == 41
    assert bundle["stats"]["records_out"] == 40
    assert bundle["stats"]["quarantined"] == 1
    assert bundle["integrity"]["invalid_by_reason"] == {"bad-length": 1}
    assert bundle["sla"]["uptime"] == 100.0


def test_migrate_jsonl_sink(tmp_path, record_files):
    layout, data = record_files
    out_path = tmp_path / "out.jsonl"
    result = run_cli(
        "migrate", "--layout", layout, "--input", data, "--output", str(out_path)
    )
    assert result.returncode == 0
    rows = [json.loads(line) for line in out_path.read_text().splitlines()]
    assert len(rows) == 40
    # the amount picture carries two implied decimals: +0000100 is 1.00
    assert rows[0] == {"REC-ID": 0, "AMOUNT": 1, "TAG": "GOOD"}
    assert rows[1] == {"REC-ID": 1, "AMOUNT": 1.01, "TAG": "GOOD"}


def test_migrate_capacity_shortfall_is_rejected(tmp_path, record_files):
    layout, data = record_files
    result = run_cli(
        "migrate",
        "--layout",
        layout,
        "--input",
        data,
        "--output",
        str(tmp_path / "out.csv"),
        "--nodes",
        "tiny:1.0:10",
    )
    assert result.returncode == 1
    assert result.stderr.strip()


def test_migrate_malformed_nodes_are_rejected(tmp_path, record_files):
    layout, data = record_files
    result = run_cli(
        "migrate",
        "--layout",
        layout,
        "--input",
        data,
        "--output",
        str(tmp_path / "out.csv"),
        "--nodes",
        "a:fast:10",
    )
    assert result.returncode == 1
    assert "bad-nodes" in result.stderr


def test_report_formats(tmp_path):
    json_run = run_cli(
        "report", "--before", str(METRICS_BEFORE), "--after", str(METRICS_AFTER)
    )
    assert json_run.returncode == 0
    report = json.loads(json_run.stdout)
    improvements = {m["name"]: m["improvement"] for m in report["metrics"]}
    assert improvements == {
        "batch-runtime-mins": 42.8,
        "throughput-per-hour": 50.0,
        "manual-steps": 21.7,
        "output-accuracy-pct": 2.7,
    }

    markdown = run_cli(
        "report",
        "--before",
        str(METRICS_BEFORE),
        "--after",
        str(METRICS_AFTER),
        "--format",
        "markdown",
    )
    assert markdown.returncode == 0
    assert "## metrics" in markdown.stdout
    assert "| batch-runtime-mins | 280.0 | 160.0 | lower-better | 42.8 |" in (
        markdown.stdout
    )

    csv = run_cli(
        "report",
        "--before",
        str(METRICS_BEFORE),
        "--after",
        str(METRICS_AFTER),
        "--format",
        "csv",
    )
    assert csv.returncode == 0
    assert csv.stdout.splitlines() == [
        "name,before,after,improvement",
        "batch-runtime-mins,280.0,160.0,42.8",
        "throughput-per-hour,450.0,675.0,50.0",
        "manual-steps,78.0,61.0,21.7",
        "output-accuracy-pct,96.8,99.5,2.7",
    ]


def test_report_direction_disagreement_is_rejected(tmp_path):
    before = write(
        tmp_path / "before.json",
        json.dumps({"m": {"value": 10, "direction": "lower-better"}}),
    )
    after = write(
        tmp_path / "after.json",
        json.dumps({"m": {"value": 5, "direction": "higher-better"}}),
    )
    result = run_cli("report", "--before", before, "--after", after)
    assert result.returncode == 1
    assert "bad-metric" in result.stderr


def test_external_backend_without_a_url_fails_cleanly():
    result = run_cli("transform", str(PAYROLL), "--backend", "external")
    assert result.returncode == 3
    assert "backend-unavailable" in result.stderr
