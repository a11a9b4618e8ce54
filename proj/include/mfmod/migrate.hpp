#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfmod/ast.hpp"
#include "mfmod/decimal.hpp"
#include "mfmod/mir.hpp"
#include "mfmod/picture.hpp"

namespace mfmod {

struct LayoutField {
    std::string name;
    PictureSpec picture;
    std::size_t offset = 0; // byte offset within the record
    std::size_t width = 0;  // byte width; signed numerics carry a sign byte
};

struct RecordLayout {
    std::vector<LayoutField> fields; // declaration order, tiling the record
    std::size_t record_width = 0;
    std::optional<std::string> key_field; // duplicate-detection key
};

// Offsets follow declaration order. When no key is given the leading field
// acts as the record key.
RecordLayout layout_from_items(const std::vector<DataItem>& items,
                               std::optional<std::string> key_field = std::nullopt);

struct LayoutParseResult {
    std::optional<RecordLayout> layout; // set iff no error diagnostics
    std::vector<Diagnostic> diagnostics;
};

// Parses a DATA DIVISION fragment (headers optional) into a layout.
LayoutParseResult parse_layout(const SourceUnit& source,
                               std::optional<std::string> key_field = std::nullopt);

struct FieldValue {
    bool is_numeric = false;
    Decimal number;   // numeric fields
    std::string text; // alphanumeric fields, fixed width

    bool operator==(const FieldValue&) const = default;
};

struct Record {
    std::vector<FieldValue> values; // one per layout field
};

struct InvalidRecord {
    std::size_t line_number = 0; // 1-based input line
    std::string reason;          // bad-length | bad-numeric | bad-char
};

struct ParsedRecords {
    std::vector<Record> valid;
    std::vector<InvalidRecord> invalid;
};

ParsedRecords parse_records(const std::vector<std::string>& lines,
                            const RecordLayout& layout);

struct IntegrityCounts {
    std::size_t total = 0;
    std::size_t valid = 0;
    std::map<std::string, std::size_t> invalid_by_reason;
    std::size_t duplicates = 0; // occurrences beyond the first per key
    double integrity = 100.0;   // valid / total * 100; empty input counts clean
};

IntegrityCounts profile(const ParsedRecords& records, const RecordLayout& layout);

struct SchemaColumn {
    std::string name;
    MirType type;
};

// Target schema in declaration order. Throws UnsupportedPictureError when a
// picture falls outside the mappable subset.
std::vector<SchemaColumn> map_schema(const RecordLayout& layout);

struct TransferTask {
    std::size_t id = 0;
    std::uint64_t payload_bytes = 0; // c_i
    double seconds_per_byte = 0.0;   // T_i at unit efficiency
};

struct NodeSpec {
    std::string id;
    double efficiency = 1.0;          // P_i > 0
    std::uint64_t capacity_bytes = 0; // assignment budget
};

struct SchedulePlan {
    std::vector<TransferTask> tasks;
    std::vector<NodeSpec> nodes;
    std::vector<std::size_t> assignment; // task index -> node index
    double objective = 0.0;              // total node-seconds
};

// Greedy assignment: tasks by payload seconds descending, each placed on the
// feasible node with the lowest incremental node-seconds, ties to the lowest
// node index. Throws InfeasibleError on capacity shortfall.
SchedulePlan schedule(const std::vector<TransferTask>& tasks,
                      const std::vector<NodeSpec>& nodes);

// Slices a record stream into batch tasks of at most batch_records records.
std::vector<TransferTask> make_tasks(std::size_t record_count,
                                     std::size_t record_width,
                                     std::size_t batch_records,
                                     double seconds_per_byte);

enum class SinkFormat { csv, jsonl };

struct MigrationStats {
    std::uint64_t bytes_transferred = 0; // emitted record bytes
    double compute_seconds = 0.0;        // simulated makespan
    double resource_units = 0.0;         // engaged nodes, one unit each
    double efficiency = 0.0;             // bytes per second per unit
    std::size_t records_in = 0;
    std::size_t records_out = 0;
    std::size_t quarantined = 0;

    bool operator==(const MigrationStats&) const = default;
};

// Simulates the plan on a deterministic clock (nodes in id order, each
// processing its tasks sequentially) while emitting the records to the sink.
// `quarantined` is the upstream invalid-record count, carried through for
// the conservation invariant. Throws IoError when the sink write fails.
MigrationStats transfer(const std::vector<Record>& records,
                        const RecordLayout& layout, const SchedulePlan& plan,
                        SinkFormat sink_format, std::ostream& sink,
                        std::size_t quarantined = 0);

nlohmann::json integrity_to_json(const IntegrityCounts& counts);
nlohmann::json stats_to_json(const MigrationStats& stats);

struct MonitorSample {
    std::uint64_t tick = 0;
    std::string node_id;
    bool up = true;
    double bandwidth = 0.0;
};

struct SlaBreach {
    std::uint64_t tick = 0;
    double running_uptime = 0.0;
};

struct SlaReport {
    double uptime = 100.0;
    double peak_bandwidth = 0.0;
    double mean_bandwidth = 0.0;
    std::vector<SlaBreach> breaches;
};

// Uptime is the up-tick share over all samples. Breaches are recorded at
// every sample past a 10-tick warm-up whose running uptime falls below the
// threshold. Requires at least one sample.
SlaReport monitor(const std::vector<MonitorSample>& samples,
                  double sla_uptime_threshold);

nlohmann::json sla_to_json(const SlaReport& report);

// "id:efficiency:capacity[,...]" -> node list. Throws Error("bad-nodes").
std::vector<NodeSpec> parse_node_specs(const std::string& text);

} // namespace mfmod
