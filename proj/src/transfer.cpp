#include <algorithm>
#include <ostream>

#include "mfmod/errors.hpp"
#include "mfmod/migrate.hpp"

namespace mfmod {

namespace {

std::string field_text(const FieldValue& value) {
    return value.is_numeric ? canonical_decimal_text(value.number) : value.text;
}

std::string csv_escape(const std::string& text) {
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

std::string json_escape(const std::string& text) {
    std::string escaped;
    for (char ch : text) {
        const auto byte = static_cast<unsigned char>(ch);
        if (ch == '"') {
            escaped += "\\\"";
        } else if (ch == '\\') {
            escaped += "\\\\";
        } else if (byte < 0x20) {
            static const char* digits = "0123456789abcdef";
            escaped += "\\u00";
            escaped += digits[byte >> 4];
            escaped += digits[byte & 0xf];
        } else {
            escaped += ch;
        }
    }
    return escaped;
}

std::string render_record(const Record& record, const RecordLayout& layout,
                          SinkFormat format) {
    std::string line;
    if (format == SinkFormat::csv) {
        for (std::size_t i = 0; i < record.values.size(); ++i) {
            if (i > 0) {
                line += ',';
            }
            line += csv_escape(field_text(record.values[i]));
        }
    } else {
        line += '{';
        for (std::size_t i = 0; i < record.values.size(); ++i) {
            if (i > 0) {
                line += ',';
            }
            line += '"';
            line += json_escape(layout.fields[i].name);
            line += "\":";
            const FieldValue& value = record.values[i];
            if (value.is_numeric) {
                line += canonical_decimal_text(value.number);
            } else {
                line += '"';
                line += json_escape(value.text);
                line += '"';
            }
        }
        line += '}';
    }
    line += '\n';
    return line;
}

} // namespace

MigrationStats transfer(const std::vector<Record>& records,
                        const RecordLayout& layout, const SchedulePlan& plan,
                        SinkFormat sink_format, std::ostream& sink,
                        std::size_t quarantined) {
    if (plan.assignment.size() != plan.tasks.size()) {
        throw Error("bad-plan", "assignment does not cover the task list");
    }

    // Tasks slice the record stream in task order; the width is the batch
    // evidence that the plan and the record list belong together.
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    ranges.reserve(plan.tasks.size());
    std::size_t cursor = 0;
    for (const auto& task : plan.tasks) {
        if (layout.record_width == 0 ||
            task.payload_bytes % layout.record_width != 0) {
            throw Error("bad-plan", "task payload is not a whole record batch");
        }
        const std::size_t count = task.payload_bytes / layout.record_width;
        ranges.emplace_back(cursor, cursor + count);
        cursor += count;
    }
    if (cursor != records.size()) {
        throw Error("bad-plan", "plan covers a different record count");
    }

    if (sink_format == SinkFormat::csv) {
        std::string header;
        for (std::size_t i = 0; i < layout.fields.size(); ++i) {
            if (i > 0) {
                header += ',';
            }
            header += csv_escape(layout.fields[i].name);
        }
        header += '\n';
        sink << header;
    }

    MigrationStats stats;
    stats.records_out = records.size();
    stats.quarantined = quarantined;
    stats.records_in = records.size() + quarantined;
    stats.resource_units = static_cast<double>(plan.nodes.size());

    // Deterministic event order: nodes in list order, then assigned tasks in
    // task order. Each node runs its tasks back to back on a simulated clock.
    for (std::size_t n = 0; n < plan.nodes.size(); ++n) {
        double node_seconds = 0.0;
        for (std::size_t t = 0; t < plan.tasks.size(); ++t) {
            if (plan.assignment[t] != n) {
                continue;
            }
            const TransferTask& task = plan.tasks[t];
            node_seconds += static_cast<double>(task.payload_bytes) *
                            task.seconds_per_byte / plan.nodes[n].efficiency;
            for (std::size_t r = ranges[t].first; r < ranges[t].second; ++r) {
                const std::string line = render_record(records[r], layout, sink_format);
                sink << line;
                stats.bytes_transferred += line.size();
            }
        }
        stats.compute_seconds = std::max(stats.compute_seconds, node_seconds);
    }
    sink.flush();
    if (!sink.good()) {
        throw IoError("sink write failed");
    }

    if (stats.bytes_transferred > 0 && stats.compute_seconds > 0.0 &&
        stats.resource_units > 0.0) {
        stats.efficiency = static_cast<double>(stats.bytes_transferred) /
                           (stats.compute_seconds * stats.resource_units);
    }
    return stats;
}

nlohmann::json stats_to_json(const MigrationStats& stats) {
    return {{"bytes_transferred", stats.bytes_transferred},
            {"compute_seconds", stats.compute_seconds},
            {"resource_units", stats.resource_units},
            {"efficiency", stats.efficiency},
            {"records_in", stats.records_in},
            {"records_out", stats.records_out},
            {"quarantined", stats.quarantined}};
}

} // namespace mfmod
