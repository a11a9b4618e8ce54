#include <map>

#include "mfmod/errors.hpp"
#include "mfmod/migrate.hpp"

namespace mfmod {

namespace {

bool is_printable(char ch) {
    return static_cast<unsigned char>(ch) >= 0x20 &&
           static_cast<unsigned char>(ch) <= 0x7e;
}

// Numeric fields are all digits, preceded by a mandatory sign byte when the
// picture is signed. The implied decimal point costs no bytes.
bool parse_numeric_field(const std::string& text, const PictureSpec& picture,
                         Decimal& out) {
    std::size_t start = 0;
    bool negative = false;
    if (picture.is_signed) {
        if (text.empty() || (text[0] != '+' && text[0] != '-')) {
            return false;
        }
        negative = text[0] == '-';
        start = 1;
    }
    std::int64_t mantissa = 0;
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            return false;
        }
        mantissa = mantissa * 10 + (text[i] - '0');
    }
    if (negative) {
        mantissa = -mantissa;
    }
    out = Decimal::normalized(mantissa, picture.digits_after);
    return true;
}

std::string key_text(const FieldValue& value) {
    return value.is_numeric ? canonical_decimal_text(value.number) : value.text;
}

} // namespace

ParsedRecords parse_records(const std::vector<std::string>& lines,
                            const RecordLayout& layout) {
    ParsedRecords result;
    for (std::size_t index = 0; index < lines.size(); ++index) {
        const std::string& line = lines[index];
        const std::size_t line_number = index + 1;
        if (line.size() != layout.record_width) {
            result.invalid.push_back({line_number, "bad-length"});
            continue;
        }
        Record record;
        record.values.reserve(layout.fields.size());
        std::string reason;
        for (const auto& field : layout.fields) {
            const std::string text = line.substr(field.offset, field.width);
            FieldValue value;
            if (field.picture.kind == PictureKind::numeric) {
                value.is_numeric = true;
                if (!parse_numeric_field(text, field.picture, value.number)) {
                    reason = "bad-numeric";
                    break;
                }
            } else {
                bool clean = true;
                for (char ch : text) {
                    clean = clean && is_printable(ch);
                }
                if (!clean) {
                    reason = "bad-char";
                    break;
                }
                value.text = text;
            }
            record.values.push_back(std::move(value));
        }
        if (reason.empty()) {
            result.valid.push_back(std::move(record));
        } else {
            result.invalid.push_back({line_number, reason});
        }
    }
    return result;
}

IntegrityCounts profile(const ParsedRecords& records, const RecordLayout& layout) {
    IntegrityCounts counts;
    counts.valid = records.valid.size();
    counts.total = records.valid.size() + records.invalid.size();
    for (const auto& invalid : records.invalid) {
        ++counts.invalid_by_reason[invalid.reason];
    }
    if (counts.total > 0) {
        counts.integrity = 100.0 * static_cast<double>(counts.valid) /
                           static_cast<double>(counts.total);
    }
    if (layout.key_field.has_value()) {
        std::size_t key_index = layout.fields.size();
        for (std::size_t i = 0; i < layout.fields.size(); ++i) {
            if (layout.fields[i].name == *layout.key_field) {
                key_index = i;
                break;
            }
        }
        if (key_index < layout.fields.size()) {
            std::map<std::string, std::size_t> occurrences;
            for (const auto& record : records.valid) {
                ++occurrences[key_text(record.values[key_index])];
            }
            for (const auto& [key, count] : occurrences) {
                counts.duplicates += count - 1;
            }
        }
    }
    return counts;
}

std::vector<SchemaColumn> map_schema(const RecordLayout& layout) {
    std::vector<SchemaColumn> columns;
    columns.reserve(layout.fields.size());
    for (const auto& field : layout.fields) {
        MirType type;
        if (field.picture.kind == PictureKind::numeric) {
            if (field.picture.total_digits() < 1 || field.picture.total_digits() > 18) {
                throw UnsupportedPictureError("field " + field.name +
                                              " has no mappable digit range");
            }
            type.kind = MirTypeKind::decimal_type;
            type.precision = field.picture.total_digits();
            type.scale = field.picture.digits_after;
            type.is_signed = field.picture.is_signed;
        } else {
            if (field.picture.width < 1) {
                throw UnsupportedPictureError("field " + field.name +
                                              " has no mappable width");
            }
            type.kind = MirTypeKind::string_type;
            type.width = field.picture.width;
        }
        columns.push_back({field.name, type});
    }
    return columns;
}

nlohmann::json integrity_to_json(const IntegrityCounts& counts) {
    return {{"total", counts.total},
            {"valid", counts.valid},
            {"invalid_by_reason", counts.invalid_by_reason},
            {"duplicates", counts.duplicates},
            {"integrity", counts.integrity}};
}

} // namespace mfmod
