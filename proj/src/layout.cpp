#include "mfmod/migrate.hpp"
#include "mfmod/parser.hpp"

namespace mfmod {

RecordLayout layout_from_items(const std::vector<DataItem>& items,
                               std::optional<std::string> key_field) {
    RecordLayout layout;
    std::size_t offset = 0;
    for (const auto& item : items) {
        LayoutField field;
        field.name = item.name;
        field.picture = item.picture;
        field.offset = offset;
        field.width = static_cast<std::size_t>(item.picture.field_width());
        offset += field.width;
        layout.fields.push_back(std::move(field));
    }
    layout.record_width = offset;
    if (key_field.has_value()) {
        layout.key_field = std::move(key_field);
    } else if (!layout.fields.empty()) {
        layout.key_field = layout.fields.front().name;
    }
    return layout;
}

LayoutParseResult parse_layout(const SourceUnit& source,
                               std::optional<std::string> key_field) {
    LayoutParseResult result;
    DataItemsResult items = parse_data_items(source);
    result.diagnostics = std::move(items.diagnostics);
    if (has_errors(result.diagnostics)) {
        return result;
    }
    if (items.items.empty()) {
        result.diagnostics.push_back(
            {Severity::error, "empty-layout", "layout declares no fields", {1, 1}});
        return result;
    }
    if (key_field.has_value()) {
        bool found = false;
        for (const auto& item : items.items) {
            found = found || item.name == *key_field;
        }
        if (!found) {
            result.diagnostics.push_back({Severity::error,
                                          "undef-key-field",
                                          "key field " + *key_field +
                                              " is not declared in the layout",
                                          {1, 1}});
            return result;
        }
    }
    result.layout = layout_from_items(items.items, std::move(key_field));
    return result;
}

} // namespace mfmod
