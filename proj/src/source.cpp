#include "mfmod/source.hpp"

#include <algorithm>

namespace mfmod {

SourceUnit::SourceUnit(std::string path, std::string text)
    : path_(std::move(path)), text_(std::move(text)) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text_.size(); ++i) {
        if (text_[i] == '\n')
            line_starts_.push_back(i + 1);
    }
}

SourceLocation SourceUnit::locate(std::size_t offset) const {
    offset = std::min(offset, text_.size());
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    std::size_t line = static_cast<std::size_t>(it - line_starts_.begin()); // 1-based
    std::size_t start = line_starts_[line - 1];
    return SourceLocation{static_cast<int>(line), static_cast<int>(offset - start + 1)};
}

std::string format_diagnostic(const SourceUnit& unit, const Diagnostic& diag) {
    std::string sev = diag.severity == Severity::error ? "error" : "warning";
    return unit.path() + ":" + std::to_string(diag.location.line) + ":" +
           std::to_string(diag.location.column) + ": " + sev + "[" + diag.code +
           "]: " + diag.message;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.location.line != b.location.line)
            return a.location.line < b.location.line;
        if (a.location.column != b.location.column)
            return a.location.column < b.location.column;
        if (a.code != b.code)
            return a.code < b.code;
        return a.message < b.message;
    });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

} // namespace mfmod
