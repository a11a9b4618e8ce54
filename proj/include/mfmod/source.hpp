#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mfmod {

struct SourceLocation {
    int line = 1; // 1-based
    int column = 1;
};

// A source file held verbatim, with an offset -> line/column index.
class SourceUnit {
public:
    SourceUnit() = default;
    SourceUnit(std::string path, std::string text);

    const std::string& path() const { return path_; }
    const std::string& text() const { return text_; }

    // Total over [0, text.size()]: offsets past the last newline map to the
    // final line, end-of-text maps one column past the last character.
    SourceLocation locate(std::size_t offset) const;

private:
    std::string path_;
    std::string text_;
    std::vector<std::size_t> line_starts_;
};

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string code;
    std::string message;
    SourceLocation location;
};

// Renders `path:line:col: severity[code]: message`.
std::string format_diagnostic(const SourceUnit& unit, const Diagnostic& diag);

// Stable order: by location, then code, then message.
void sort_diagnostics(std::vector<Diagnostic>& diags);

bool has_errors(const std::vector<Diagnostic>& diags);

} // namespace mfmod
