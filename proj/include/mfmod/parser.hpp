#pragma once

#include <optional>
#include <vector>

#include "mfmod/ast.hpp"
#include "mfmod/source.hpp"

namespace mfmod {

struct ParseResult {
    std::optional<Program> program; // set iff no error diagnostics
    std::vector<Diagnostic> diagnostics;
};

// Parses a compilation unit of the COBOL subset. Total: any byte input
// yields either a Program or at least one error diagnostic, never both.
ParseResult parse(const SourceUnit& source);

struct DataItemsResult {
    std::vector<DataItem> items;
    std::vector<Diagnostic> diagnostics;
};

// Parses a bare DATA DIVISION fragment (the migration layout format).
// The DATA DIVISION / WORKING-STORAGE SECTION headers are optional.
DataItemsResult parse_data_items(const SourceUnit& source);

} // namespace mfmod
