#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mfmod/expr.hpp"
#include "mfmod/picture.hpp"
#include "mfmod/source.hpp"

namespace mfmod {

enum class MirTypeKind { decimal_type, string_type };

// decimal(precision, scale) with optional sign, or string(width).
struct MirType {
    MirTypeKind kind = MirTypeKind::decimal_type;
    int precision = 0;
    int scale = 0;
    bool is_signed = false;
    int width = 0;

    bool operator==(const MirType&) const = default;

    std::string to_string() const;
};

struct MirGlobal {
    std::string name;
    MirType type;
    ExprRef initial; // DecimalLit or StringLit, always present
};

struct MirStmt;

struct MirAssign {
    std::string target;
    ExprRef value;
};

struct MirIf {
    ExprRef condition;
    std::vector<MirStmt> then_branch;
    std::vector<MirStmt> else_branch;
};

struct MirWhile {
    ExprRef condition;
    std::vector<MirStmt> body;
};

// Executes the body floor(count) times; the count expression is evaluated
// once at loop entry and a negative count means zero iterations.
struct MirFor {
    ExprRef count;
    std::vector<MirStmt> body;
};

struct MirCall {
    std::string target;
};

struct MirPrint {
    ExprRef value;
};

struct MirRead {
    std::string target;
};

struct MirHalt {};

struct MirStmt {
    std::variant<MirAssign, MirIf, MirWhile, MirFor, MirCall, MirPrint, MirRead,
                 MirHalt>
        node;
};

struct MirFunction {
    std::string name;
    std::vector<MirStmt> body;
};

// Structured jump-free program form: typed globals plus functions, entry
// point is the function named "main".
struct ModernIR {
    std::string unit_name;
    std::vector<MirGlobal> globals;
    std::vector<MirFunction> functions;

    const MirGlobal* find_global(const std::string& name) const;
    const MirFunction* find_function(const std::string& name) const;
};

// Well-formedness: unique names, resolvable references, entry present,
// type bounds, initial-value conformance, operand kind compatibility,
// and an acyclic call graph. Empty result means the IR is executable.
std::vector<Diagnostic> check_ir(const ModernIR& ir);

bool ir_equal(const ModernIR& a, const ModernIR& b);

// Storage discipline of a typed global, expressed as the equivalent
// fixed-point picture so both interpreters share one store/compare kernel.
PictureSpec picture_for_type(const MirType& type);

std::string render(const ModernIR& ir);

struct MirParseResult {
    std::optional<ModernIR> ir; // set iff no error diagnostics
    std::vector<Diagnostic> diagnostics;
};

MirParseResult parse_mir(const std::string& text);

} // namespace mfmod
