#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mfmod/expr.hpp"
#include "mfmod/picture.hpp"
#include "mfmod/source.hpp"

namespace mfmod {

// Working-storage entry. Names are canonical uppercase.
struct DataItem {
    std::string name;
    int level = 1; // 1 or 5
    PictureSpec picture;
    std::optional<ExprRef> initial_value; // DecimalLit or StringLit
    SourceLocation location;
};

struct Stmt;

struct MoveStmt {
    ExprRef source; // literal or variable reference
    std::vector<std::string> targets;
};

struct ComputeStmt {
    std::string target;
    ExprRef expr;
};

enum class ArithVerb { add, subtract, multiply, divide_by, divide_into };

// ADD a b TO x y / SUBTRACT a FROM x / MULTIPLY a BY x /
// DIVIDE a INTO x / DIVIDE x BY a. Targets are both read and written
// (the stored value is an operand of the operation).
struct ArithStmt {
    ArithVerb verb;
    std::vector<ExprRef> operands;
    std::vector<std::string> targets;
};

struct IfStmt {
    ExprRef condition;
    std::vector<Stmt> then_branch;
    std::vector<Stmt> else_branch;
};

enum class PerformKind { plain, times, until };

struct PerformStmt {
    PerformKind kind = PerformKind::plain;
    std::string target;
    ExprRef count;     // times form
    ExprRef condition; // until form
};

struct DisplayStmt {
    std::vector<ExprRef> operands;
};

struct AcceptStmt {
    std::string target;
};

struct StopStmt {};

struct Stmt {
    std::variant<MoveStmt, ComputeStmt, ArithStmt, IfStmt, PerformStmt, DisplayStmt,
                 AcceptStmt, StopStmt>
        node;
    SourceLocation location;
};

struct Paragraph {
    std::string name;
    std::vector<Stmt> statements;
    SourceLocation location;
};

struct Program {
    std::string program_id;
    std::vector<DataItem> data_items;
    std::vector<Paragraph> paragraphs;

    const DataItem* find_item(const std::string& name) const;
    const Paragraph* find_paragraph(const std::string& name) const;
};

} // namespace mfmod
