#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mfmod/decimal.hpp"

namespace mfmod {

// Expression tree shared by the COBOL AST and the modern IR. Nodes are
// immutable and shared, so candidate variants can reuse subtrees.
struct Expr;
using ExprRef = std::shared_ptr<const Expr>;

enum class BinaryOp { add, sub, mul, div, eq, ne, lt, le, gt, ge };
enum class UnaryOp { negate, logical_not };

struct DecimalLit {
    Decimal value;
};

struct StringLit {
    std::string value;
};

struct VarRef {
    std::string name;
};

struct UnaryExpr {
    UnaryOp op;
    ExprRef operand;
};

struct BinaryExpr {
    BinaryOp op;
    ExprRef lhs;
    ExprRef rhs;
};

struct Expr {
    std::variant<DecimalLit, StringLit, VarRef, UnaryExpr, BinaryExpr> node;
};

ExprRef make_decimal(Decimal value);
ExprRef make_string(std::string value);
ExprRef make_var(std::string name);
ExprRef make_unary(UnaryOp op, ExprRef operand);
ExprRef make_binary(BinaryOp op, ExprRef lhs, ExprRef rhs);

bool expr_equal(const ExprRef& a, const ExprRef& b);

bool is_comparison(BinaryOp op);

// Collects variable names referenced anywhere in the expression.
void collect_vars(const ExprRef& expr, std::vector<std::string>& out);

} // namespace mfmod
