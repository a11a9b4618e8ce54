#include "mfmod/expr.hpp"

namespace mfmod {

ExprRef make_decimal(Decimal value) {
    return std::make_shared<Expr>(Expr{DecimalLit{value}});
}

ExprRef make_string(std::string value) {
    return std::make_shared<Expr>(Expr{StringLit{std::move(value)}});
}

ExprRef make_var(std::string name) {
    return std::make_shared<Expr>(Expr{VarRef{std::move(name)}});
}

ExprRef make_unary(UnaryOp op, ExprRef operand) {
    return std::make_shared<Expr>(Expr{UnaryExpr{op, std::move(operand)}});
}

ExprRef make_binary(BinaryOp op, ExprRef lhs, ExprRef rhs) {
    return std::make_shared<Expr>(Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}});
}

bool expr_equal(const ExprRef& a, const ExprRef& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    if (a->node.index() != b->node.index())
        return false;
    if (const auto* lit = std::get_if<DecimalLit>(&a->node))
        return lit->value == std::get<DecimalLit>(b->node).value;
    if (const auto* lit = std::get_if<StringLit>(&a->node))
        return lit->value == std::get<StringLit>(b->node).value;
    if (const auto* var = std::get_if<VarRef>(&a->node))
        return var->name == std::get<VarRef>(b->node).name;
    if (const auto* un = std::get_if<UnaryExpr>(&a->node)) {
        const auto& other = std::get<UnaryExpr>(b->node);
        return un->op == other.op && expr_equal(un->operand, other.operand);
    }
    const auto& bin = std::get<BinaryExpr>(a->node);
    const auto& other = std::get<BinaryExpr>(b->node);
    return bin.op == other.op && expr_equal(bin.lhs, other.lhs) &&
           expr_equal(bin.rhs, other.rhs);
}

bool is_comparison(BinaryOp op) {
    switch (op) {
    case BinaryOp::eq:
    case BinaryOp::ne:
    case BinaryOp::lt:
    case BinaryOp::le:
    case BinaryOp::gt:
    case BinaryOp::ge:
        return true;
    default:
        return false;
    }
}

void collect_vars(const ExprRef& expr, std::vector<std::string>& out) {
    if (!expr)
        return;
    if (const auto* var = std::get_if<VarRef>(&expr->node)) {
        out.push_back(var->name);
    } else if (const auto* un = std::get_if<UnaryExpr>(&expr->node)) {
        collect_vars(un->operand, out);
    } else if (const auto* bin = std::get_if<BinaryExpr>(&expr->node)) {
        collect_vars(bin->lhs, out);
        collect_vars(bin->rhs, out);
    }
}

} // namespace mfmod
