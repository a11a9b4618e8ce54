#include <sstream>

#include "mfmod/decimal.hpp"
#include "mfmod/mir.hpp"

namespace mfmod {

namespace {

// Precedence levels used for minimal parenthesization; the parser rebuilds
// exactly the tree this renderer prints.
int precedence(const ExprRef& expr) {
    if (const auto* bin = std::get_if<BinaryExpr>(&expr->node)) {
        if (is_comparison(bin->op))
            return 1;
        return bin->op == BinaryOp::add || bin->op == BinaryOp::sub ? 2 : 3;
    }
    if (std::holds_alternative<UnaryExpr>(expr->node))
        return 4;
    return 5;
}

std::string op_text(BinaryOp op) {
    switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
    case BinaryOp::eq: return "==";
    case BinaryOp::ne: return "!=";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    }
    return "?";
}

std::string escape_string(const std::string& value) {
    std::string out = "\"";
    for (char c : value) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void render_expr(const ExprRef& expr, std::ostringstream& out);

void render_child(const ExprRef& child, int parent_prec, bool right_side,
                  bool parent_is_comparison, std::ostringstream& out) {
    int child_prec = precedence(child);
    bool parens = child_prec < parent_prec ||
                  (child_prec == parent_prec && (right_side || parent_is_comparison));
    if (parens)
        out << '(';
    render_expr(child, out);
    if (parens)
        out << ')';
}

void render_expr(const ExprRef& expr, std::ostringstream& out) {
    if (const auto* dec = std::get_if<DecimalLit>(&expr->node)) {
        out << canonical_decimal_text(dec->value);
        return;
    }
    if (const auto* str = std::get_if<StringLit>(&expr->node)) {
        out << escape_string(str->value);
        return;
    }
    if (const auto* var = std::get_if<VarRef>(&expr->node)) {
        out << var->name;
        return;
    }
    if (const auto* unary = std::get_if<UnaryExpr>(&expr->node)) {
        out << (unary->op == UnaryOp::negate ? "-" : "!");
        int operand_prec = precedence(unary->operand);
        // A negated numeric literal needs parens so reparsing does not fold
        // the sign into the literal and change the tree shape.
        bool parens = operand_prec < 4 ||
                      (unary->op == UnaryOp::negate &&
                       std::holds_alternative<DecimalLit>(unary->operand->node));
        if (parens)
            out << '(';
        render_expr(unary->operand, out);
        if (parens)
            out << ')';
        return;
    }
    const auto& bin = std::get<BinaryExpr>(expr->node);
    int prec = precedence(expr);
    bool comparison = is_comparison(bin.op);
    render_child(bin.lhs, prec, false, comparison, out);
    out << ' ' << op_text(bin.op) << ' ';
    render_child(bin.rhs, prec, true, comparison, out);
}

std::string expr_text(const ExprRef& expr) {
    std::ostringstream out;
    render_expr(expr, out);
    return out.str();
}

void render_block(const std::vector<MirStmt>& body, int depth, std::ostringstream& out);

void render_stmt(const MirStmt& stmt, int depth, std::ostringstream& out) {
    std::string ind(static_cast<std::size_t>(depth) * 2, ' ');
    if (const auto* assign = std::get_if<MirAssign>(&stmt.node)) {
        out << ind << assign->target << " = " << expr_text(assign->value) << ";\n";
        return;
    }
    if (const auto* branch = std::get_if<MirIf>(&stmt.node)) {
        out << ind << "if (" << expr_text(branch->condition) << ") {\n";
        render_block(branch->then_branch, depth + 1, out);
        if (branch->else_branch.empty()) {
            out << ind << "}\n";
        } else {
            out << ind << "} else {\n";
            render_block(branch->else_branch, depth + 1, out);
            out << ind << "}\n";
        }
        return;
    }
    if (const auto* loop = std::get_if<MirWhile>(&stmt.node)) {
        out << ind << "while (" << expr_text(loop->condition) << ") {\n";
        render_block(loop->body, depth + 1, out);
        out << ind << "}\n";
        return;
    }
    if (const auto* loop = std::get_if<MirFor>(&stmt.node)) {
        out << ind << "for (" << expr_text(loop->count) << ") {\n";
        render_block(loop->body, depth + 1, out);
        out << ind << "}\n";
        return;
    }
    if (const auto* call = std::get_if<MirCall>(&stmt.node)) {
        out << ind << "call " << call->target << ";\n";
        return;
    }
    if (const auto* print = std::get_if<MirPrint>(&stmt.node)) {
        out << ind << "print(" << expr_text(print->value) << ");\n";
        return;
    }
    if (const auto* read = std::get_if<MirRead>(&stmt.node)) {
        out << ind << "read(" << read->target << ");\n";
        return;
    }
    out << ind << "halt;\n";
}

void render_block(const std::vector<MirStmt>& body, int depth, std::ostringstream& out) {
    for (const auto& stmt : body)
        render_stmt(stmt, depth, out);
}

} // namespace

std::string render(const ModernIR& ir) {
    std::ostringstream out;
    out << "unit " << ir.unit_name << ";\n";
    if (!ir.globals.empty()) {
        out << '\n';
        for (const auto& global : ir.globals) {
            out << "global " << global.name << ": " << global.type.to_string() << " = ";
            if (const auto* dec = std::get_if<DecimalLit>(&global.initial->node))
                out << canonical_decimal_text(dec->value);
            else
                out << escape_string(std::get<StringLit>(global.initial->node).value);
            out << ";\n";
        }
    }
    for (const auto& fn : ir.functions) {
        out << "\nfn " << fn.name << "() {\n";
        render_block(fn.body, 1, out);
        out << "}\n";
    }
    return out.str();
}

} // namespace mfmod
