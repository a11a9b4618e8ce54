#include "mfmod/validate.hpp"

#include <unordered_map>
#include <unordered_set>

namespace mfmod {

namespace {

enum class ValueKind { numeric, alphanumeric, boolean, unknown };

struct PerformEdge {
    std::string from;
    std::string to;
    SourceLocation location;
};

class Validator {
public:
    explicit Validator(const Program& program) : program_(program) {
        for (const auto& item : program.data_items)
            items_.emplace(item.name, &item);
        for (const auto& para : program.paragraphs)
            paragraphs_.insert(para.name);
    }

    std::vector<Diagnostic> run() {
        for (const auto& para : program_.paragraphs)
            check_block(para.name, para.statements);
        check_recursion();
        sort_diagnostics(diags_);
        return std::move(diags_);
    }

private:
    void error(const std::string& code, const std::string& message,
               const SourceLocation& location) {
        diags_.push_back(Diagnostic{Severity::error, code, message, location});
    }

    ValueKind item_kind(const std::string& name, const SourceLocation& location) {
        auto it = items_.find(name);
        if (it == items_.end()) {
            error("undef-data-item", "data item " + name + " is not declared", location);
            return ValueKind::unknown;
        }
        return it->second->picture.kind == PictureKind::numeric ? ValueKind::numeric
                                                                : ValueKind::alphanumeric;
    }

    ValueKind expr_kind(const ExprRef& expr, const SourceLocation& location) {
        if (std::holds_alternative<DecimalLit>(expr->node))
            return ValueKind::numeric;
        if (std::holds_alternative<StringLit>(expr->node))
            return ValueKind::alphanumeric;
        if (const auto* var = std::get_if<VarRef>(&expr->node))
            return item_kind(var->name, location);
        if (const auto* unary = std::get_if<UnaryExpr>(&expr->node)) {
            ValueKind inner = expr_kind(unary->operand, location);
            if (unary->op == UnaryOp::negate) {
                if (inner == ValueKind::alphanumeric || inner == ValueKind::boolean)
                    error("kind-mismatch", "negation requires a numeric operand",
                          location);
                return inner == ValueKind::numeric ? ValueKind::numeric
                                                   : ValueKind::unknown;
            }
            if (inner != ValueKind::boolean && inner != ValueKind::unknown)
                error("kind-mismatch", "NOT requires a condition operand", location);
            return ValueKind::boolean;
        }
        const auto& bin = std::get<BinaryExpr>(expr->node);
        ValueKind lhs = expr_kind(bin.lhs, location);
        ValueKind rhs = expr_kind(bin.rhs, location);
        if (!is_comparison(bin.op)) {
            if (lhs == ValueKind::alphanumeric || lhs == ValueKind::boolean ||
                rhs == ValueKind::alphanumeric || rhs == ValueKind::boolean)
                error("kind-mismatch", "arithmetic requires numeric operands", location);
            return (lhs == ValueKind::numeric && rhs == ValueKind::numeric)
                       ? ValueKind::numeric
                       : ValueKind::unknown;
        }
        if (lhs == ValueKind::boolean || rhs == ValueKind::boolean) {
            error("kind-mismatch", "comparison operands must be values", location);
            return ValueKind::boolean;
        }
        if (lhs != ValueKind::unknown && rhs != ValueKind::unknown && lhs != rhs)
            error("kind-mismatch",
                  "comparison requires operands of the same kind", location);
        bool ordering = bin.op == BinaryOp::lt || bin.op == BinaryOp::le ||
                        bin.op == BinaryOp::gt || bin.op == BinaryOp::ge;
        if (ordering &&
            (lhs == ValueKind::alphanumeric || rhs == ValueKind::alphanumeric))
            error("kind-mismatch",
                  "alphanumeric values support only equality comparison", location);
        return ValueKind::boolean;
    }

    void require_numeric(const ExprRef& expr, const SourceLocation& location,
                         const std::string& role) {
        ValueKind kind = expr_kind(expr, location);
        if (kind == ValueKind::alphanumeric || kind == ValueKind::boolean)
            error("kind-mismatch", role + " must be numeric", location);
    }

    void require_numeric_item(const std::string& name, const SourceLocation& location,
                              const std::string& role) {
        ValueKind kind = item_kind(name, location);
        if (kind == ValueKind::alphanumeric)
            error("kind-mismatch", role + " " + name + " must be numeric", location);
    }

    void require_condition(const ExprRef& expr, const SourceLocation& location) {
        ValueKind kind = expr_kind(expr, location);
        if (kind != ValueKind::boolean && kind != ValueKind::unknown)
            error("kind-mismatch", "condition must be a comparison", location);
    }

    void check_block(const std::string& para, const std::vector<Stmt>& statements) {
        for (const auto& stmt : statements)
            check_stmt(para, stmt);
    }

    void check_stmt(const std::string& para, const Stmt& stmt) {
        const SourceLocation& loc = stmt.location;
        if (const auto* move = std::get_if<MoveStmt>(&stmt.node)) {
            ValueKind src = expr_kind(move->source, loc);
            for (const auto& target : move->targets) {
                ValueKind dst = item_kind(target, loc);
                if (src != ValueKind::unknown && dst != ValueKind::unknown && src != dst)
                    error("kind-mismatch",
                          "MOVE source and target " + target + " have different kinds",
                          loc);
            }
            return;
        }
        if (const auto* compute = std::get_if<ComputeStmt>(&stmt.node)) {
            require_numeric(compute->expr, loc, "COMPUTE expression");
            require_numeric_item(compute->target, loc, "COMPUTE target");
            return;
        }
        if (const auto* arith = std::get_if<ArithStmt>(&stmt.node)) {
            for (const auto& operand : arith->operands)
                require_numeric(operand, loc, "arithmetic operand");
            for (const auto& target : arith->targets)
                require_numeric_item(target, loc, "arithmetic target");
            return;
        }
        if (const auto* branch = std::get_if<IfStmt>(&stmt.node)) {
            require_condition(branch->condition, loc);
            check_block(para, branch->then_branch);
            check_block(para, branch->else_branch);
            return;
        }
        if (const auto* perform = std::get_if<PerformStmt>(&stmt.node)) {
            if (paragraphs_.count(perform->target) == 0) {
                error("undef-paragraph",
                      "paragraph " + perform->target + " is not defined", loc);
            } else {
                perform_edges_.push_back(PerformEdge{para, perform->target, loc});
            }
            if (perform->kind == PerformKind::times)
                require_numeric(perform->count, loc, "repeat count");
            if (perform->kind == PerformKind::until)
                require_condition(perform->condition, loc);
            return;
        }
        if (const auto* display = std::get_if<DisplayStmt>(&stmt.node)) {
            for (const auto& operand : display->operands)
                expr_kind(operand, loc);
            return;
        }
        if (const auto* accept = std::get_if<AcceptStmt>(&stmt.node)) {
            item_kind(accept->target, loc);
            return;
        }
    }

    // Rejects PERFORM cycles, direct or transitive, so downstream lowering
    // can treat the call structure as a DAG.
    void check_recursion() {
        std::unordered_map<std::string, std::vector<const PerformEdge*>> adjacency;
        for (const auto& edge : perform_edges_)
            adjacency[edge.from].push_back(&edge);

        enum class Color { white, grey, black };
        std::unordered_map<std::string, Color> color;
        for (const auto& para : program_.paragraphs)
            color[para.name] = Color::white;

        // Iterative DFS; a grey target means the edge closes a cycle.
        for (const auto& para : program_.paragraphs) {
            if (color[para.name] != Color::white)
                continue;
            std::vector<std::pair<std::string, std::size_t>> stack;
            stack.emplace_back(para.name, 0);
            color[para.name] = Color::grey;
            while (!stack.empty()) {
                auto& [name, next] = stack.back();
                const auto& edges = adjacency[name];
                if (next >= edges.size()) {
                    color[name] = Color::black;
                    stack.pop_back();
                    continue;
                }
                const PerformEdge* edge = edges[next++];
                Color target_color = color[edge->to];
                if (target_color == Color::grey) {
                    error("recursive-perform",
                          "PERFORM of " + edge->to + " from " + edge->from +
                              " forms a cycle",
                          edge->location);
                } else if (target_color == Color::white) {
                    color[edge->to] = Color::grey;
                    stack.emplace_back(edge->to, 0);
                }
            }
        }
    }

    const Program& program_;
    std::unordered_map<std::string, const DataItem*> items_;
    std::unordered_set<std::string> paragraphs_;
    std::vector<PerformEdge> perform_edges_;
    std::vector<Diagnostic> diags_;
};

} // namespace

std::vector<Diagnostic> validate(const Program& program) {
    return Validator(program).run();
}

} // namespace mfmod
