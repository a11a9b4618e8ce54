#include "mfmod/mir.hpp"

#include <unordered_map>
#include <unordered_set>

#include "mfmod/decimal.hpp"
#include "mfmod/picture.hpp"

namespace mfmod {

std::string MirType::to_string() const {
    if (kind == MirTypeKind::string_type)
        return "string(" + std::to_string(width) + ")";
    std::string name = is_signed ? "sdecimal" : "decimal";
    return name + "(" + std::to_string(precision) + "," + std::to_string(scale) + ")";
}

const MirGlobal* ModernIR::find_global(const std::string& name) const {
    for (const auto& global : globals)
        if (global.name == name)
            return &global;
    return nullptr;
}

const MirFunction* ModernIR::find_function(const std::string& name) const {
    for (const auto& fn : functions)
        if (fn.name == name)
            return &fn;
    return nullptr;
}

PictureSpec picture_for_type(const MirType& type) {
    PictureSpec pic;
    if (type.kind == MirTypeKind::string_type) {
        pic.kind = PictureKind::alphanumeric;
        pic.width = type.width;
    } else {
        pic.kind = PictureKind::numeric;
        pic.digits_before = type.precision - type.scale;
        pic.digits_after = type.scale;
        pic.is_signed = type.is_signed;
    }
    return pic;
}

namespace {

enum class ValueKind { numeric, text, boolean, unknown };

class IrChecker {
public:
    explicit IrChecker(const ModernIR& ir) : ir_(ir) {}

    std::vector<Diagnostic> run() {
        if (ir_.unit_name.empty())
            error("bad-unit", "unit name is empty");
        check_globals();
        check_functions();
        return std::move(diags_);
    }

private:
    void error(const std::string& code, const std::string& message) {
        diags_.push_back(Diagnostic{Severity::error, code, message, SourceLocation{}});
    }

    void check_globals() {
        std::unordered_set<std::string> seen;
        for (const auto& global : ir_.globals) {
            if (!seen.insert(global.name).second)
                error("dup-global", "duplicate global " + global.name);
            if (global.type.kind == MirTypeKind::decimal_type) {
                if (global.type.precision < 1 || global.type.precision > 18 ||
                    global.type.scale < 0 || global.type.scale > global.type.precision)
                    error("bad-type", "invalid decimal bounds for " + global.name);
                kinds_[global.name] = ValueKind::numeric;
            } else {
                if (global.type.width < 1)
                    error("bad-type", "invalid string width for " + global.name);
                kinds_[global.name] = ValueKind::text;
            }
            check_initial(global);
        }
    }

    void check_initial(const MirGlobal& global) {
        if (!global.initial) {
            error("bad-initial", "global " + global.name + " has no initial value");
            return;
        }
        if (const auto* dec = std::get_if<DecimalLit>(&global.initial->node)) {
            if (global.type.kind != MirTypeKind::decimal_type) {
                error("bad-initial", "numeric initial for string global " + global.name);
                return;
            }
            PictureSpec pic = picture_for_type(global.type);
            Rational value = Rational::from_decimal(dec->value);
            if (!(Rational::from_decimal(store_decimal(value, pic)) == value))
                error("bad-initial",
                      "initial value does not fit " + global.type.to_string() +
                          " for " + global.name);
            return;
        }
        if (const auto* str = std::get_if<StringLit>(&global.initial->node)) {
            if (global.type.kind != MirTypeKind::string_type) {
                error("bad-initial", "string initial for numeric global " + global.name);
                return;
            }
            if (str->value.size() > static_cast<std::size_t>(global.type.width))
                error("bad-initial", "initial string too wide for " + global.name);
            return;
        }
        error("bad-initial", "initial for " + global.name + " must be a literal");
    }

    void check_functions() {
        std::unordered_set<std::string> seen;
        for (const auto& fn : ir_.functions) {
            if (!seen.insert(fn.name).second)
                error("dup-function", "duplicate function " + fn.name);
        }
        if (seen.count("main") == 0)
            error("no-entry", "entry function main is not defined");
        for (const auto& fn : ir_.functions)
            check_block(fn.name, fn.body);
        check_call_cycles();
    }

    ValueKind global_kind(const std::string& name) {
        auto it = kinds_.find(name);
        if (it == kinds_.end()) {
            error("undef-global", "variable " + name + " is not a declared global");
            return ValueKind::unknown;
        }
        return it->second;
    }

    ValueKind expr_kind(const ExprRef& expr) {
        if (std::holds_alternative<DecimalLit>(expr->node))
            return ValueKind::numeric;
        if (std::holds_alternative<StringLit>(expr->node))
            return ValueKind::text;
        if (const auto* var = std::get_if<VarRef>(&expr->node))
            return global_kind(var->name);
        if (const auto* unary = std::get_if<UnaryExpr>(&expr->node)) {
            ValueKind inner = expr_kind(unary->operand);
            if (unary->op == UnaryOp::negate) {
                if (inner == ValueKind::text || inner == ValueKind::boolean)
                    error("kind-mismatch", "negation requires a numeric operand");
                return inner == ValueKind::numeric ? ValueKind::numeric
                                                   : ValueKind::unknown;
            }
            if (inner != ValueKind::boolean && inner != ValueKind::unknown)
                error("kind-mismatch", "! requires a condition operand");
            return ValueKind::boolean;
        }
        const auto& bin = std::get<BinaryExpr>(expr->node);
        ValueKind lhs = expr_kind(bin.lhs);
        ValueKind rhs = expr_kind(bin.rhs);
        if (!is_comparison(bin.op)) {
            if (lhs == ValueKind::text || lhs == ValueKind::boolean ||
                rhs == ValueKind::text || rhs == ValueKind::boolean)
                error("kind-mismatch", "arithmetic requires numeric operands");
            return (lhs == ValueKind::numeric && rhs == ValueKind::numeric)
                       ? ValueKind::numeric
                       : ValueKind::unknown;
        }
        if (lhs == ValueKind::boolean || rhs == ValueKind::boolean) {
            error("kind-mismatch", "comparison operands must be values");
            return ValueKind::boolean;
        }
        if (lhs != ValueKind::unknown && rhs != ValueKind::unknown && lhs != rhs)
            error("kind-mismatch", "comparison requires operands of the same kind");
        bool ordering = bin.op == BinaryOp::lt || bin.op == BinaryOp::le ||
                        bin.op == BinaryOp::gt || bin.op == BinaryOp::ge;
        if (ordering && (lhs == ValueKind::text || rhs == ValueKind::text))
            error("kind-mismatch", "string values support only equality comparison");
        return ValueKind::boolean;
    }

    void require_condition(const ExprRef& expr) {
        ValueKind kind = expr_kind(expr);
        if (kind != ValueKind::boolean && kind != ValueKind::unknown)
            error("kind-mismatch", "condition must be a comparison");
    }

    void check_block(const std::string& fn, const std::vector<MirStmt>& body) {
        for (const auto& stmt : body)
            check_stmt(fn, stmt);
    }

    void check_stmt(const std::string& fn, const MirStmt& stmt) {
        if (const auto* assign = std::get_if<MirAssign>(&stmt.node)) {
            ValueKind target = global_kind(assign->target);
            ValueKind value = expr_kind(assign->value);
            if (value == ValueKind::boolean)
                error("kind-mismatch", "cannot assign a condition to " + assign->target);
            else if (target != ValueKind::unknown && value != ValueKind::unknown &&
                     target != value)
                error("kind-mismatch",
                      "assignment to " + assign->target + " has mismatched kind");
            return;
        }
        if (const auto* branch = std::get_if<MirIf>(&stmt.node)) {
            require_condition(branch->condition);
            check_block(fn, branch->then_branch);
            check_block(fn, branch->else_branch);
            return;
        }
        if (const auto* loop = std::get_if<MirWhile>(&stmt.node)) {
            require_condition(loop->condition);
            check_block(fn, loop->body);
            return;
        }
        if (const auto* loop = std::get_if<MirFor>(&stmt.node)) {
            ValueKind count = expr_kind(loop->count);
            if (count == ValueKind::text || count == ValueKind::boolean)
                error("kind-mismatch", "for count must be numeric");
            check_block(fn, loop->body);
            return;
        }
        if (const auto* call = std::get_if<MirCall>(&stmt.node)) {
            if (ir_.find_function(call->target) == nullptr)
                error("undef-function", "call target " + call->target +
                                            " is not a defined function");
            else
                call_edges_.emplace_back(fn, call->target);
            return;
        }
        if (const auto* print = std::get_if<MirPrint>(&stmt.node)) {
            if (expr_kind(print->value) == ValueKind::boolean)
                error("kind-mismatch", "print argument must be a value");
            return;
        }
        if (const auto* read = std::get_if<MirRead>(&stmt.node)) {
            global_kind(read->target);
            return;
        }
    }

    // The interpreter executes calls on the native stack, so the call graph
    // must be a DAG for execution to be well-defined.
    void check_call_cycles() {
        std::unordered_map<std::string, std::vector<std::string>> adjacency;
        for (const auto& [from, to] : call_edges_)
            adjacency[from].push_back(to);
        enum class Color { white, grey, black };
        std::unordered_map<std::string, Color> color;
        for (const auto& fn : ir_.functions)
            color[fn.name] = Color::white;
        for (const auto& fn : ir_.functions) {
            if (color[fn.name] != Color::white)
                continue;
            std::vector<std::pair<std::string, std::size_t>> stack;
            stack.emplace_back(fn.name, 0);
            color[fn.name] = Color::grey;
            while (!stack.empty()) {
                auto& [name, next] = stack.back();
                auto& edges = adjacency[name];
                if (next >= edges.size()) {
                    color[name] = Color::black;
                    stack.pop_back();
                    continue;
                }
                const std::string& target = edges[next++];
                if (color[target] == Color::grey)
                    error("recursive-call",
                          "call of " + target + " from " + name + " forms a cycle");
                else if (color[target] == Color::white) {
                    color[target] = Color::grey;
                    stack.emplace_back(target, 0);
                }
            }
        }
    }

    const ModernIR& ir_;
    std::unordered_map<std::string, ValueKind> kinds_;
    std::vector<std::pair<std::string, std::string>> call_edges_;
    std::vector<Diagnostic> diags_;
};

bool stmts_equal(const std::vector<MirStmt>& a, const std::vector<MirStmt>& b);

bool stmt_equal(const MirStmt& a, const MirStmt& b) {
    if (a.node.index() != b.node.index())
        return false;
    if (const auto* x = std::get_if<MirAssign>(&a.node)) {
        const auto& y = std::get<MirAssign>(b.node);
        return x->target == y.target && expr_equal(x->value, y.value);
    }
    if (const auto* x = std::get_if<MirIf>(&a.node)) {
        const auto& y = std::get<MirIf>(b.node);
        return expr_equal(x->condition, y.condition) &&
               stmts_equal(x->then_branch, y.then_branch) &&
               stmts_equal(x->else_branch, y.else_branch);
    }
    if (const auto* x = std::get_if<MirWhile>(&a.node)) {
        const auto& y = std::get<MirWhile>(b.node);
        return expr_equal(x->condition, y.condition) && stmts_equal(x->body, y.body);
    }
    if (const auto* x = std::get_if<MirFor>(&a.node)) {
        const auto& y = std::get<MirFor>(b.node);
        return expr_equal(x->count, y.count) && stmts_equal(x->body, y.body);
    }
    if (const auto* x = std::get_if<MirCall>(&a.node)) {
        const auto& y = std::get<MirCall>(b.node);
        return x->target == y.target;
    }
    if (const auto* x = std::get_if<MirPrint>(&a.node)) {
        const auto& y = std::get<MirPrint>(b.node);
        return expr_equal(x->value, y.value);
    }
    if (const auto* x = std::get_if<MirRead>(&a.node)) {
        const auto& y = std::get<MirRead>(b.node);
        return x->target == y.target;
    }
    return true; // halt
}

bool stmts_equal(const std::vector<MirStmt>& a, const std::vector<MirStmt>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!stmt_equal(a[i], b[i]))
            return false;
    return true;
}

} // namespace

std::vector<Diagnostic> check_ir(const ModernIR& ir) {
    return IrChecker(ir).run();
}

bool ir_equal(const ModernIR& a, const ModernIR& b) {
    if (a.unit_name != b.unit_name || a.globals.size() != b.globals.size() ||
        a.functions.size() != b.functions.size())
        return false;
    for (std::size_t i = 0; i < a.globals.size(); ++i) {
        if (a.globals[i].name != b.globals[i].name ||
            !(a.globals[i].type == b.globals[i].type) ||
            !expr_equal(a.globals[i].initial, b.globals[i].initial))
            return false;
    }
    for (std::size_t i = 0; i < a.functions.size(); ++i) {
        if (a.functions[i].name != b.functions[i].name ||
            !stmts_equal(a.functions[i].body, b.functions[i].body))
            return false;
    }
    return true;
}

} // namespace mfmod
