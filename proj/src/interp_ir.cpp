#include <unordered_map>

#include "mfmod/errors.hpp"
#include "mfmod/interp.hpp"

namespace mfmod {

namespace {

struct Abort {
    TraceError error;
};

struct Halt {};

struct EvalValue {
    bool is_text = false;
    Rational number;
    std::string text;
};

struct Slot {
    PictureSpec picture;
    Decimal number;
    std::string text;
};

class IrInterp {
public:
    IrInterp(const ModernIR& ir, const std::vector<std::string>& inputs)
        : ir_(ir), inputs_(inputs) {}

    ExecutionTrace run() {
        init_globals();
        try {
            const MirFunction* entry = ir_.find_function("main");
            exec_block(entry->body); // entry presence guaranteed by check_ir
            trace_.halted = true;
        } catch (const Halt&) {
            trace_.halted = true;
        } catch (const Abort& abort) {
            trace_.error = abort.error;
            trace_.halted = false;
        }
        return std::move(trace_);
    }

private:
    void tick() {
        if (trace_.steps == kStepBudget)
            throw Abort{TraceError::step_limit};
        ++trace_.steps;
    }

    void init_globals() {
        for (const auto& global : ir_.globals) {
            Slot slot;
            slot.picture = picture_for_type(global.type);
            if (slot.picture.kind == PictureKind::numeric) {
                const auto& lit = std::get<DecimalLit>(global.initial->node);
                slot.number =
                    store_decimal(Rational::from_decimal(lit.value), slot.picture);
            } else {
                slot.text = store_string(std::get<StringLit>(global.initial->node).value,
                                         slot.picture.width);
            }
            slots_.emplace(global.name, std::move(slot));
        }
    }

    Slot& slot(const std::string& name) { return slots_.at(name); }

    EvalValue eval(const ExprRef& expr) {
        if (const auto* dec = std::get_if<DecimalLit>(&expr->node)) {
            EvalValue value;
            value.number = Rational::from_decimal(dec->value);
            return value;
        }
        if (const auto* str = std::get_if<StringLit>(&expr->node)) {
            EvalValue value;
            value.is_text = true;
            value.text = str->value;
            return value;
        }
        if (const auto* var = std::get_if<VarRef>(&expr->node)) {
            const Slot& s = slot(var->name);
            EvalValue value;
            if (s.picture.kind == PictureKind::numeric) {
                value.number = Rational::from_decimal(s.number);
            } else {
                value.is_text = true;
                value.text = s.text;
            }
            return value;
        }
        if (const auto* unary = std::get_if<UnaryExpr>(&expr->node)) {
            if (unary->op == UnaryOp::negate) {
                EvalValue value = eval(unary->operand);
                value.number = value.number.negated();
                return value;
            }
            EvalValue value;
            value.number = Rational::from_int(eval_condition(unary->operand) ? 0 : 1);
            return value;
        }
        const auto& bin = std::get<BinaryExpr>(expr->node);
        if (is_comparison(bin.op)) {
            EvalValue value;
            value.number = Rational::from_int(eval_condition(expr) ? 1 : 0);
            return value;
        }
        Rational lhs = eval(bin.lhs).number;
        Rational rhs = eval(bin.rhs).number;
        EvalValue value;
        switch (bin.op) {
        case BinaryOp::add: value.number = lhs + rhs; break;
        case BinaryOp::sub: value.number = lhs - rhs; break;
        case BinaryOp::mul: value.number = lhs * rhs; break;
        default:
            try {
                value.number = lhs / rhs;
            } catch (const Error&) {
                throw Abort{TraceError::div_zero};
            }
            break;
        }
        return value;
    }

    bool eval_condition(const ExprRef& expr) {
        if (const auto* unary = std::get_if<UnaryExpr>(&expr->node)) {
            if (unary->op == UnaryOp::logical_not)
                return !eval_condition(unary->operand);
        }
        const auto* bin = std::get_if<BinaryExpr>(&expr->node);
        if (!bin || !is_comparison(bin->op))
            return !eval(expr).number.is_zero();
        EvalValue lhs = eval(bin->lhs);
        EvalValue rhs = eval(bin->rhs);
        int cmp;
        if (lhs.is_text || rhs.is_text)
            cmp = compare_padded(lhs.text, rhs.text);
        else
            cmp = lhs.number < rhs.number ? -1 : (lhs.number == rhs.number ? 0 : 1);
        switch (bin->op) {
        case BinaryOp::eq: return cmp == 0;
        case BinaryOp::ne: return cmp != 0;
        case BinaryOp::lt: return cmp < 0;
        case BinaryOp::le: return cmp <= 0;
        case BinaryOp::gt: return cmp > 0;
        default: return cmp >= 0;
        }
    }

    void store(const std::string& name, const EvalValue& value) {
        Slot& s = slot(name);
        if (s.picture.kind == PictureKind::numeric)
            s.number = store_decimal(value.number, s.picture);
        else
            s.text = store_string(value.text, s.picture.width);
    }

    void exec_block(const std::vector<MirStmt>& body) {
        for (const auto& stmt : body)
            exec_stmt(stmt);
    }

    void exec_stmt(const MirStmt& stmt) {
        if (const auto* assign = std::get_if<MirAssign>(&stmt.node)) {
            tick();
            store(assign->target, eval(assign->value));
            return;
        }
        if (const auto* branch = std::get_if<MirIf>(&stmt.node)) {
            tick();
            if (eval_condition(branch->condition))
                exec_block(branch->then_branch);
            else
                exec_block(branch->else_branch);
            return;
        }
        if (const auto* loop = std::get_if<MirWhile>(&stmt.node)) {
            tick();
            // A nonempty body always consumes steps; an empty body must
            // burn the budget itself so a stuck loop surfaces as step_limit
            // instead of hanging.
            while (eval_condition(loop->condition)) {
                if (loop->body.empty())
                    tick();
                else
                    exec_block(loop->body);
            }
            return;
        }
        if (const auto* loop = std::get_if<MirFor>(&stmt.node)) {
            tick();
            BigInt n = eval(loop->count).number.mantissa_at_scale(0);
            if (loop->body.empty())
                return; // iterating an empty body has no observable effect
            for (BigInt i = 0; i < n; ++i)
                exec_block(loop->body);
            return;
        }
        if (const auto* call = std::get_if<MirCall>(&stmt.node)) {
            tick();
            exec_block(ir_.find_function(call->target)->body);
            return;
        }
        if (const auto* print = std::get_if<MirPrint>(&stmt.node)) {
            tick();
            trace_.outputs.push_back(print_text(print->value));
            return;
        }
        if (const auto* read = std::get_if<MirRead>(&stmt.node)) {
            tick();
            read_into(read->target);
            return;
        }
        tick(); // halt
        throw Halt{};
    }

    std::string print_text(const ExprRef& expr) {
        if (const auto* var = std::get_if<VarRef>(&expr->node)) {
            const Slot& s = slot(var->name);
            if (s.picture.kind == PictureKind::numeric)
                return canonical_decimal_text(s.number);
            return s.text;
        }
        if (const auto* dec = std::get_if<DecimalLit>(&expr->node))
            return canonical_decimal_text(dec->value);
        if (const auto* str = std::get_if<StringLit>(&expr->node))
            return str->value;
        EvalValue value = eval(expr);
        return value.is_text ? value.text : value.number.decimal_text(18);
    }

    void read_into(const std::string& target) {
        if (next_input_ >= inputs_.size())
            throw Abort{TraceError::input_exhausted};
        const std::string& text = inputs_[next_input_++];
        Slot& s = slot(target);
        if (s.picture.kind == PictureKind::numeric) {
            auto value = parse_decimal_text(text);
            if (!value)
                throw Abort{TraceError::input_exhausted};
            s.number = store_decimal(Rational::from_decimal(*value), s.picture);
        } else {
            s.text = store_string(text, s.picture.width);
        }
    }

    const ModernIR& ir_;
    const std::vector<std::string>& inputs_;
    std::size_t next_input_ = 0;
    std::unordered_map<std::string, Slot> slots_;
    ExecutionTrace trace_;
};

} // namespace

ExecutionTrace run_ir(const ModernIR& ir, const std::vector<std::string>& inputs) {
    return IrInterp(ir, inputs).run();
}

} // namespace mfmod
