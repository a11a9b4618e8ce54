#include <unordered_map>

#include "mfmod/errors.hpp"
#include "mfmod/interp.hpp"

namespace mfmod {

std::string trace_error_name(TraceError error) {
    switch (error) {
    case TraceError::none: return "none";
    case TraceError::div_zero: return "div-zero";
    case TraceError::step_limit: return "step-limit";
    case TraceError::input_exhausted: return "input-exhausted";
    }
    return "none";
}

std::string store_string(const std::string& value, int width) {
    std::string out = value.substr(0, static_cast<std::size_t>(width));
    out.resize(static_cast<std::size_t>(width), ' ');
    return out;
}

int compare_padded(const std::string& a, const std::string& b) {
    std::size_t width = std::max(a.size(), b.size());
    std::string lhs = a, rhs = b;
    lhs.resize(width, ' ');
    rhs.resize(width, ' ');
    return lhs.compare(rhs);
}

namespace {

struct Abort {
    TraceError error;
};

struct Halt {};

// Runtime value of an expression: exact rational for numeric results,
// text for string results.
struct EvalValue {
    bool is_text = false;
    Rational number;
    std::string text;
};

struct Field {
    PictureSpec picture;
    Decimal number;   // numeric fields
    std::string text; // alphanumeric fields, always exactly width bytes
};

class SourceInterp {
public:
    SourceInterp(const Program& program, const std::vector<std::string>& inputs)
        : program_(program), inputs_(inputs) {}

    ExecutionTrace run() {
        init_fields();
        try {
            for (const auto& para : program_.paragraphs) {
                tick(); // fall-through transition into the paragraph
                exec_block(para.statements);
            }
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

    void init_fields() {
        for (const auto& item : program_.data_items) {
            Field field;
            field.picture = item.picture;
            if (item.picture.kind == PictureKind::numeric) {
                Decimal initial{0, item.picture.digits_after};
                if (item.initial_value) {
                    const auto& lit = std::get<DecimalLit>((*item.initial_value)->node);
                    initial = store_decimal(Rational::from_decimal(lit.value),
                                            item.picture);
                }
                field.number = initial;
            } else {
                std::string initial;
                if (item.initial_value)
                    initial = std::get<StringLit>((*item.initial_value)->node).value;
                field.text = store_string(initial, item.picture.width);
            }
            fields_.emplace(item.name, std::move(field));
        }
    }

    Field& field(const std::string& name) { return fields_.at(name); }

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
            const Field& f = field(var->name);
            EvalValue value;
            if (f.picture.kind == PictureKind::numeric) {
                value.number = Rational::from_decimal(f.number);
            } else {
                value.is_text = true;
                value.text = f.text;
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
            value.number = eval_condition(unary->operand)
                               ? Rational::from_int(0)
                               : Rational::from_int(1);
            return value; // only reachable under NOT, consumed as a condition
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
        const auto* bin_ptr = std::get_if<BinaryExpr>(&expr->node);
        if (!bin_ptr || !is_comparison(bin_ptr->op))
            return !eval(expr).number.is_zero();
        const auto& bin = *bin_ptr;
        EvalValue lhs = eval(bin.lhs);
        EvalValue rhs = eval(bin.rhs);
        int cmp;
        if (lhs.is_text || rhs.is_text)
            cmp = compare_padded(lhs.text, rhs.text);
        else
            cmp = lhs.number < rhs.number ? -1 : (lhs.number == rhs.number ? 0 : 1);
        switch (bin.op) {
        case BinaryOp::eq: return cmp == 0;
        case BinaryOp::ne: return cmp != 0;
        case BinaryOp::lt: return cmp < 0;
        case BinaryOp::le: return cmp <= 0;
        case BinaryOp::gt: return cmp > 0;
        default: return cmp >= 0;
        }
    }

    void store(const std::string& name, const EvalValue& value) {
        Field& f = field(name);
        if (f.picture.kind == PictureKind::numeric)
            f.number = store_decimal(value.number, f.picture);
        else
            f.text = store_string(value.text, f.picture.width);
    }

    void exec_block(const std::vector<Stmt>& statements) {
        for (const auto& stmt : statements)
            exec_stmt(stmt);
    }

    const Paragraph& paragraph(const std::string& name) {
        const Paragraph* para = program_.find_paragraph(name);
        return *para; // resolution guaranteed by upstream validation
    }

    void exec_stmt(const Stmt& stmt) {
        if (const auto* move = std::get_if<MoveStmt>(&stmt.node)) {
            for (const auto& target : move->targets) {
                tick();
                store(target, eval(move->source));
            }
            return;
        }
        if (const auto* compute = std::get_if<ComputeStmt>(&stmt.node)) {
            tick();
            store(compute->target, eval(compute->expr));
            return;
        }
        if (const auto* arith = std::get_if<ArithStmt>(&stmt.node)) {
            BinaryOp op =
                arith->verb == ArithVerb::add        ? BinaryOp::add
                : arith->verb == ArithVerb::subtract ? BinaryOp::sub
                : arith->verb == ArithVerb::multiply ? BinaryOp::mul
                                                     : BinaryOp::div;
            for (const auto& target : arith->targets) {
                tick();
                Rational value = Rational::from_decimal(field(target).number);
                for (const auto& operand : arith->operands) {
                    Rational rhs = eval(operand).number;
                    switch (op) {
                    case BinaryOp::add: value = value + rhs; break;
                    case BinaryOp::sub: value = value - rhs; break;
                    case BinaryOp::mul: value = value * rhs; break;
                    default:
                        try {
                            value = value / rhs;
                        } catch (const Error&) {
                            throw Abort{TraceError::div_zero};
                        }
                        break;
                    }
                }
                EvalValue stored;
                stored.number = value;
                store(target, stored);
            }
            return;
        }
        if (const auto* branch = std::get_if<IfStmt>(&stmt.node)) {
            tick();
            if (eval_condition(branch->condition))
                exec_block(branch->then_branch);
            else
                exec_block(branch->else_branch);
            return;
        }
        if (const auto* perform = std::get_if<PerformStmt>(&stmt.node)) {
            exec_perform(*perform);
            return;
        }
        if (const auto* display = std::get_if<DisplayStmt>(&stmt.node)) {
            for (const auto& operand : display->operands) {
                tick();
                trace_.outputs.push_back(display_text(operand));
            }
            return;
        }
        if (const auto* accept = std::get_if<AcceptStmt>(&stmt.node)) {
            tick();
            read_into(accept->target);
            return;
        }
        tick(); // STOP RUN
        throw Halt{};
    }

    // Displayed values come straight from stored fields or literals, so the
    // text is the exact stored decimal, never a rounded intermediate.
    std::string display_text(const ExprRef& operand) {
        if (const auto* var = std::get_if<VarRef>(&operand->node)) {
            const Field& f = field(var->name);
            if (f.picture.kind == PictureKind::numeric)
                return canonical_decimal_text(f.number);
            return f.text;
        }
        if (const auto* dec = std::get_if<DecimalLit>(&operand->node))
            return canonical_decimal_text(dec->value);
        if (const auto* str = std::get_if<StringLit>(&operand->node))
            return str->value;
        EvalValue value = eval(operand);
        return value.is_text ? value.text : value.number.decimal_text(18);
    }

    void read_into(const std::string& target) {
        if (next_input_ >= inputs_.size())
            throw Abort{TraceError::input_exhausted};
        const std::string& text = inputs_[next_input_++];
        Field& f = field(target);
        if (f.picture.kind == PictureKind::numeric) {
            auto value = parse_decimal_text(text);
            if (!value)
                throw Abort{TraceError::input_exhausted};
            f.number = store_decimal(Rational::from_decimal(*value), f.picture);
        } else {
            f.text = store_string(text, f.picture.width);
        }
    }

    void exec_perform(const PerformStmt& perform) {
        const Paragraph& target = paragraph(perform.target);
        if (perform.kind == PerformKind::plain) {
            tick();
            exec_block(target.statements);
            return;
        }
        if (perform.kind == PerformKind::times) {
            tick();
            BigInt n = eval(perform.count).number.mantissa_at_scale(0);
            for (BigInt i = 0; i < n; ++i) {
                tick();
                exec_block(target.statements);
            }
            return;
        }
        tick();
        while (!eval_condition(perform.condition)) {
            tick();
            exec_block(target.statements);
        }
    }

    const Program& program_;
    const std::vector<std::string>& inputs_;
    std::size_t next_input_ = 0;
    std::unordered_map<std::string, Field> fields_;
    ExecutionTrace trace_;
};

} // namespace

ExecutionTrace run_source(const Program& program,
                          const std::vector<std::string>& inputs) {
    return SourceInterp(program, inputs).run();
}

} // namespace mfmod
