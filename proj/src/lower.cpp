#include <algorithm>
#include <cctype>

#include "mfmod/errors.hpp"
#include "mfmod/transform.hpp"

namespace mfmod {

std::string mangle_item(const std::string& name) {
    std::string out;
    for (char c : name)
        out += c == '-' ? '_' : static_cast<char>(std::tolower(
                                    static_cast<unsigned char>(c)));
    return out;
}

std::string mangle_paragraph(const std::string& name) {
    return "p_" + mangle_item(name);
}

std::string demangle_item(const std::string& name) {
    std::string out;
    for (char c : name)
        out += c == '_' ? '-' : static_cast<char>(std::toupper(
                                    static_cast<unsigned char>(c)));
    return out;
}

std::string demangle_function(const std::string& name) {
    if (name.rfind("p_", 0) == 0)
        return demangle_item(name.substr(2));
    return demangle_item(name);
}

namespace {

class Lowerer {
public:
    explicit Lowerer(const Program& program) : program_(program) {}

    TransformCandidate run() {
        TransformCandidate candidate;
        rule("unit-from-program-id");
        candidate.ir.unit_name = program_.program_id;
        for (const auto& item : program_.data_items) {
            rule("global-from-item");
            candidate.ir.globals.push_back(lower_item(item));
        }
        for (const auto& para : program_.paragraphs) {
            rule("function-per-paragraph");
            MirFunction fn;
            fn.name = mangle_paragraph(para.name);
            fn.body = lower_block(para.statements);
            candidate.ir.functions.push_back(std::move(fn));
        }
        rule("entry-fallthrough-calls");
        MirFunction entry;
        entry.name = "main";
        for (const auto& para : program_.paragraphs) {
            MirStmt stmt;
            stmt.node = MirCall{mangle_paragraph(para.name)};
            entry.body.push_back(std::move(stmt));
        }
        candidate.ir.functions.push_back(std::move(entry));
        candidate.provenance = Provenance::rule_engine;
        candidate.rule_trace = std::move(trace_);
        return candidate;
    }

private:
    void rule(const std::string& id) {
        if (std::find(trace_.begin(), trace_.end(), id) == trace_.end())
            trace_.push_back(id);
    }

    MirGlobal lower_item(const DataItem& item) {
        MirGlobal global;
        global.name = mangle_item(item.name);
        if (item.picture.kind == PictureKind::numeric) {
            global.type.kind = MirTypeKind::decimal_type;
            global.type.precision = item.picture.total_digits();
            global.type.scale = item.picture.digits_after;
            global.type.is_signed = item.picture.is_signed;
        } else {
            global.type.kind = MirTypeKind::string_type;
            global.type.width = item.picture.width;
        }
        if (item.initial_value)
            global.initial = lower_expr(*item.initial_value);
        else if (global.type.kind == MirTypeKind::decimal_type)
            global.initial = make_decimal(Decimal{0, 0});
        else
            global.initial = make_string("");
        return global;
    }

    ExprRef lower_expr(const ExprRef& expr) {
        if (const auto* var = std::get_if<VarRef>(&expr->node))
            return make_var(mangle_item(var->name));
        if (const auto* unary = std::get_if<UnaryExpr>(&expr->node))
            return make_unary(unary->op, lower_expr(unary->operand));
        if (const auto* bin = std::get_if<BinaryExpr>(&expr->node))
            return make_binary(bin->op, lower_expr(bin->lhs), lower_expr(bin->rhs));
        return expr; // literals carry over unchanged
    }

    std::vector<MirStmt> lower_block(const std::vector<Stmt>& statements) {
        std::vector<MirStmt> out;
        for (const auto& stmt : statements)
            lower_stmt(stmt, out);
        return out;
    }

    void push_assign(std::vector<MirStmt>& out, std::string target, ExprRef value) {
        MirStmt stmt;
        stmt.node = MirAssign{std::move(target), std::move(value)};
        out.push_back(std::move(stmt));
    }

    void lower_stmt(const Stmt& stmt, std::vector<MirStmt>& out) {
        if (const auto* move = std::get_if<MoveStmt>(&stmt.node)) {
            rule("move-to-assign");
            ExprRef source = lower_expr(move->source);
            for (const auto& target : move->targets)
                push_assign(out, mangle_item(target), source);
            return;
        }
        if (const auto* compute = std::get_if<ComputeStmt>(&stmt.node)) {
            rule("compute-to-assign");
            push_assign(out, mangle_item(compute->target), lower_expr(compute->expr));
            return;
        }
        if (const auto* arith = std::get_if<ArithStmt>(&stmt.node)) {
            lower_arith(*arith, out);
            return;
        }
        if (const auto* branch = std::get_if<IfStmt>(&stmt.node)) {
            rule("if-to-if");
            MirIf node;
            node.condition = lower_expr(branch->condition);
            node.then_branch = lower_block(branch->then_branch);
            node.else_branch = lower_block(branch->else_branch);
            MirStmt lowered;
            lowered.node = std::move(node);
            out.push_back(std::move(lowered));
            return;
        }
        if (const auto* perform = std::get_if<PerformStmt>(&stmt.node)) {
            lower_perform(*perform, out);
            return;
        }
        if (const auto* display = std::get_if<DisplayStmt>(&stmt.node)) {
            rule("display-to-print");
            for (const auto& operand : display->operands) {
                MirStmt lowered;
                lowered.node = MirPrint{lower_expr(operand)};
                out.push_back(std::move(lowered));
            }
            return;
        }
        if (const auto* accept = std::get_if<AcceptStmt>(&stmt.node)) {
            rule("accept-to-read");
            MirStmt lowered;
            lowered.node = MirRead{mangle_item(accept->target)};
            out.push_back(std::move(lowered));
            return;
        }
        rule("stop-to-halt");
        MirStmt lowered;
        lowered.node = MirHalt{};
        out.push_back(std::move(lowered));
    }

    // One assignment per target; the stored value is the leftmost operand
    // of the generated expression, so in-place semantics are explicit.
    void lower_arith(const ArithStmt& arith, std::vector<MirStmt>& out) {
        BinaryOp op;
        switch (arith.verb) {
        case ArithVerb::add:
            rule("add-to-assign");
            op = BinaryOp::add;
            break;
        case ArithVerb::subtract:
            rule("subtract-to-assign");
            op = BinaryOp::sub;
            break;
        case ArithVerb::multiply:
            rule("multiply-to-assign");
            op = BinaryOp::mul;
            break;
        default:
            rule("divide-to-assign");
            op = BinaryOp::div;
            break;
        }
        for (const auto& target : arith.targets) {
            std::string name = mangle_item(target);
            ExprRef value = make_var(name);
            for (const auto& operand : arith.operands)
                value = make_binary(op, value, lower_expr(operand));
            push_assign(out, name, value);
        }
    }

    void lower_perform(const PerformStmt& perform, std::vector<MirStmt>& out) {
        MirStmt call;
        call.node = MirCall{mangle_paragraph(perform.target)};
        if (perform.kind == PerformKind::plain) {
            rule("perform-to-call");
            out.push_back(std::move(call));
            return;
        }
        if (perform.kind == PerformKind::times) {
            rule("perform-times-to-for");
            MirFor node;
            node.count = lower_expr(perform.count);
            node.body.push_back(std::move(call));
            MirStmt lowered;
            lowered.node = std::move(node);
            out.push_back(std::move(lowered));
            return;
        }
        rule("perform-until-to-while");
        MirWhile node;
        node.condition =
            make_unary(UnaryOp::logical_not, lower_expr(perform.condition));
        node.body.push_back(std::move(call));
        MirStmt lowered;
        lowered.node = std::move(node);
        out.push_back(std::move(lowered));
    }

    const Program& program_;
    std::vector<std::string> trace_;
};

// ----- counted-for to while rewrite -----

class ForToWhile {
public:
    explicit ForToWhile(ModernIR ir) : ir_(std::move(ir)) {}

    bool apply() {
        for (auto& fn : ir_.functions)
            rewrite_block(fn.body);
        for (const auto& global : new_globals_)
            ir_.globals.push_back(global);
        return counter_ > 0;
    }

    ModernIR take() { return std::move(ir_); }

private:
    void rewrite_block(std::vector<MirStmt>& body) {
        std::vector<MirStmt> out;
        for (auto& stmt : body) {
            if (auto* branch = std::get_if<MirIf>(&stmt.node)) {
                rewrite_block(branch->then_branch);
                rewrite_block(branch->else_branch);
                out.push_back(std::move(stmt));
            } else if (auto* loop = std::get_if<MirWhile>(&stmt.node)) {
                rewrite_block(loop->body);
                out.push_back(std::move(stmt));
            } else if (auto* loop = std::get_if<MirFor>(&stmt.node)) {
                rewrite_block(loop->body);
                rewrite_for(*loop, out);
            } else {
                out.push_back(std::move(stmt));
            }
        }
        body = std::move(out);
    }

    // The bound is snapshotted before the loop so a body that writes the
    // original count variable cannot change the iteration count.
    void rewrite_for(MirFor& loop, std::vector<MirStmt>& out) {
        ++counter_;
        std::string limit = "_fl" + std::to_string(counter_);
        std::string ctr = "_fc" + std::to_string(counter_);
        MirType counter_type{MirTypeKind::decimal_type, 18, 0, true, 0};
        new_globals_.push_back(
            MirGlobal{limit, counter_type, make_decimal(Decimal{0, 0})});
        new_globals_.push_back(
            MirGlobal{ctr, counter_type, make_decimal(Decimal{0, 0})});

        MirStmt snap;
        snap.node = MirAssign{limit, loop.count};
        out.push_back(std::move(snap));
        MirStmt zero;
        zero.node = MirAssign{ctr, make_decimal(Decimal{0, 0})};
        out.push_back(std::move(zero));

        MirWhile node;
        node.condition = make_binary(BinaryOp::lt, make_var(ctr), make_var(limit));
        node.body = std::move(loop.body);
        MirStmt incr;
        incr.node = MirAssign{
            ctr, make_binary(BinaryOp::add, make_var(ctr),
                             make_decimal(Decimal{1, 0}))};
        node.body.push_back(std::move(incr));
        MirStmt lowered;
        lowered.node = std::move(node);
        out.push_back(std::move(lowered));
    }

    ModernIR ir_;
    std::vector<MirGlobal> new_globals_;
    int counter_ = 0;
};

// ----- consecutive add/subtract fusing -----

bool references(const ExprRef& expr, const std::string& name) {
    std::vector<std::string> vars;
    collect_vars(expr, vars);
    return std::find(vars.begin(), vars.end(), name) != vars.end();
}

// Matches `x = x <op> e` where op is + or -.
bool chain_head(const MirStmt& stmt, std::string& target, const BinaryExpr*& bin) {
    const auto* assign = std::get_if<MirAssign>(&stmt.node);
    if (!assign)
        return false;
    const auto* value = std::get_if<BinaryExpr>(&assign->value->node);
    if (!value || (value->op != BinaryOp::add && value->op != BinaryOp::sub))
        return false;
    const auto* base = std::get_if<VarRef>(&value->lhs->node);
    if (!base || base->name != assign->target)
        return false;
    target = assign->target;
    bin = value;
    return true;
}

class FuseChains {
public:
    explicit FuseChains(ModernIR ir) : ir_(std::move(ir)) {}

    bool apply() {
        for (auto& fn : ir_.functions)
            rewrite_block(fn.body);
        return fused_;
    }

    ModernIR take() { return std::move(ir_); }

private:
    void rewrite_block(std::vector<MirStmt>& body) {
        for (auto& stmt : body) {
            if (auto* branch = std::get_if<MirIf>(&stmt.node)) {
                rewrite_block(branch->then_branch);
                rewrite_block(branch->else_branch);
            } else if (auto* loop = std::get_if<MirWhile>(&stmt.node)) {
                rewrite_block(loop->body);
            } else if (auto* loop = std::get_if<MirFor>(&stmt.node)) {
                rewrite_block(loop->body);
            }
        }
        std::vector<MirStmt> out;
        std::size_t i = 0;
        while (i < body.size()) {
            std::string target;
            const BinaryExpr* head = nullptr;
            if (!chain_head(body[i], target, head)) {
                out.push_back(std::move(body[i]));
                ++i;
                continue;
            }
            ExprRef fused = std::get_if<MirAssign>(&body[i].node)->value;
            std::size_t j = i + 1;
            while (j < body.size()) {
                std::string next_target;
                const BinaryExpr* next = nullptr;
                // Later increments must not read the accumulator, since the
                // fused expression evaluates them against the initial value.
                if (!chain_head(body[j], next_target, next) ||
                    next_target != target || references(next->rhs, target))
                    break;
                fused = make_binary(next->op, fused, next->rhs);
                ++j;
            }
            if (j > i + 1) {
                fused_ = true;
                MirStmt merged;
                merged.node = MirAssign{target, fused};
                out.push_back(std::move(merged));
            } else {
                out.push_back(std::move(body[i]));
            }
            i = j;
        }
        body = std::move(out);
    }

    ModernIR ir_;
    bool fused_ = false;
};

} // namespace

std::vector<TransformCandidate> lower(const Program& program) {
    // The vector reallocates as variants land, so the baseline is copied up
    // front instead of referenced in place.
    const TransformCandidate baseline = Lowerer(program).run();
    std::vector<TransformCandidate> candidates;
    candidates.push_back(baseline);

    ForToWhile for_rewrite(baseline.ir);
    if (for_rewrite.apply()) {
        TransformCandidate variant;
        variant.ir = for_rewrite.take();
        variant.provenance = Provenance::rule_engine;
        variant.rule_trace = baseline.rule_trace;
        variant.rule_trace.push_back("for-to-while");
        candidates.push_back(std::move(variant));
    }

    FuseChains fuse(baseline.ir);
    if (fuse.apply()) {
        TransformCandidate variant;
        variant.ir = fuse.take();
        variant.provenance = Provenance::rule_engine;
        variant.rule_trace = baseline.rule_trace;
        variant.rule_trace.push_back("fuse-arith-chains");
        candidates.push_back(std::move(variant));
    }
    return candidates;
}

std::size_t select(const std::vector<TransformCandidate>& candidates,
                   const std::vector<DeviationScores>& scores) {
    if (candidates.empty() || candidates.size() != scores.size())
        throw Error("empty-candidates",
                    "select requires matching nonempty candidate and score lists");
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i].e_trans < scores[best].e_trans)
            best = i;
    return best;
}

} // namespace mfmod
