#include <cmath>
#include <set>
#include <sstream>

#include "mfmod/depgraph.hpp"
#include "mfmod/errors.hpp"
#include "mfmod/interp.hpp"
#include "mfmod/transform.hpp"

namespace mfmod {

TransformWeights make_weights(double alpha, double beta) {
    if (!(alpha >= 0.0) || !(beta >= 0.0) || std::abs(alpha + beta - 1.0) > 1e-9) {
        std::ostringstream message;
        message << "weights must be nonnegative and sum to 1, got alpha=" << alpha
                << " beta=" << beta;
        throw Error("bad-weights", message.str());
    }
    return TransformWeights{alpha, beta};
}

namespace {

struct FunctionAccesses {
    std::set<std::string> reads;
    std::set<std::string> writes;
    std::set<std::string> calls;
};

void collect_expr_vars(const ExprRef& expr, std::set<std::string>& out) {
    std::vector<std::string> names;
    collect_vars(expr, names);
    out.insert(names.begin(), names.end());
}

void scan_ir_block(const std::vector<MirStmt>& body, FunctionAccesses& acc) {
    for (const auto& stmt : body) {
        if (const auto* assign = std::get_if<MirAssign>(&stmt.node)) {
            acc.writes.insert(assign->target);
            collect_expr_vars(assign->value, acc.reads);
        } else if (const auto* branch = std::get_if<MirIf>(&stmt.node)) {
            collect_expr_vars(branch->condition, acc.reads);
            scan_ir_block(branch->then_branch, acc);
            scan_ir_block(branch->else_branch, acc);
        } else if (const auto* loop = std::get_if<MirWhile>(&stmt.node)) {
            collect_expr_vars(loop->condition, acc.reads);
            scan_ir_block(loop->body, acc);
        } else if (const auto* counted = std::get_if<MirFor>(&stmt.node)) {
            collect_expr_vars(counted->count, acc.reads);
            scan_ir_block(counted->body, acc);
        } else if (const auto* call = std::get_if<MirCall>(&stmt.node)) {
            acc.calls.insert(call->target);
        } else if (const auto* print = std::get_if<MirPrint>(&stmt.node)) {
            collect_expr_vars(print->value, acc.reads);
        } else if (const auto* read = std::get_if<MirRead>(&stmt.node)) {
            acc.writes.insert(read->target);
        }
    }
}

// Dependency edges of the candidate, in the vocabulary of the source graph.
// The entry function realizes top-level fall-through, which is not a
// dependency, so its calls are excluded just as build_graph excludes the
// implicit paragraph sequence.
std::set<std::string> candidate_edge_keys(const ModernIR& ir) {
    std::vector<std::string> names;
    std::map<std::string, FunctionAccesses> accesses;
    for (const auto& fn : ir.functions) {
        if (fn.name == "main") {
            continue;
        }
        FunctionAccesses acc;
        scan_ir_block(fn.body, acc);
        names.push_back(fn.name);
        accesses.emplace(fn.name, std::move(acc));
    }

    std::set<std::string> keys;
    for (const auto& from : names) {
        const auto& acc = accesses.at(from);
        for (const auto& callee : acc.calls) {
            GraphEdge edge{demangle_function(from), demangle_function(callee),
                           EdgeLabel::control, ""};
            keys.insert(edge_key(edge));
        }
        for (const auto& to : names) {
            if (from == to) {
                continue;
            }
            for (const auto& item : acc.writes) {
                if (accesses.at(to).reads.count(item) > 0) {
                    GraphEdge edge{demangle_function(from), demangle_function(to),
                                   EdgeLabel::data, demangle_item(item)};
                    keys.insert(edge_key(edge));
                }
            }
        }
    }
    return keys;
}

std::set<std::string> original_edge_keys(const Program& program) {
    std::set<std::string> keys;
    for (const auto& edge : build_graph(program).edges) {
        keys.insert(edge_key(edge));
    }
    return keys;
}

double dice_dissimilarity(const std::set<std::string>& a,
                          const std::set<std::string>& b) {
    if (a.empty() && b.empty()) {
        return 0.0;
    }
    std::size_t shared = 0;
    for (const auto& key : a) {
        shared += b.count(key);
    }
    return 1.0 - 2.0 * static_cast<double>(shared) /
                     static_cast<double>(a.size() + b.size());
}

} // namespace

DeviationScores score_candidate(const TransformCandidate& candidate,
                                const Program& original,
                                const TransformWeights& weights,
                                const std::vector<TestCase>& tests) {
    DeviationScores scores;
    scores.s_d =
        dice_dissimilarity(original_edge_keys(original), candidate_edge_keys(candidate.ir));

    std::uint64_t steps_original = 0;
    std::uint64_t steps_candidate = 0;
    for (const auto& test : tests) {
        try {
            steps_original += run_source(original, test.inputs).steps;
            steps_candidate += run_ir(candidate.ir, test.inputs).steps;
        } catch (const std::exception& failure) {
            std::ostringstream message;
            message << "test case " << test.id << " failed to execute: "
                    << failure.what();
            throw ScoringError(message.str());
        }
    }
    const std::uint64_t gap = steps_candidate > steps_original
                                  ? steps_candidate - steps_original
                                  : steps_original - steps_candidate;
    scores.p_d = static_cast<double>(gap) /
                 static_cast<double>(std::max<std::uint64_t>(steps_original, 1));
    scores.e_trans = weights.alpha * scores.s_d + weights.beta * scores.p_d;
    return scores;
}

} // namespace mfmod
