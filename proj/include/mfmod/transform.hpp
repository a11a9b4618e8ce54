#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfmod/ast.hpp"
#include "mfmod/mir.hpp"
#include "mfmod/testgen.hpp"

namespace mfmod {

enum class Provenance { rule_engine, external_backend };

struct TransformCandidate {
    ModernIR ir;
    Provenance provenance = Provenance::rule_engine;
    std::vector<std::string> rule_trace; // nonempty for rule-engine candidates
};

struct TransformWeights {
    double alpha = 0.5;
    double beta = 0.5;
};

// Throws Error("bad-weights") unless alpha, beta >= 0 and alpha + beta = 1.
TransformWeights make_weights(double alpha, double beta);

struct DeviationScores {
    double s_d = 0.0;    // structural deviation, in [0,1]
    double p_d = 0.0;    // performance deviation, >= 0
    double e_trans = 0.0;
};

// Name mapping between source identifiers and IR identifiers.
std::string mangle_item(const std::string& name);      // X-TOT -> x_tot
std::string mangle_paragraph(const std::string& name); // CALC -> p_calc
std::string demangle_function(const std::string& name);
std::string demangle_item(const std::string& name);

// Lowers a validated program. The first candidate is the baseline rule-set
// output; rewrite variants follow when their rewrite applies. Ordering is
// deterministic.
std::vector<TransformCandidate> lower(const Program& program);

// Structural deviation: Dice dissimilarity between the original dependency
// edges and the candidate's call/data edges, after name demangling.
// Performance deviation: relative step-count difference over the tests.
// Throws Error("scoring") naming the failing test if a run cannot complete.
DeviationScores score_candidate(const TransformCandidate& candidate,
                                const Program& original,
                                const TransformWeights& weights,
                                const std::vector<TestCase>& tests);

// Index of the minimal e_trans; ties break to the lowest index.
// Throws Error("empty-candidates") on empty or mismatched inputs.
std::size_t select(const std::vector<TransformCandidate>& candidates,
                   const std::vector<DeviationScores>& scores);

} // namespace mfmod
