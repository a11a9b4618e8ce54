#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfmod/ast.hpp"
#include "mfmod/interp.hpp"
#include "mfmod/mir.hpp"
#include "mfmod/testgen.hpp"

namespace mfmod {

struct CaseMismatch {
    std::size_t case_id = 0;
    std::vector<std::string> inputs;
    ExecutionTrace original;
    ExecutionTrace candidate;
};

struct VerificationReport {
    std::size_t total_cases = 0;
    std::size_t matching_cases = 0;
    // Percentage of cases where both executions agree. An empty test set
    // counts as fully accurate.
    double accuracy_index = 100.0;
    std::vector<CaseMismatch> mismatches;
    std::uint64_t steps_original = 0;
    std::uint64_t steps_candidate = 0;
};

// A case matches when the output sequences are element-wise equal, the halt
// status is equal and the trace error kind is equal.
bool traces_match(const ExecutionTrace& a, const ExecutionTrace& b);

VerificationReport verify_candidate(const Program& program, const ModernIR& ir,
                                    const std::vector<TestCase>& tests);

nlohmann::json verification_to_json(const VerificationReport& report);

// Side-by-side rendering of one divergence, for diagnostics output.
std::string mismatch_text(const CaseMismatch& mismatch);

} // namespace mfmod
