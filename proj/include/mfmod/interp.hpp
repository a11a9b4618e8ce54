#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfmod/ast.hpp"
#include "mfmod/mir.hpp"

namespace mfmod {

// The two interpreters count the same number of steps for a program and its
// baseline lowering, statement for statement, so step totals are comparable.
inline constexpr std::uint64_t kStepBudget = 1'000'000;

enum class TraceError { none, div_zero, step_limit, input_exhausted };

std::string trace_error_name(TraceError error);

struct ExecutionTrace {
    std::vector<std::string> outputs; // one entry per displayed/printed value
    std::uint64_t steps = 0;
    bool halted = false; // true on normal termination, false on trace error
    TraceError error = TraceError::none;
};

// Executes a validated source program against the given input literals.
ExecutionTrace run_source(const Program& program,
                          const std::vector<std::string>& inputs);

// Executes a checked IR unit against the given input literals.
ExecutionTrace run_ir(const ModernIR& ir, const std::vector<std::string>& inputs);

// Fixed-width string storage: truncates to width or pads right with spaces.
std::string store_string(const std::string& value, int width);

// Source-level comparison rule for strings: the shorter operand is padded
// with trailing spaces before a bytewise comparison.
int compare_padded(const std::string& a, const std::string& b);

} // namespace mfmod
