#include "mfmod/verify.hpp"

#include <sstream>

namespace mfmod {

bool traces_match(const ExecutionTrace& a, const ExecutionTrace& b) {
    return a.outputs == b.outputs && a.halted == b.halted && a.error == b.error;
}

VerificationReport verify_candidate(const Program& program, const ModernIR& ir,
                                    const std::vector<TestCase>& tests) {
    VerificationReport report;
    report.total_cases = tests.size();
    for (const auto& test : tests) {
        ExecutionTrace original = run_source(program, test.inputs);
        ExecutionTrace candidate = run_ir(ir, test.inputs);
        report.steps_original += original.steps;
        report.steps_candidate += candidate.steps;
        if (traces_match(original, candidate)) {
            ++report.matching_cases;
        } else {
            report.mismatches.push_back(
                {test.id, test.inputs, std::move(original), std::move(candidate)});
        }
    }
    if (report.total_cases > 0) {
        report.accuracy_index = 100.0 * static_cast<double>(report.matching_cases) /
                                static_cast<double>(report.total_cases);
    }
    return report;
}

namespace {

nlohmann::json trace_to_json(const ExecutionTrace& trace) {
    return {{"outputs", trace.outputs},
            {"steps", trace.steps},
            {"halted", trace.halted},
            {"error", trace_error_name(trace.error)}};
}

} // namespace

nlohmann::json verification_to_json(const VerificationReport& report) {
    nlohmann::json mismatches = nlohmann::json::array();
    for (const auto& mismatch : report.mismatches) {
        mismatches.push_back({{"case", mismatch.case_id},
                              {"inputs", mismatch.inputs},
                              {"original", trace_to_json(mismatch.original)},
                              {"candidate", trace_to_json(mismatch.candidate)}});
    }
    return {{"total_cases", report.total_cases},
            {"matching_cases", report.matching_cases},
            {"accuracy_index", report.accuracy_index},
            {"mismatches", std::move(mismatches)},
            {"steps_original", report.steps_original},
            {"steps_candidate", report.steps_candidate}};
}

std::string mismatch_text(const CaseMismatch& mismatch) {
    std::ostringstream out;
    out << "case " << mismatch.case_id << " diverged\n";
    out << "  inputs:";
    for (const auto& input : mismatch.inputs) {
        out << " \"" << input << "\"";
    }
    out << "\n";
    const std::size_t rows =
        std::max(mismatch.original.outputs.size(), mismatch.candidate.outputs.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string left = i < mismatch.original.outputs.size()
                                     ? "\"" + mismatch.original.outputs[i] + "\""
                                     : "<none>";
        const std::string right = i < mismatch.candidate.outputs.size()
                                      ? "\"" + mismatch.candidate.outputs[i] + "\""
                                      : "<none>";
        out << "  output " << i << ": " << left
            << (left == right ? "  ==  " : "  !=  ") << right << "\n";
    }
    out << "  halted: " << (mismatch.original.halted ? "true" : "false") << " / "
        << (mismatch.candidate.halted ? "true" : "false") << "\n";
    out << "  error: " << trace_error_name(mismatch.original.error) << " / "
        << trace_error_name(mismatch.candidate.error) << "\n";
    return out.str();
}

} // namespace mfmod
