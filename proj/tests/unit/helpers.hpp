#pragma once

#include <string>
#include <vector>

#include "mfmod/parser.hpp"
#include "mfmod/pipeline.hpp"
#include "mfmod/source.hpp"
#include "mfmod/validate.hpp"

#include <doctest.h>

namespace testutil {

inline std::string tests_root() { return MFMOD_TESTS_DIR; }

inline std::string corpus_path(const std::string& name) {
    return tests_root() + "/corpus/" + name + ".cbl";
}

inline std::string fixture_path(const std::string& name) {
    return tests_root() + "/fixtures/" + name + ".graph.json";
}

inline std::string data_path(const std::string& name) {
    return tests_root() + "/data/" + name;
}

// Corpus programs in name order; the small ones carry graph fixtures.
inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "audit",   "batchsum", "billing", "census",  "grades",  "interest",
        "inventory", "invoice", "ledger",  "metrics", "payroll", "pricing",
        "queue",   "roster",   "savings", "shipping",
    };
    return names;
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {
        "audit",  "billing", "census",  "grades", "interest", "inventory",
        "invoice", "ledger",  "payroll", "queue",  "savings",  "shipping",
    };
    return names;
}

inline mfmod::Program parse_text(const std::string& text) {
    mfmod::SourceUnit unit("test.cbl", text);
    mfmod::ParseResult result = mfmod::parse(unit);
    REQUIRE_MESSAGE(result.program.has_value(),
                    "test program failed to parse: " << text.substr(0, 80));
    std::vector<mfmod::Diagnostic> semantic = mfmod::validate(*result.program);
    REQUIRE_MESSAGE(!mfmod::has_errors(semantic), "test program failed validation");
    return std::move(*result.program);
}

inline mfmod::Program load_corpus(const std::string& name) {
    return parse_text(mfmod::read_text_file(corpus_path(name)));
}

} // namespace testutil
