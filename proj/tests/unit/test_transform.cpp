#include <algorithm>
#include <random>
#include <string>

#include "helpers.hpp"

#include "mfmod/errors.hpp"
#include "mfmod/transform.hpp"

using namespace mfmod;

namespace {

bool trace_has(const TransformCandidate& candidate, const std::string& rule) {
    return std::find(candidate.rule_trace.begin(), candidate.rule_trace.end(),
                     rule) != candidate.rule_trace.end();
}

std::vector<TransformCandidate> dummy_candidates(std::size_t n) {
    return std::vector<TransformCandidate>(n);
}

// Independent reading of the selection contract: smallest combined
// deviation wins, earliest index on equality.
std::size_t brute_force_argmin(const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[best])
            best = i;
    return best;
}

const char* kPayrollBaseline =
    "unit PAYROLL;\n"
    "\n"
    "global gross_pay: decimal(7,2) = 0;\n"
    "global tax_rate: decimal(3,2) = 0.15;\n"
    "global tax_due: decimal(7,2) = 0;\n"
    "global net_pay: sdecimal(8,2) = 0;\n"
    "global hours_qty: decimal(3,0) = 0;\n"
    "global rate_amt: decimal(5,2) = 0;\n"
    "global counter: decimal(2,0) = 0;\n"
    "\n"
    "fn p_main_para() {\n"
    "  read(hours_qty);\n"
    "  read(rate_amt);\n"
    "  call p_calc_gross;\n"
    "  call p_calc_tax;\n"
    "  call p_show_result;\n"
    "  halt;\n"
    "}\n"
    "\n"
    "fn p_calc_gross() {\n"
    "  gross_pay = hours_qty * rate_amt;\n"
    "  counter = 0;\n"
    "  for (3) {\n"
    "    call p_bump_counter;\n"
    "  }\n"
    "}\n"
    "\n"
    "fn p_bump_counter() {\n"
    "  counter = counter + 1;\n"
    "}\n"
    "\n"
    "fn p_calc_tax() {\n"
    "  tax_due = gross_pay * tax_rate;\n"
    "  if (tax_due > 500) {\n"
    "    net_pay = gross_pay - tax_due;\n"
    "  } else {\n"
    "    net_pay = gross_pay;\n"
    "    net_pay = net_pay - tax_due;\n"
    "  }\n"
    "}\n"
    "\n"
    "fn p_show_result() {\n"
    "  print(\"GROSS \");\n"
    "  print(gross_pay);\n"
    "  print(\"TAX \");\n"
    "  print(tax_due);\n"
    "  print(\"NET \");\n"
    "  print(net_pay);\n"
    "  print(counter);\n"
    "}\n"
    "\n"
    "fn main() {\n"
    "  call p_main_para;\n"
    "  call p_calc_gross;\n"
    "  call p_bump_counter;\n"
    "  call p_calc_tax;\n"
    "  call p_show_result;\n"
    "}\n";

} // namespace

TEST_CASE("name mangling is deterministic and reversible") {
    CHECK(mangle_item("X-TOT") == "x_tot");
    CHECK(mangle_item("COUNTER") == "counter");
    CHECK(mangle_paragraph("CALC") == "p_calc");
    CHECK(mangle_paragraph("MAIN-PARA") == "p_main_para");
    CHECK(demangle_function("p_main_para") == "MAIN-PARA");
    CHECK(demangle_item("x_tot") == "X-TOT");

    for (const auto& name : testutil::corpus_names()) {
        Program program = testutil::load_corpus(name);
        for (const auto& item : program.items)
            CHECK(demangle_item(mangle_item(item.name)) == item.name);
        for (const auto& paragraph : program.paragraphs)
            CHECK(demangle_function(mangle_paragraph(paragraph.name)) ==
                  paragraph.name);
    }
}

TEST_CASE("the baseline lowering of the payroll program is stable text") {
    Program program = testutil::load_corpus("payroll");
    std::vector<TransformCandidate> candidates = lower(program);
    REQUIRE_FALSE(candidates.empty());
    CHECK(render(candidates[0].ir) == kPayrollBaseline);
    CHECK(candidates[0].provenance == Provenance::rule_engine);
}

TEST_CASE("rule traces name what fired, variants append their rewrite") {
    Program payroll = testutil::load_corpus("payroll");
    std::vector<TransformCandidate> candidates = lower(payroll);
    REQUIRE(candidates.size() == 2);

    const TransformCandidate& baseline = candidates[0];
    REQUIRE_FALSE(baseline.rule_trace.empty());
    CHECK(baseline.rule_trace.front() == "unit-from-program-id");
    for (const char* rule :
         {"global-from-item", "function-per-paragraph", "accept-to-read",
          "move-to-assign", "compute-to-assign", "perform-to-call",
          "perform-times-to-for", "if-to-if", "display-to-print",
          "stop-to-halt", "entry-fallthrough-calls"})
        CHECK_MESSAGE(trace_has(baseline, rule), "missing rule " << rule);
    CHECK_FALSE(trace_has(baseline, "for-to-while"));

    CHECK(candidates[1].rule_trace.back() == "for-to-while");

    Program savings = testutil::load_corpus("savings");
    std::vector<TransformCandidate> fused = lower(savings);
    REQUIRE(fused.size() == 2);
    CHECK(fused[1].rule_trace.back() == "fuse-arith-chains");
}

TEST_CASE("variant counts track which rewrites apply") {
    auto count_of = [](const char* name) {
        return lower(testutil::load_corpus(name)).size();
    };
    CHECK(count_of("payroll") == 2);   // counted loop only
    CHECK(count_of("savings") == 2);   // arithmetic chain only
    CHECK(count_of("pricing") == 3);   // both rewrites apply
    CHECK(count_of("invoice") == 1);   // neither applies
    CHECK(count_of("audit") == 1);
}

TEST_CASE("weights must be a nonnegative unit partition") {
    TransformWeights even = make_weights(0.5, 0.5);
    CHECK(even.alpha == 0.5);
    CHECK(even.beta == 0.5);
    CHECK(make_weights(0.0, 1.0).alpha == 0.0);
    CHECK(make_weights(1.0, 0.0).beta == 0.0);
    CHECK_THROWS_AS(make_weights(-0.1, 1.1), Error);
    CHECK_THROWS_AS(make_weights(0.6, 0.6), Error);
    CHECK_THROWS_AS(make_weights(0.2, 0.2), Error);
    try {
        make_weights(0.7, 0.7);
        FAIL("expected a weight error");
    } catch (const Error& error) {
        CHECK(error.code() == "bad-weights");
    }
}

TEST_CASE("the baseline deviates from its source in nothing") {
    TransformWeights weights = make_weights(0.5, 0.5);
    for (const char* name : {"payroll", "savings", "queue", "roster"}) {
        Program program = testutil::load_corpus(name);
        std::vector<TransformCandidate> candidates = lower(program);
        std::vector<TestCase> tests = generate_tests(program, 20, 42);
        DeviationScores scores =
            score_candidate(candidates[0], program, weights, tests);
        CHECK_MESSAGE(scores.s_d == 0.0, name << " structural deviation");
        CHECK_MESSAGE(scores.p_d == 0.0, name << " performance deviation");
        CHECK_MESSAGE(scores.e_trans == 0.0, name << " combined deviation");
    }
}

TEST_CASE("an edge-free candidate sits at maximal structural deviation") {
    Program program = testutil::load_corpus("payroll");
    TransformCandidate hollow;
    hollow.ir.unit_name = "PAYROLL";
    MirFunction entry;
    entry.name = "main";
    hollow.ir.functions.push_back(std::move(entry));

    DeviationScores scores =
        score_candidate(hollow, program, make_weights(0.25, 0.75), {});
    CHECK(scores.s_d == 1.0);
    CHECK(scores.p_d == 0.0); // no tests ran on either side
    CHECK(scores.e_trans == 0.25);
}

TEST_CASE("a candidate that cannot execute raises a scoring error") {
    Program program = testutil::load_corpus("payroll");
    TransformCandidate broken;
    broken.ir.unit_name = "PAYROLL";
    MirFunction entry;
    entry.name = "main";
    entry.body.push_back(
        MirStmt{MirAssign{"ghost", make_decimal(*parse_decimal_text("1"))}});
    broken.ir.functions.push_back(std::move(entry));

    std::vector<TestCase> tests = {TestCase{0, {}}};
    CHECK_THROWS_AS(
        score_candidate(broken, program, make_weights(0.5, 0.5), tests),
        ScoringError);
}

TEST_CASE("selection takes the least deviation and breaks ties low") {
    std::vector<DeviationScores> scores(3);
    scores[0].e_trans = 0.4;
    scores[1].e_trans = 0.1;
    scores[2].e_trans = 0.2;
    CHECK(select(dummy_candidates(3), scores) == 1);

    scores[2].e_trans = 0.1;
    CHECK(select(dummy_candidates(3), scores) == 1);

    scores[0].e_trans = scores[1].e_trans = scores[2].e_trans = 0.0;
    CHECK(select(dummy_candidates(3), scores) == 0);

    CHECK_THROWS_AS(select({}, {}), Error);
    CHECK_THROWS_AS(select(dummy_candidates(2), scores), Error);
    try {
        select({}, {});
        FAIL("expected an empty-candidates error");
    } catch (const Error& error) {
        CHECK(error.code() == "empty-candidates");
    }
}

TEST_CASE("selection matches brute force and ignores weight scale") {
    std::mt19937_64 engine(4242);
    std::uniform_int_distribution<std::size_t> size(1, 12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> stretch(0.0, 4.0);
    std::uniform_int_distribution<int> dup(0, 4);

    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = size(engine);
        double alpha = unit(engine);
        double beta = 1.0 - alpha;

        std::vector<double> s(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && dup(engine) == 0) {
                // occasional exact duplicates exercise the tie rule
                s[i] = s[i - 1];
                p[i] = p[i - 1];
            } else {
                s[i] = unit(engine);
                p[i] = stretch(engine);
            }
        }

        std::vector<DeviationScores> scores(n);
        std::vector<double> combined(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i].s_d = s[i];
            scores[i].p_d = p[i];
            scores[i].e_trans = alpha * s[i] + beta * p[i];
            combined[i] = alpha * s[i] + beta * p[i];
        }

        std::size_t picked = select(dummy_candidates(n), scores);
        REQUIRE_MESSAGE(picked == brute_force_argmin(combined),
                        "trial " << trial << " disagrees with brute force");

        // Scaling both weights by powers of two is exact in binary floating
        // point, so the ranking must not move at all.
        for (double lambda : {0.25, 2.0, 1024.0}) {
            std::vector<DeviationScores> scaled(n);
            for (std::size_t i = 0; i < n; ++i) {
                scaled[i] = scores[i];
                scaled[i].e_trans = (lambda * alpha) * s[i] + (lambda * beta) * p[i];
            }
            REQUIRE_MESSAGE(select(dummy_candidates(n), scaled) == picked,
                            "trial " << trial << " moved under scale " << lambda);
        }
    }
}
