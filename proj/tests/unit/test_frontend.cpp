#include <algorithm>
#include <random>
#include <string>

#include "helpers.hpp"

#include "mfmod/ast.hpp"
#include "mfmod/parser.hpp"
#include "mfmod/validate.hpp"

using namespace mfmod;

namespace {

ParseResult parse_str(const std::string& text) {
    return parse(SourceUnit("t.cbl", text));
}

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
    return std::any_of(diags.begin(), diags.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

const char* kMinimal =
    "IDENTIFICATION DIVISION.\n"
    "PROGRAM-ID. TINY.\n"
    "PROCEDURE DIVISION.\n"
    "ONLY-PARA.\n"
    "    DISPLAY \"HI\".\n";

} // namespace

TEST_CASE("a minimal program parses without a data division") {
    ParseResult r = parse_str(kMinimal);
    REQUIRE(r.program.has_value());
    CHECK(r.program->name == "TINY");
    CHECK(r.program->items.empty());
    REQUIRE(r.program->paragraphs.size() == 1);
    CHECK(r.program->paragraphs[0].name == "ONLY-PARA");
}

TEST_CASE("identifiers and keywords are case-insensitive, canonically upper") {
    ParseResult r = parse_str("identification division.\n"
                              "program-id. mixed.\n"
                              "data division.\n"
                              "working-storage section.\n"
                              "01 the-count pic 9(3) value 7.\n"
                              "procedure division.\n"
                              "main-para.\n"
                              "    add 1 to The-Count\n"
                              "    display the-COUNT.\n");
    REQUIRE(r.program.has_value());
    CHECK(r.program->name == "MIXED");
    REQUIRE(r.program->items.size() == 1);
    CHECK(r.program->items[0].name == "THE-COUNT");
    CHECK(r.program->paragraphs[0].name == "MAIN-PARA");
}

TEST_CASE("comment lines and blank lines are skipped") {
    ParseResult r = parse_str("* leading comment\n"
                              "IDENTIFICATION DIVISION.\n"
                              "* another remark\n"
                              "PROGRAM-ID. NOTED.\n"
                              "\n"
                              "PROCEDURE DIVISION.\n"
                              "P-ONE.\n"
                              "* inside a paragraph\n"
                              "    DISPLAY \"X\".\n");
    REQUIRE(r.program.has_value());
    CHECK(r.program->paragraphs.size() == 1);
}

TEST_CASE("data items capture pictures and initial values") {
    ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                              "PROGRAM-ID. ITEMS.\n"
                              "DATA DIVISION.\n"
                              "WORKING-STORAGE SECTION.\n"
                              "01 PLAIN-NUM PIC 9(4).\n"
                              "05 SIGNED-NUM PIC S9(3)V99 VALUE -1.25.\n"
                              "01 NAME-TXT PIC X(10) VALUE \"HELLO\".\n"
                              "PROCEDURE DIVISION.\n"
                              "GO-PARA.\n"
                              "    DISPLAY NAME-TXT.\n");
    REQUIRE(r.program.has_value());
    REQUIRE(r.program->items.size() == 3);
    CHECK(r.program->items[0].picture.total_digits() == 4);
    CHECK(r.program->items[1].picture.is_signed);
    CHECK(r.program->items[1].picture.digits_after == 2);
    CHECK(r.program->items[2].picture.kind == PictureKind::alphanumeric);
}

TEST_CASE("each statement form of the subset parses") {
    ParseResult r = parse_str(
        "IDENTIFICATION DIVISION.\n"
        "PROGRAM-ID. VERBS.\n"
        "DATA DIVISION.\n"
        "WORKING-STORAGE SECTION.\n"
        "01 A PIC 9(4).\n"
        "01 B PIC 9(4).\n"
        "01 C PIC 9(4).\n"
        "PROCEDURE DIVISION.\n"
        "MAIN-PARA.\n"
        "    MOVE 1 TO A B\n"
        "    COMPUTE C = (A + B) * 2 - A / 2\n"
        "    ADD 1 2 TO A B\n"
        "    SUBTRACT 1 FROM B\n"
        "    MULTIPLY 2 BY C\n"
        "    DIVIDE 2 INTO A\n"
        "    DIVIDE B BY 3\n"
        "    IF A > 1\n"
        "        DISPLAY \"BIG\"\n"
        "    ELSE\n"
        "        DISPLAY \"SMALL\"\n"
        "    END-IF\n"
        "    PERFORM SUB-PARA\n"
        "    PERFORM SUB-PARA 2 TIMES\n"
        "    PERFORM SUB-PARA A TIMES\n"
        "    PERFORM SUB-PARA UNTIL A NOT < 100\n"
        "    ACCEPT B\n"
        "    DISPLAY \"A=\" A \" B=\" B\n"
        "    STOP RUN.\n"
        "SUB-PARA.\n"
        "    ADD 1 TO A.\n");
    REQUIRE(r.program.has_value());
    CHECK(r.program->paragraphs.size() == 2);
    CHECK(r.program->paragraphs[0].statements.size() == 15);
    CHECK(validate(*r.program).empty());
}

TEST_CASE("GO TO is rejected as an unsupported construct") {
    ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                              "PROGRAM-ID. JUMPY.\n"
                              "PROCEDURE DIVISION.\n"
                              "P-ONE.\n"
                              "    GO TO P-TWO.\n"
                              "P-TWO.\n"
                              "    DISPLAY \"X\".\n");
    CHECK_FALSE(r.program.has_value());
    CHECK(has_code(r.diagnostics, "unsupported-construct"));
}

TEST_CASE("ENVIRONMENT DIVISION is rejected as unsupported") {
    ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                              "PROGRAM-ID. ENVY.\n"
                              "ENVIRONMENT DIVISION.\n"
                              "PROCEDURE DIVISION.\n"
                              "P-ONE.\n"
                              "    DISPLAY \"X\".\n");
    CHECK_FALSE(r.program.has_value());
    CHECK(has_code(r.diagnostics, "unsupported-construct"));
}

TEST_CASE("structural mistakes produce named diagnostics") {
    SUBCASE("duplicate paragraph") {
        ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                                  "PROGRAM-ID. DUPP.\n"
                                  "PROCEDURE DIVISION.\n"
                                  "P-ONE.\n    DISPLAY \"A\".\n"
                                  "P-ONE.\n    DISPLAY \"B\".\n");
        CHECK_FALSE(r.program.has_value());
        CHECK(has_code(r.diagnostics, "dup-paragraph"));
    }
    SUBCASE("duplicate data item") {
        ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                                  "PROGRAM-ID. DUPI.\n"
                                  "DATA DIVISION.\nWORKING-STORAGE SECTION.\n"
                                  "01 A PIC 9(2).\n01 A PIC 9(2).\n"
                                  "PROCEDURE DIVISION.\nP-ONE.\n    DISPLAY A.\n");
        CHECK_FALSE(r.program.has_value());
        CHECK(has_code(r.diagnostics, "dup-data-item"));
    }
    SUBCASE("bad level") {
        ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                                  "PROGRAM-ID. LVL.\n"
                                  "DATA DIVISION.\nWORKING-STORAGE SECTION.\n"
                                  "03 A PIC 9(2).\n"
                                  "PROCEDURE DIVISION.\nP-ONE.\n    DISPLAY A.\n");
        CHECK_FALSE(r.program.has_value());
        CHECK(has_code(r.diagnostics, "bad-level"));
    }
    SUBCASE("bad picture") {
        ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                                  "PROGRAM-ID. PICBAD.\n"
                                  "DATA DIVISION.\nWORKING-STORAGE SECTION.\n"
                                  "01 A PIC 9(19).\n"
                                  "PROCEDURE DIVISION.\nP-ONE.\n    DISPLAY A.\n");
        CHECK_FALSE(r.program.has_value());
        CHECK(has_code(r.diagnostics, "bad-picture"));
    }
    SUBCASE("value out of picture range") {
        ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                                  "PROGRAM-ID. VALBAD.\n"
                                  "DATA DIVISION.\nWORKING-STORAGE SECTION.\n"
                                  "01 A PIC 9(2) VALUE 100.\n"
                                  "PROCEDURE DIVISION.\nP-ONE.\n    DISPLAY A.\n");
        CHECK_FALSE(r.program.has_value());
        CHECK(has_code(r.diagnostics, "bad-value"));
    }
}

TEST_CASE("validation names unresolved and incompatible references") {
    SUBCASE("unknown paragraph") {
        ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                                  "PROGRAM-ID. MISSP.\n"
                                  "PROCEDURE DIVISION.\n"
                                  "P-ONE.\n    PERFORM NOWHERE.\n");
        REQUIRE(r.program.has_value());
        CHECK(has_code(validate(*r.program), "undef-paragraph"));
    }
    SUBCASE("unknown data item") {
        ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                                  "PROGRAM-ID. MISSI.\n"
                                  "PROCEDURE DIVISION.\n"
                                  "P-ONE.\n    DISPLAY GHOST-ITEM.\n");
        REQUIRE(r.program.has_value());
        CHECK(has_code(validate(*r.program), "undef-data-item"));
    }
    SUBCASE("recursive perform chain") {
        ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                                  "PROGRAM-ID. LOOPY.\n"
                                  "PROCEDURE DIVISION.\n"
                                  "P-ONE.\n    PERFORM P-TWO.\n"
                                  "P-TWO.\n    PERFORM P-ONE.\n");
        REQUIRE(r.program.has_value());
        CHECK(has_code(validate(*r.program), "recursive-perform"));
    }
    SUBCASE("numeric arithmetic on an alphanumeric item") {
        ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                                  "PROGRAM-ID. KINDS.\n"
                                  "DATA DIVISION.\nWORKING-STORAGE SECTION.\n"
                                  "01 TXT PIC X(4).\n"
                                  "PROCEDURE DIVISION.\n"
                                  "P-ONE.\n    ADD 1 TO TXT.\n");
        REQUIRE(r.program.has_value());
        CHECK(has_code(validate(*r.program), "kind-mismatch"));
    }
}

TEST_CASE("diagnostics carry line and column positions") {
    ParseResult r = parse_str("IDENTIFICATION DIVISION.\n"
                              "PROGRAM-ID. POSD.\n"
                              "PROCEDURE DIVISION.\n"
                              "P-ONE.\n"
                              "    MOVE TO X.\n");
    CHECK_FALSE(r.program.has_value());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].location.line == 5);
    CHECK(r.diagnostics[0].location.column > 1);
}

TEST_CASE("the whole corpus parses and validates cleanly") {
    for (const auto& name : testutil::corpus_names()) {
        ParseResult r = parse(SourceUnit(name, read_text_file(testutil::corpus_path(name))));
        REQUIRE_MESSAGE(r.program.has_value(), name << " failed to parse");
        CHECK_MESSAGE(validate(*r.program).empty(), name << " failed validation");
        CHECK(r.program->paragraphs.size() >= 3);
    }
}

// Totality: arbitrary bytes must yield a program or error diagnostics,
// never an abort and never both-or-neither.
TEST_CASE("random byte inputs never crash the parser") {
    std::mt19937_64 engine(0xC0B01u);
    std::uniform_int_distribution<int> length(0, 400);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> mode(0, 2);
    const std::string words =
        "IDENTIFICATION DIVISION. PROGRAM-ID PROCEDURE DATA WORKING-STORAGE "
        "SECTION PIC 9(3) X(2) VALUE MOVE TO ADD SUBTRACT FROM MULTIPLY BY "
        "DIVIDE INTO IF ELSE END-IF PERFORM TIMES UNTIL ACCEPT DISPLAY STOP "
        "RUN COMPUTE = + - * / ( ) < > <= >= \" . 01 05 A-1 B2\n";
    std::vector<std::string> vocab;
    {
        std::size_t pos = 0;
        while (pos < words.size()) {
            std::size_t next = words.find(' ', pos);
            if (next == std::string::npos)
                next = words.size();
            if (next > pos)
                vocab.push_back(words.substr(pos, next - pos));
            pos = next + 1;
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);

    for (int i = 0; i < 1000; ++i) {
        std::string text;
        int kind = mode(engine);
        int n = length(engine);
        for (int k = 0; k < n; ++k) {
            if (kind == 0) {
                text.push_back(static_cast<char>(byte(engine)));
            } else if (kind == 1) {
                // printable ASCII plus newlines
                int c = byte(engine) % 96;
                text.push_back(c == 95 ? '\n' : static_cast<char>(' ' + c));
            } else {
                text += vocab[pick(engine)];
                text.push_back(byte(engine) % 8 == 0 ? '\n' : ' ');
            }
        }
        ParseResult r = parse_str(text);
        bool ok = r.program.has_value();
        bool errored = has_errors(r.diagnostics);
        CHECK_MESSAGE(ok != errored, "totality violated on fuzz case " << i);
    }
}
