#include "mfmod/parser.hpp"

#include <set>
#include <unordered_set>

#include "mfmod/lexer.hpp"

namespace mfmod {

namespace {

const std::unordered_set<std::string> kVerbs = {
    "MOVE", "COMPUTE", "ADD", "SUBTRACT", "MULTIPLY", "DIVIDE",
    "IF",   "PERFORM", "DISPLAY", "ACCEPT", "STOP",
};

// Recognized COBOL verbs outside the subset; reported as
// unsupported-construct rather than a generic syntax error.
const std::unordered_set<std::string> kUnsupportedVerbs = {
    "GO",     "GOBACK",  "CALL",    "OPEN",    "CLOSE",      "READ",
    "WRITE",  "REWRITE", "DELETE",  "START",   "EVALUATE",   "STRING",
    "UNSTRING", "INSPECT", "INITIALIZE", "SEARCH", "SET",    "EXIT",
    "ALTER",  "SORT",    "MERGE",   "RELEASE", "RETURN",     "CONTINUE",
};

const std::unordered_set<std::string> kReservedWords = {
    "TO", "FROM", "BY", "INTO", "TIMES", "UNTIL", "ELSE", "END-IF", "NOT",
    "RUN", "VALUE", "PIC", "PICTURE", "DIVISION", "SECTION",
    "IDENTIFICATION", "PROGRAM-ID", "DATA", "WORKING-STORAGE", "PROCEDURE",
};

bool is_verb(const Token& tok) {
    return tok.kind == TokenKind::word && kVerbs.count(tok.text) > 0;
}

class Parser {
public:
    Parser(const SourceUnit& source, std::vector<Token> tokens,
           std::vector<Diagnostic>& diagnostics)
        : source_(source), tokens_(std::move(tokens)), diagnostics_(diagnostics) {}

    Program parse_program() {
        expect_word("IDENTIFICATION");
        expect_word("DIVISION");
        expect_period();
        expect_word("PROGRAM-ID");
        expect_period();
        if (peek().kind == TokenKind::word && !is_verb(peek())) {
            program_.program_id = advance().text;
        } else {
            error("syntax", "expected program name after PROGRAM-ID", peek());
        }
        expect_period();

        if (at_word("ENVIRONMENT")) {
            error("unsupported-construct", "ENVIRONMENT DIVISION is not in the subset",
                  peek());
            skip_to_word("DATA", "PROCEDURE");
        }

        if (accept_word("DATA")) {
            expect_word("DIVISION");
            expect_period();
            expect_word("WORKING-STORAGE");
            expect_word("SECTION");
            expect_period();
            parse_items_until("PROCEDURE");
        }

        if (!accept_word("PROCEDURE")) {
            error("syntax", "expected PROCEDURE DIVISION", peek());
            return program_;
        }
        expect_word("DIVISION");
        expect_period();
        parse_paragraphs();
        return program_;
    }

    std::vector<DataItem> parse_layout_items() {
        if (accept_word("DATA")) {
            expect_word("DIVISION");
            expect_period();
        }
        if (accept_word("WORKING-STORAGE")) {
            expect_word("SECTION");
            expect_period();
        }
        parse_items_until("");
        return std::move(program_.data_items);
    }

private:
    static constexpr int kMaxDepth = 200;

    struct DepthScope {
        int& depth;
        explicit DepthScope(int& d) : depth(d) { ++depth; }
        ~DepthScope() { --depth; }
    };

    bool too_deep() {
        if (depth_ <= kMaxDepth)
            return false;
        error("syntax", "nesting too deep", peek());
        return true;
    }

    // ----- token helpers -----

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        if (i >= tokens_.size())
            i = tokens_.size() - 1;
        return tokens_[i];
    }

    const Token& advance() {
        const Token& tok = tokens_[pos_];
        if (pos_ + 1 < tokens_.size())
            ++pos_;
        return tok;
    }

    bool at_end() const { return peek().kind == TokenKind::end_of_input; }

    bool at_word(const std::string& word) const {
        return peek().kind == TokenKind::word && peek().text == word;
    }

    bool at_punct(const std::string& text) const {
        return peek().kind == TokenKind::punct && peek().text == text;
    }

    bool accept_word(const std::string& word) {
        if (!at_word(word))
            return false;
        advance();
        return true;
    }

    bool accept_punct(const std::string& text) {
        if (!at_punct(text))
            return false;
        advance();
        return true;
    }

    void expect_word(const std::string& word) {
        if (!accept_word(word))
            error("syntax", "expected " + word, peek());
    }

    void expect_period() {
        if (!accept_punct("."))
            error("syntax", "expected '.'", peek());
    }

    void error(const std::string& code, const std::string& message, const Token& at) {
        diagnostics_.push_back(Diagnostic{Severity::error, code, message, at.location});
    }

    void skip_to_word(const std::string& a, const std::string& b) {
        while (!at_end() && !at_word(a) && !at_word(b))
            advance();
    }

    // Skips to a statement or paragraph boundary after an error.
    void recover_statement() {
        while (!at_end()) {
            const Token& tok = peek();
            if (tok.kind == TokenKind::punct && tok.text == ".") {
                advance();
                return;
            }
            if (is_verb(tok) || tok.text == "ELSE" || tok.text == "END-IF")
                return;
            if (tok.kind == TokenKind::word && peek(1).kind == TokenKind::punct &&
                peek(1).text == ".")
                return; // likely a paragraph header
            advance();
        }
    }

    // ----- data division -----

    void parse_items_until(const std::string& stop_word) {
        while (!at_end()) {
            if (!stop_word.empty() && at_word(stop_word))
                return;
            if (peek().kind != TokenKind::number) {
                error("syntax", "expected level number in working-storage entry", peek());
                recover_statement();
                continue;
            }
            parse_item();
        }
    }

    void parse_item() {
        const Token& level_tok = advance();
        int level = 0;
        if (level_tok.number.scale == 0 &&
            (level_tok.number.mantissa == 1 || level_tok.number.mantissa == 5)) {
            level = static_cast<int>(level_tok.number.mantissa);
        } else {
            error("bad-level", "only levels 01 and 05 are supported", level_tok);
        }

        DataItem item;
        item.level = level == 0 ? 1 : level;
        item.location = level_tok.location;
        if (peek().kind == TokenKind::word && !is_verb(peek()) &&
            kReservedWords.count(peek().text) == 0) {
            item.name = advance().text;
        } else {
            error("syntax", "expected data item name", peek());
            recover_statement();
            return;
        }

        if (!accept_word("PIC") && !accept_word("PICTURE")) {
            error("syntax", "expected PIC clause for " + item.name, peek());
            recover_statement();
            return;
        }
        if (peek().kind != TokenKind::picture) {
            error("syntax", "expected picture string after PIC", peek());
            recover_statement();
            return;
        }
        const Token& pic_tok = advance();
        auto pic = parse_picture(pic_tok.text);
        if (!pic) {
            error("bad-picture", "malformed or unsupported picture: " + pic_tok.text,
                  pic_tok);
            recover_statement();
            return;
        }
        item.picture = *pic;

        if (accept_word("VALUE")) {
            const Token& value_tok = peek();
            auto literal = parse_literal();
            if (!literal) {
                error("syntax", "expected literal after VALUE", peek());
                recover_statement();
                return;
            }
            if (!value_conforms(*literal, item.picture)) {
                error("bad-value",
                      "VALUE literal does not conform to picture " +
                          item.picture.to_string(),
                      value_tok);
            } else {
                item.initial_value = *literal;
            }
        }
        expect_period();

        for (const auto& existing : program_.data_items) {
            if (existing.name == item.name) {
                error("dup-data-item", "duplicate data item " + item.name, level_tok);
                return;
            }
        }
        program_.data_items.push_back(std::move(item));
    }

    bool value_conforms(const ExprRef& literal, const PictureSpec& pic) {
        if (const auto* dec = std::get_if<DecimalLit>(&literal->node)) {
            if (pic.kind != PictureKind::numeric)
                return false;
            Rational value = Rational::from_decimal(dec->value);
            Decimal stored = store_decimal(value, pic);
            return Rational::from_decimal(stored) == value;
        }
        const auto& str = std::get<StringLit>(literal->node);
        return pic.kind == PictureKind::alphanumeric &&
               str.value.size() <= static_cast<std::size_t>(pic.width);
    }

    // ----- procedure division -----

    void parse_paragraphs() {
        while (!at_end()) {
            if (peek().kind != TokenKind::word || is_verb(peek()) ||
                peek(1).kind != TokenKind::punct || peek(1).text != ".") {
                if (kUnsupportedVerbs.count(peek().text) > 0) {
                    error("unsupported-construct",
                          peek().text + " is not in the supported subset", peek());
                } else {
                    error("syntax", "expected paragraph header", peek());
                }
                recover_statement();
                continue;
            }
            Paragraph para;
            const Token& name_tok = advance();
            para.name = name_tok.text;
            para.location = name_tok.location;
            advance(); // '.'
            for (const auto& existing : program_.paragraphs) {
                if (existing.name == para.name)
                    error("dup-paragraph", "duplicate paragraph " + para.name, name_tok);
            }
            parse_paragraph_body(para.statements);
            program_.paragraphs.push_back(std::move(para));
        }
        if (program_.paragraphs.empty())
            error("syntax", "PROCEDURE DIVISION contains no paragraphs", peek());
    }

    void parse_paragraph_body(std::vector<Stmt>& out) {
        while (!at_end()) {
            if (at_punct(".")) { // empty sentence
                advance();
                continue;
            }
            if (peek().kind == TokenKind::word && !is_verb(peek()) &&
                kUnsupportedVerbs.count(peek().text) == 0 &&
                peek(1).kind == TokenKind::punct && peek(1).text == ".")
                return; // next paragraph header
            if (auto stmt = parse_statement()) {
                out.push_back(std::move(*stmt));
                accept_punct(".");
            } else {
                recover_statement();
            }
        }
    }

    std::optional<Stmt> parse_statement() {
        const Token& tok = peek();
        if (tok.kind != TokenKind::word) {
            error("syntax", "expected a statement", tok);
            return std::nullopt;
        }
        if (kUnsupportedVerbs.count(tok.text) > 0) {
            error("unsupported-construct", tok.text + " is not in the supported subset",
                  tok);
            return std::nullopt;
        }

        Stmt stmt;
        stmt.location = tok.location;
        if (tok.text == "MOVE")
            return parse_move(stmt);
        if (tok.text == "COMPUTE")
            return parse_compute(stmt);
        if (tok.text == "ADD")
            return parse_arith(stmt, ArithVerb::add, "TO");
        if (tok.text == "SUBTRACT")
            return parse_arith(stmt, ArithVerb::subtract, "FROM");
        if (tok.text == "MULTIPLY")
            return parse_arith(stmt, ArithVerb::multiply, "BY");
        if (tok.text == "DIVIDE")
            return parse_divide(stmt);
        if (tok.text == "IF")
            return parse_if(stmt);
        if (tok.text == "PERFORM")
            return parse_perform(stmt);
        if (tok.text == "DISPLAY")
            return parse_display(stmt);
        if (tok.text == "ACCEPT")
            return parse_accept(stmt);
        if (tok.text == "STOP")
            return parse_stop(stmt);
        error("syntax", "unexpected token " + tok.text, tok);
        return std::nullopt;
    }

    std::optional<std::string> parse_identifier() {
        if (peek().kind == TokenKind::word && !is_verb(peek()) &&
            kReservedWords.count(peek().text) == 0 &&
            kUnsupportedVerbs.count(peek().text) == 0)
            return advance().text;
        error("syntax", "expected identifier", peek());
        return std::nullopt;
    }

    std::optional<ExprRef> parse_literal() {
        if (peek().kind == TokenKind::string)
            return make_string(advance().text);
        bool negative = false;
        std::size_t mark = pos_;
        if (at_punct("-")) {
            negative = true;
            advance();
        } else if (at_punct("+")) {
            advance();
        }
        if (peek().kind == TokenKind::number) {
            Decimal value = advance().number;
            if (negative)
                value.mantissa = -value.mantissa;
            return make_decimal(Decimal::normalized(value.mantissa, value.scale));
        }
        pos_ = mark;
        return std::nullopt;
    }

    // Literal or identifier.
    std::optional<ExprRef> parse_operand() {
        if (auto lit = parse_literal())
            return lit;
        if (auto name = parse_identifier_quiet())
            return make_var(*name);
        return std::nullopt;
    }

    std::optional<std::string> parse_identifier_quiet() {
        if (peek().kind == TokenKind::word && !is_verb(peek()) &&
            kReservedWords.count(peek().text) == 0 &&
            kUnsupportedVerbs.count(peek().text) == 0)
            return advance().text;
        return std::nullopt;
    }

    std::optional<Stmt> parse_move(Stmt& stmt) {
        advance(); // MOVE
        auto src = parse_operand();
        if (!src) {
            error("syntax", "expected literal or identifier after MOVE", peek());
            return std::nullopt;
        }
        if (!accept_word("TO")) {
            error("syntax", "expected TO in MOVE", peek());
            return std::nullopt;
        }
        MoveStmt move;
        move.source = *src;
        while (auto target = parse_identifier_quiet())
            move.targets.push_back(*target);
        if (move.targets.empty()) {
            error("syntax", "expected at least one MOVE target", peek());
            return std::nullopt;
        }
        stmt.node = std::move(move);
        return stmt;
    }

    std::optional<Stmt> parse_compute(Stmt& stmt) {
        advance(); // COMPUTE
        auto target = parse_identifier();
        if (!target)
            return std::nullopt;
        if (!accept_punct("=")) {
            error("syntax", "expected '=' in COMPUTE", peek());
            return std::nullopt;
        }
        auto expr = parse_arith_expr();
        if (!expr)
            return std::nullopt;
        stmt.node = ComputeStmt{*target, *expr};
        return stmt;
    }

    std::optional<Stmt> parse_arith(Stmt& stmt, ArithVerb verb, const std::string& sep) {
        advance(); // verb
        ArithStmt arith;
        arith.verb = verb;
        while (auto operand = parse_operand())
            arith.operands.push_back(*operand);
        if (arith.operands.empty()) {
            error("syntax", "expected operand", peek());
            return std::nullopt;
        }
        if (!accept_word(sep)) {
            error("syntax", "expected " + sep, peek());
            return std::nullopt;
        }
        while (auto target = parse_identifier_quiet())
            arith.targets.push_back(*target);
        if (arith.targets.empty()) {
            error("syntax", "expected target identifier", peek());
            return std::nullopt;
        }
        stmt.node = std::move(arith);
        return stmt;
    }

    std::optional<Stmt> parse_divide(Stmt& stmt) {
        advance(); // DIVIDE
        ArithStmt arith;
        const Token& first_tok = peek();
        auto first = parse_operand();
        if (!first) {
            error("syntax", "expected operand after DIVIDE", peek());
            return std::nullopt;
        }
        if (accept_word("INTO")) {
            // DIVIDE a INTO x: x = x / a
            arith.verb = ArithVerb::divide_into;
            arith.operands.push_back(*first);
            while (auto target = parse_identifier_quiet())
                arith.targets.push_back(*target);
            if (arith.targets.empty()) {
                error("syntax", "expected target after INTO", peek());
                return std::nullopt;
            }
        } else if (accept_word("BY")) {
            // DIVIDE x BY a: x = x / a
            arith.verb = ArithVerb::divide_by;
            const auto* var = std::get_if<VarRef>(&(*first)->node);
            if (!var) {
                error("syntax", "DIVIDE ... BY requires an identifier target", first_tok);
                return std::nullopt;
            }
            arith.targets.push_back(var->name);
            auto divisor = parse_operand();
            if (!divisor) {
                error("syntax", "expected divisor after BY", peek());
                return std::nullopt;
            }
            arith.operands.push_back(*divisor);
        } else {
            error("syntax", "expected INTO or BY in DIVIDE", peek());
            return std::nullopt;
        }
        stmt.node = std::move(arith);
        return stmt;
    }

    std::optional<Stmt> parse_if(Stmt& stmt) {
        advance(); // IF
        DepthScope scope(depth_);
        if (too_deep())
            return std::nullopt;
        auto cond = parse_condition();
        if (!cond)
            return std::nullopt;
        IfStmt node;
        node.condition = *cond;
        parse_branch(node.then_branch);
        if (accept_word("ELSE"))
            parse_branch(node.else_branch);
        if (!accept_word("END-IF")) {
            error("syntax", "expected END-IF", peek());
            return std::nullopt;
        }
        stmt.node = std::move(node);
        return stmt;
    }

    void parse_branch(std::vector<Stmt>& out) {
        while (!at_end() && !at_word("ELSE") && !at_word("END-IF")) {
            if (at_punct(".")) {
                error("syntax", "'.' not allowed inside IF; expected END-IF", peek());
                return;
            }
            if (auto stmt = parse_statement()) {
                out.push_back(std::move(*stmt));
            } else {
                recover_statement();
                return;
            }
        }
    }

    std::optional<Stmt> parse_perform(Stmt& stmt) {
        advance(); // PERFORM
        auto target = parse_identifier();
        if (!target)
            return std::nullopt;
        PerformStmt perform;
        perform.target = *target;
        if (accept_word("UNTIL")) {
            perform.kind = PerformKind::until;
            auto cond = parse_condition();
            if (!cond)
                return std::nullopt;
            perform.condition = *cond;
        } else if (peek().kind == TokenKind::number ||
                   (peek().kind == TokenKind::word && !is_verb(peek()) &&
                    kReservedWords.count(peek().text) == 0 && at_word_ahead_times())) {
            auto count = parse_operand();
            if (!count)
                return std::nullopt;
            if (!accept_word("TIMES")) {
                error("syntax", "expected TIMES after repeat count", peek());
                return std::nullopt;
            }
            perform.kind = PerformKind::times;
            perform.count = *count;
        }
        stmt.node = std::move(perform);
        return stmt;
    }

    // Lookahead for `PERFORM P N TIMES` with an identifier count: the word
    // after the count must be TIMES, otherwise the count word is the start
    // of the next statement or paragraph.
    bool at_word_ahead_times() const {
        return peek(1).kind == TokenKind::word && peek(1).text == "TIMES";
    }

    std::optional<Stmt> parse_display(Stmt& stmt) {
        advance(); // DISPLAY
        DisplayStmt display;
        while (auto operand = parse_operand())
            display.operands.push_back(*operand);
        if (display.operands.empty()) {
            error("syntax", "expected operand after DISPLAY", peek());
            return std::nullopt;
        }
        stmt.node = std::move(display);
        return stmt;
    }

    std::optional<Stmt> parse_accept(Stmt& stmt) {
        advance(); // ACCEPT
        auto target = parse_identifier();
        if (!target)
            return std::nullopt;
        stmt.node = AcceptStmt{*target};
        return stmt;
    }

    std::optional<Stmt> parse_stop(Stmt& stmt) {
        advance(); // STOP
        if (!accept_word("RUN")) {
            error("syntax", "expected RUN after STOP", peek());
            return std::nullopt;
        }
        stmt.node = StopStmt{};
        return stmt;
    }

    // ----- expressions and conditions -----

    std::optional<ExprRef> parse_condition() {
        DepthScope scope(depth_);
        if (too_deep())
            return std::nullopt;
        if (accept_word("NOT")) {
            auto inner = parse_condition();
            if (!inner)
                return std::nullopt;
            return make_unary(UnaryOp::logical_not, *inner);
        }
        auto lhs = parse_arith_expr();
        if (!lhs)
            return std::nullopt;
        bool negated = accept_word("NOT");
        BinaryOp op;
        if (accept_punct("=")) {
            op = BinaryOp::eq;
        } else if (accept_punct(">=")) {
            op = BinaryOp::ge;
        } else if (accept_punct("<=")) {
            op = BinaryOp::le;
        } else if (accept_punct(">")) {
            op = BinaryOp::gt;
        } else if (accept_punct("<")) {
            op = BinaryOp::lt;
        } else {
            error("syntax", "expected relational operator", peek());
            return std::nullopt;
        }
        auto rhs = parse_arith_expr();
        if (!rhs)
            return std::nullopt;
        ExprRef rel = make_binary(op, *lhs, *rhs);
        if (negated)
            rel = make_unary(UnaryOp::logical_not, rel);
        return rel;
    }

    std::optional<ExprRef> parse_arith_expr() {
        auto lhs = parse_term();
        if (!lhs)
            return std::nullopt;
        while (at_punct("+") || at_punct("-")) {
            BinaryOp op = peek().text == "+" ? BinaryOp::add : BinaryOp::sub;
            advance();
            auto rhs = parse_term();
            if (!rhs)
                return std::nullopt;
            lhs = make_binary(op, *lhs, *rhs);
        }
        return lhs;
    }

    std::optional<ExprRef> parse_term() {
        auto lhs = parse_factor();
        if (!lhs)
            return std::nullopt;
        while (at_punct("*") || at_punct("/")) {
            BinaryOp op = peek().text == "*" ? BinaryOp::mul : BinaryOp::div;
            advance();
            auto rhs = parse_factor();
            if (!rhs)
                return std::nullopt;
            lhs = make_binary(op, *lhs, *rhs);
        }
        return lhs;
    }

    std::optional<ExprRef> parse_factor() {
        DepthScope scope(depth_);
        if (too_deep())
            return std::nullopt;
        if (at_punct("-")) {
            advance();
            if (peek().kind == TokenKind::number) {
                Decimal value = advance().number;
                value.mantissa = -value.mantissa;
                return make_decimal(Decimal::normalized(value.mantissa, value.scale));
            }
            auto operand = parse_factor();
            if (!operand)
                return std::nullopt;
            return make_unary(UnaryOp::negate, *operand);
        }
        if (at_punct("+")) {
            advance();
            return parse_factor();
        }
        if (accept_punct("(")) {
            auto inner = parse_arith_expr();
            if (!inner)
                return std::nullopt;
            if (!accept_punct(")")) {
                error("syntax", "expected ')'", peek());
                return std::nullopt;
            }
            return inner;
        }
        if (peek().kind == TokenKind::number)
            return make_decimal(advance().number);
        if (peek().kind == TokenKind::string)
            return make_string(advance().text);
        if (auto name = parse_identifier_quiet())
            return make_var(*name);
        error("syntax", "expected expression", peek());
        return std::nullopt;
    }

    const SourceUnit& source_;
    std::vector<Token> tokens_;
    std::vector<Diagnostic>& diagnostics_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    Program program_;
};

} // namespace

ParseResult parse(const SourceUnit& source) {
    ParseResult result;
    LexResult lexed = lex(source);
    result.diagnostics = std::move(lexed.diagnostics);

    Parser parser(source, std::move(lexed.tokens), result.diagnostics);
    Program program = parser.parse_program();

    sort_diagnostics(result.diagnostics);
    if (!has_errors(result.diagnostics))
        result.program = std::move(program);
    return result;
}

DataItemsResult parse_data_items(const SourceUnit& source) {
    DataItemsResult result;
    LexResult lexed = lex(source);
    result.diagnostics = std::move(lexed.diagnostics);

    Parser parser(source, std::move(lexed.tokens), result.diagnostics);
    std::vector<DataItem> items = parser.parse_layout_items();

    sort_diagnostics(result.diagnostics);
    if (!has_errors(result.diagnostics))
        result.items = std::move(items);
    return result;
}

} // namespace mfmod
