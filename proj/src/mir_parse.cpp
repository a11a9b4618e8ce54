#include <cctype>
#include <unordered_set>

#include "mfmod/decimal.hpp"
#include "mfmod/mir.hpp"

namespace mfmod {

namespace {

const std::unordered_set<std::string> kKeywords = {
    "unit", "global", "fn",   "if",    "else",  "while",   "for",
    "call", "print",  "read", "halt",  "decimal", "sdecimal", "string",
};

struct MirToken {
    enum class Kind { ident, keyword, number, string, punct, end } kind;
    std::string text;
    Decimal number{};
    SourceLocation location;
};

struct MirSyntaxError {
    std::string message;
    SourceLocation location;
};

[[noreturn]] void fail(const std::string& message, const SourceLocation& location) {
    throw MirSyntaxError{message, location};
}

class MirLexer {
public:
    explicit MirLexer(const std::string& text) : text_(text) {}

    std::vector<MirToken> run() {
        std::vector<MirToken> tokens;
        while (true) {
            skip_space();
            SourceLocation loc{line_, column_};
            if (pos_ >= text_.size()) {
                tokens.push_back(MirToken{MirToken::Kind::end, "", {}, loc});
                return tokens;
            }
            char c = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string word;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                        text_[pos_] == '_'))
                    word += take();
                auto kind = kKeywords.count(word) ? MirToken::Kind::keyword
                                                  : MirToken::Kind::ident;
                tokens.push_back(MirToken{kind, word, {}, loc});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    digits += take();
                if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
                    std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                    digits += take();
                    while (pos_ < text_.size() &&
                           std::isdigit(static_cast<unsigned char>(text_[pos_])))
                        digits += take();
                }
                auto value = parse_decimal_text(digits);
                if (!value)
                    fail("numeric literal out of range: " + digits, loc);
                tokens.push_back(
                    MirToken{MirToken::Kind::number, digits, *value, loc});
                continue;
            }
            if (c == '"') {
                take();
                std::string value;
                while (true) {
                    if (pos_ >= text_.size() || text_[pos_] == '\n')
                        fail("unterminated string literal", loc);
                    char d = take();
                    if (d == '"')
                        break;
                    if (d == '\\') {
                        if (pos_ >= text_.size())
                            fail("unterminated string literal", loc);
                        char e = take();
                        if (e != '"' && e != '\\')
                            fail("unsupported escape in string literal", loc);
                        value += e;
                    } else {
                        value += d;
                    }
                }
                tokens.push_back(MirToken{MirToken::Kind::string, value, {}, loc});
                continue;
            }
            if (c == '=' || c == '!' || c == '<' || c == '>') {
                std::string punct(1, take());
                if (pos_ < text_.size() && text_[pos_] == '=')
                    punct += take();
                tokens.push_back(MirToken{MirToken::Kind::punct, punct, {}, loc});
                continue;
            }
            if (std::string("{}();:,+-*/").find(c) != std::string::npos) {
                tokens.push_back(
                    MirToken{MirToken::Kind::punct, std::string(1, take()), {}, loc});
                continue;
            }
            fail(std::string("unexpected character '") + c + "'", loc);
        }
    }

private:
    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            take();
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class MirParser {
public:
    explicit MirParser(std::vector<MirToken> tokens) : tokens_(std::move(tokens)) {}

    ModernIR run() {
        ModernIR ir;
        expect_keyword("unit");
        ir.unit_name = expect_name();
        expect_punct(";");
        while (at_keyword("global"))
            ir.globals.push_back(parse_global());
        while (at_keyword("fn"))
            ir.functions.push_back(parse_function());
        if (peek().kind != MirToken::Kind::end)
            fail("expected fn or end of input", peek().location);
        return ir;
    }

private:
    static constexpr int kMaxDepth = 200;

    struct DepthScope {
        int& depth;
        explicit DepthScope(int& d) : depth(d) { ++depth; }
        ~DepthScope() { --depth; }
    };

    void guard_depth() {
        if (depth_ > kMaxDepth)
            fail("nesting too deep", peek().location);
    }

    const MirToken& peek() const { return tokens_[pos_]; }

    const MirToken& advance() {
        const MirToken& tok = tokens_[pos_];
        if (pos_ + 1 < tokens_.size())
            ++pos_;
        return tok;
    }

    bool at_keyword(const std::string& word) const {
        return peek().kind == MirToken::Kind::keyword && peek().text == word;
    }

    bool at_punct(const std::string& text) const {
        return peek().kind == MirToken::Kind::punct && peek().text == text;
    }

    bool accept_punct(const std::string& text) {
        if (!at_punct(text))
            return false;
        advance();
        return true;
    }

    void expect_keyword(const std::string& word) {
        if (!at_keyword(word))
            fail("expected '" + word + "'", peek().location);
        advance();
    }

    void expect_punct(const std::string& text) {
        if (!at_punct(text))
            fail("expected '" + text + "'", peek().location);
        advance();
    }

    std::string expect_name() {
        if (peek().kind != MirToken::Kind::ident)
            fail("expected identifier", peek().location);
        return advance().text;
    }

    int expect_int(int min_value, int max_value) {
        if (peek().kind != MirToken::Kind::number || peek().number.scale != 0)
            fail("expected integer", peek().location);
        const MirToken& tok = advance();
        if (tok.number.mantissa < min_value || tok.number.mantissa > max_value)
            fail("integer out of range: " + tok.text, tok.location);
        return static_cast<int>(tok.number.mantissa);
    }

    MirGlobal parse_global() {
        advance(); // global
        MirGlobal global;
        global.name = expect_name();
        expect_punct(":");
        global.type = parse_type();
        expect_punct("=");
        global.initial = parse_literal();
        expect_punct(";");
        return global;
    }

    MirType parse_type() {
        MirType type;
        if (at_keyword("decimal") || at_keyword("sdecimal")) {
            type.kind = MirTypeKind::decimal_type;
            type.is_signed = peek().text == "sdecimal";
            advance();
            expect_punct("(");
            type.precision = expect_int(1, 18);
            expect_punct(",");
            type.scale = expect_int(0, type.precision);
            expect_punct(")");
            return type;
        }
        if (at_keyword("string")) {
            advance();
            type.kind = MirTypeKind::string_type;
            expect_punct("(");
            type.width = expect_int(1, 1 << 20);
            expect_punct(")");
            return type;
        }
        fail("expected a type", peek().location);
    }

    ExprRef parse_literal() {
        bool negative = accept_punct("-");
        if (peek().kind == MirToken::Kind::number) {
            Decimal value = advance().number;
            if (negative)
                value.mantissa = -value.mantissa;
            return make_decimal(Decimal::normalized(value.mantissa, value.scale));
        }
        if (negative)
            fail("expected number after '-'", peek().location);
        if (peek().kind == MirToken::Kind::string)
            return make_string(advance().text);
        fail("expected literal", peek().location);
    }

    MirFunction parse_function() {
        advance(); // fn
        MirFunction fn;
        fn.name = expect_name();
        expect_punct("(");
        expect_punct(")");
        fn.body = parse_block();
        return fn;
    }

    std::vector<MirStmt> parse_block() {
        DepthScope scope(depth_);
        guard_depth();
        expect_punct("{");
        std::vector<MirStmt> body;
        while (!at_punct("}"))
            body.push_back(parse_stmt());
        expect_punct("}");
        return body;
    }

    MirStmt parse_stmt() {
        MirStmt stmt;
        if (at_keyword("if")) {
            advance();
            MirIf node;
            expect_punct("(");
            node.condition = parse_expr();
            expect_punct(")");
            node.then_branch = parse_block();
            if (at_keyword("else")) {
                advance();
                node.else_branch = parse_block();
            }
            stmt.node = std::move(node);
            return stmt;
        }
        if (at_keyword("while")) {
            advance();
            MirWhile node;
            expect_punct("(");
            node.condition = parse_expr();
            expect_punct(")");
            node.body = parse_block();
            stmt.node = std::move(node);
            return stmt;
        }
        if (at_keyword("for")) {
            advance();
            MirFor node;
            expect_punct("(");
            node.count = parse_expr();
            expect_punct(")");
            node.body = parse_block();
            stmt.node = std::move(node);
            return stmt;
        }
        if (at_keyword("call")) {
            advance();
            MirCall node{expect_name()};
            expect_punct(";");
            stmt.node = std::move(node);
            return stmt;
        }
        if (at_keyword("print")) {
            advance();
            expect_punct("(");
            MirPrint node{parse_expr()};
            expect_punct(")");
            expect_punct(";");
            stmt.node = std::move(node);
            return stmt;
        }
        if (at_keyword("read")) {
            advance();
            expect_punct("(");
            MirRead node{expect_name()};
            expect_punct(")");
            expect_punct(";");
            stmt.node = std::move(node);
            return stmt;
        }
        if (at_keyword("halt")) {
            advance();
            expect_punct(";");
            stmt.node = MirHalt{};
            return stmt;
        }
        if (peek().kind == MirToken::Kind::ident) {
            MirAssign node;
            node.target = advance().text;
            expect_punct("=");
            node.value = parse_expr();
            expect_punct(";");
            stmt.node = std::move(node);
            return stmt;
        }
        fail("expected a statement", peek().location);
    }

    ExprRef parse_expr() {
        ExprRef lhs = parse_addsub();
        if (peek().kind == MirToken::Kind::punct) {
            BinaryOp op;
            if (peek().text == "==")
                op = BinaryOp::eq;
            else if (peek().text == "!=")
                op = BinaryOp::ne;
            else if (peek().text == "<")
                op = BinaryOp::lt;
            else if (peek().text == "<=")
                op = BinaryOp::le;
            else if (peek().text == ">")
                op = BinaryOp::gt;
            else if (peek().text == ">=")
                op = BinaryOp::ge;
            else
                return lhs;
            advance();
            ExprRef rhs = parse_addsub();
            return make_binary(op, lhs, rhs);
        }
        return lhs;
    }

    ExprRef parse_addsub() {
        ExprRef lhs = parse_muldiv();
        while (at_punct("+") || at_punct("-")) {
            BinaryOp op = peek().text == "+" ? BinaryOp::add : BinaryOp::sub;
            advance();
            lhs = make_binary(op, lhs, parse_muldiv());
        }
        return lhs;
    }

    ExprRef parse_muldiv() {
        ExprRef lhs = parse_unary();
        while (at_punct("*") || at_punct("/")) {
            BinaryOp op = peek().text == "*" ? BinaryOp::mul : BinaryOp::div;
            advance();
            lhs = make_binary(op, lhs, parse_unary());
        }
        return lhs;
    }

    ExprRef parse_unary() {
        DepthScope scope(depth_);
        guard_depth();
        if (at_punct("-")) {
            advance();
            // A minus directly on a numeric literal folds into the literal,
            // matching what the renderer emits for negatives.
            if (peek().kind == MirToken::Kind::number) {
                Decimal value = advance().number;
                value.mantissa = -value.mantissa;
                return make_decimal(Decimal::normalized(value.mantissa, value.scale));
            }
            return make_unary(UnaryOp::negate, parse_unary());
        }
        if (at_punct("!")) {
            advance();
            return make_unary(UnaryOp::logical_not, parse_unary());
        }
        return parse_primary();
    }

    ExprRef parse_primary() {
        if (accept_punct("(")) {
            ExprRef inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        if (peek().kind == MirToken::Kind::number)
            return make_decimal(advance().number);
        if (peek().kind == MirToken::Kind::string)
            return make_string(advance().text);
        if (peek().kind == MirToken::Kind::ident)
            return make_var(advance().text);
        fail("expected expression", peek().location);
    }

    std::vector<MirToken> tokens_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

} // namespace

MirParseResult parse_mir(const std::string& text) {
    MirParseResult result;
    try {
        MirLexer lexer(text);
        MirParser parser(lexer.run());
        result.ir = parser.run();
    } catch (const MirSyntaxError& err) {
        result.diagnostics.push_back(
            Diagnostic{Severity::error, "mir-syntax", err.message, err.location});
    }
    return result;
}

} // namespace mfmod
