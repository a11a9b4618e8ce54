#include "mfmod/lexer.hpp"

#include <cctype>

namespace mfmod {

namespace {

bool is_word_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool is_picture_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '(' || c == ')';
}

class Lexer {
public:
    Lexer(const SourceUnit& source, LexResult& out) : source_(source), out_(out) {}

    void run() {
        const std::string& text = source_.text();
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t line_end = text.find('\n', pos);
            if (line_end == std::string::npos)
                line_end = text.size();
            lex_line(pos, line_end);
            pos = line_end + 1;
        }
        push(TokenKind::end_of_input, "", text.size());
    }

private:
    void lex_line(std::size_t begin, std::size_t end) {
        const std::string& text = source_.text();
        std::size_t first = begin;
        while (first < end && (text[first] == ' ' || text[first] == '\t' || text[first] == '\r'))
            ++first;
        if (first < end && text[first] == '*')
            return; // comment line
        std::size_t pos = first;
        while (pos < end) {
            char c = text[pos];
            if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
                continue;
            }
            if (is_word_start(c)) {
                lex_word(pos, end);
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                lex_number(pos, end);
                continue;
            }
            if (c == '"' || c == '\'') {
                lex_string(pos, end);
                continue;
            }
            if (c == '>' || c == '<') {
                std::size_t start = pos;
                std::string op(1, c);
                ++pos;
                if (pos < end && text[pos] == '=') {
                    op += '=';
                    ++pos;
                }
                push(TokenKind::punct, op, start);
                continue;
            }
            if (c == '.' || c == '(' || c == ')' || c == '=' || c == '+' || c == '-' ||
                c == '*' || c == '/') {
                push(TokenKind::punct, std::string(1, c), pos);
                ++pos;
                continue;
            }
            diag("lexical", std::string("illegal character '") + c + "'", pos);
            ++pos;
        }
    }

    void lex_word(std::size_t& pos, std::size_t end) {
        const std::string& text = source_.text();
        std::size_t start = pos;
        ++pos;
        while (pos < end) {
            if (is_word_char(text[pos])) {
                ++pos;
            } else if (text[pos] == '-' && pos + 1 < end && is_word_char(text[pos + 1])) {
                pos += 2;
            } else {
                break;
            }
        }
        std::string word = text.substr(start, pos - start);
        for (char& c : word)
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        push(TokenKind::word, word, start);
        if (word == "PIC" || word == "PICTURE")
            lex_picture(pos, end);
    }

    void lex_picture(std::size_t& pos, std::size_t end) {
        const std::string& text = source_.text();
        while (pos < end && (text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
        std::size_t start = pos;
        while (pos < end && is_picture_char(text[pos]))
            ++pos;
        if (pos > start)
            push(TokenKind::picture, text.substr(start, pos - start), start);
    }

    void lex_number(std::size_t& pos, std::size_t end) {
        const std::string& text = source_.text();
        std::size_t start = pos;
        while (pos < end && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos + 1 < end && text[pos] == '.' &&
            std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
            ++pos;
            while (pos < end && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
        }
        std::string raw = text.substr(start, pos - start);
        auto value = parse_decimal_text(raw);
        if (!value) {
            diag("lexical", "numeric literal out of range: " + raw, start);
            return;
        }
        Token tok;
        tok.kind = TokenKind::number;
        tok.text = raw;
        tok.number = *value;
        tok.location = source_.locate(start);
        out_.tokens.push_back(std::move(tok));
    }

    void lex_string(std::size_t& pos, std::size_t end) {
        const std::string& text = source_.text();
        char quote = text[pos];
        std::size_t start = pos;
        ++pos;
        std::string value;
        while (pos < end) {
            if (text[pos] == quote) {
                if (pos + 1 < end && text[pos + 1] == quote) {
                    value += quote; // doubled quote escape
                    pos += 2;
                    continue;
                }
                ++pos;
                push(TokenKind::string, value, start);
                return;
            }
            value += text[pos];
            ++pos;
        }
        diag("lexical", "unterminated string literal", start);
    }

    void push(TokenKind kind, std::string text, std::size_t offset) {
        Token tok;
        tok.kind = kind;
        tok.text = std::move(text);
        tok.location = source_.locate(offset);
        out_.tokens.push_back(std::move(tok));
    }

    void diag(const std::string& code, const std::string& message, std::size_t offset) {
        out_.diagnostics.push_back(
            Diagnostic{Severity::error, code, message, source_.locate(offset)});
    }

    const SourceUnit& source_;
    LexResult& out_;
};

} // namespace

LexResult lex(const SourceUnit& source) {
    LexResult result;
    Lexer(source, result).run();
    return result;
}

} // namespace mfmod
