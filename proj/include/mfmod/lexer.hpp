#pragma once

#include <string>
#include <vector>

#include "mfmod/decimal.hpp"
#include "mfmod/source.hpp"

namespace mfmod {

enum class TokenKind {
    word,    // identifier or keyword, canonical uppercase
    number,  // numeric literal, unsigned
    string,  // string literal, quotes stripped, doubling resolved
    picture, // raw PIC clause text (context-scanned after PIC/PICTURE)
    punct,   // . ( ) = > < >= <= + - * /
    end_of_input,
};

struct Token {
    TokenKind kind = TokenKind::end_of_input;
    std::string text;     // canonical form (words uppercased)
    Decimal number;       // valid when kind == number
    SourceLocation location;
};

struct LexResult {
    std::vector<Token> tokens; // always ends with end_of_input
    std::vector<Diagnostic> diagnostics;
};

// Free-format lexing. Lines whose first non-blank character is `*` are
// comments. Never fails: illegal characters become diagnostics and are
// skipped.
LexResult lex(const SourceUnit& source);

} // namespace mfmod
