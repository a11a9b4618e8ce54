#include "mfmod/picture.hpp"

#include <cctype>

namespace mfmod {

namespace {

// Parses one repeated symbol group: `9(3)` or `999`. Returns the count,
// or 0 if `pos` does not start with `symbol`.
int parse_group(const std::string& text, std::size_t& pos, char symbol) {
    if (pos >= text.size() || std::toupper(text[pos]) != symbol)
        return 0;
    ++pos;
    if (pos < text.size() && text[pos] == '(') {
        std::size_t close = text.find(')', pos);
        if (close == std::string::npos)
            return -1;
        int count = 0;
        for (std::size_t i = pos + 1; i < close; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                return -1;
            count = count * 10 + (text[i] - '0');
            if (count > 1000)
                return -1;
        }
        if (close == pos + 1)
            return -1;
        pos = close + 1;
        return count;
    }
    int count = 1;
    while (pos < text.size() && std::toupper(text[pos]) == symbol) {
        ++pos;
        ++count;
    }
    return count;
}

} // namespace

int PictureSpec::field_width() const {
    if (kind == PictureKind::alphanumeric)
        return width;
    return total_digits() + (is_signed ? 1 : 0);
}

std::int64_t PictureSpec::max_mantissa() const {
    std::int64_t value = 1;
    for (int i = 0; i < total_digits(); ++i)
        value *= 10;
    return value - 1;
}

std::string PictureSpec::to_string() const {
    if (kind == PictureKind::alphanumeric)
        return "X(" + std::to_string(width) + ")";
    std::string out = is_signed ? "S9(" : "9(";
    out += std::to_string(digits_before) + ")";
    if (digits_after > 0)
        out += "V9(" + std::to_string(digits_after) + ")";
    return out;
}

std::optional<PictureSpec> parse_picture(const std::string& text) {
    if (text.empty())
        return std::nullopt;

    std::size_t pos = 0;
    PictureSpec spec;

    char first = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    if (first == 'X') {
        int count = parse_group(text, pos, 'X');
        if (count <= 0 || pos != text.size())
            return std::nullopt;
        spec.kind = PictureKind::alphanumeric;
        spec.width = count;
        return spec;
    }

    if (first == 'S') {
        spec.is_signed = true;
        ++pos;
    }
    int before = parse_group(text, pos, '9');
    if (before <= 0)
        return std::nullopt;
    spec.kind = PictureKind::numeric;
    spec.digits_before = before;
    if (pos < text.size() && std::toupper(text[pos]) == 'V') {
        ++pos;
        int after = parse_group(text, pos, '9');
        if (after <= 0)
            return std::nullopt;
        spec.digits_after = after;
    }
    if (pos != text.size())
        return std::nullopt;
    if (spec.total_digits() < 1 || spec.total_digits() > 18)
        return std::nullopt;
    return spec;
}

} // namespace mfmod
