#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace mfmod {

enum class PictureKind { numeric, alphanumeric };

// Parsed PIC clause. Numeric pictures cover 9(n), S9(n) and 9(n)V9(m);
// alphanumeric pictures cover X(n).
struct PictureSpec {
    PictureKind kind = PictureKind::numeric;
    int digits_before = 0;
    int digits_after = 0;
    bool is_signed = false;
    int width = 0; // alphanumeric character count

    int total_digits() const { return digits_before + digits_after; }

    // Stored byte width of a fixed-format record field: digits plus a
    // leading sign byte when signed; alphanumerics take `width` bytes.
    int field_width() const;

    // Largest representable mantissa, 10^total_digits - 1.
    std::int64_t max_mantissa() const;

    std::string to_string() const;

    bool operator==(const PictureSpec&) const = default;
};

// Parses the text of a PIC clause, e.g. "9(3)V99", "S9(4)", "X(10)".
// Both counted `9(3)` and repeated `999` digit forms are accepted.
// Returns nullopt on malformed pictures, numeric pictures with zero or
// more than 18 digits, or zero-width alphanumerics.
std::optional<PictureSpec> parse_picture(const std::string& text);

} // namespace mfmod
