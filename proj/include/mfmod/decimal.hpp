#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "mfmod/picture.hpp"

namespace mfmod {

using BigInt = boost::multiprecision::cpp_int;

// Exact scaled decimal: value = mantissa / 10^scale. Stored field values
// keep mantissa within 18 digits; literals are normalized to minimal scale.
struct Decimal {
    std::int64_t mantissa = 0;
    int scale = 0;

    static Decimal normalized(std::int64_t mantissa, int scale);

    bool operator==(const Decimal&) const = default;
};

// Arbitrary-precision rational used for intermediate arithmetic, so that
// expression evaluation is exact and truncation happens once at the store.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt num, BigInt den);
    static Rational from_decimal(const Decimal& d);
    static Rational from_int(std::int64_t v) { return Rational(BigInt(v), BigInt(1)); }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    // Throws Error("divide-by-zero") when o is zero.
    Rational operator/(const Rational& o) const;
    Rational negated() const;

    std::strong_ordering operator<=>(const Rational& o) const;
    bool operator==(const Rational& o) const { return (*this <=> o) == 0; }

    bool is_zero() const { return num_ == 0; }

    // Mantissa of the value truncated toward zero at `scale` fraction digits.
    BigInt mantissa_at_scale(int scale) const;

    // Canonical decimal text, exact when the value terminates within
    // max_scale fraction digits and truncated toward zero otherwise.
    std::string decimal_text(int max_scale) const;

private:
    BigInt num_;
    BigInt den_; // > 0
};

// Truncating store into a picture-typed field: the value is truncated
// toward zero to the picture's scale, excess high-order digits are dropped,
// and the sign is discarded for unsigned pictures.
Decimal store_decimal(const Rational& value, const PictureSpec& pic);

// Canonical display form: minimal decimal text, no leading zeros, `-` for
// negatives, `.` before fractional digits, "0" for zero.
std::string canonical_decimal_text(const Decimal& d);

// Parses decimal text `[+-]digits[.digits]` into an exact value.
std::optional<Decimal> parse_decimal_text(const std::string& text);

} // namespace mfmod
