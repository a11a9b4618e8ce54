#include "mfmod/decimal.hpp"

#include <cctype>

#include "mfmod/errors.hpp"

namespace mfmod {

namespace {

BigInt pow10(int n) {
    BigInt v = 1;
    for (int i = 0; i < n; ++i)
        v *= 10;
    return v;
}

} // namespace

Decimal Decimal::normalized(std::int64_t mantissa, int scale) {
    while (scale > 0 && mantissa % 10 == 0) {
        mantissa /= 10;
        --scale;
    }
    if (mantissa == 0)
        scale = 0;
    return Decimal{mantissa, scale};
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::from_decimal(const Decimal& d) {
    return Rational(BigInt(d.mantissa), pow10(d.scale));
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0)
        throw Error("divide-by-zero", "division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

Rational Rational::negated() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    BigInt lhs = num_ * o.den_;
    BigInt rhs = o.num_ * den_;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigInt Rational::mantissa_at_scale(int scale) const {
    // Truncation toward zero; BigInt division already truncates toward zero.
    BigInt scaled = num_ * pow10(scale);
    return scaled / den_;
}

std::string Rational::decimal_text(int max_scale) const {
    bool negative = num_ < 0;
    BigInt mag = negative ? BigInt(-num_) : num_;
    BigInt whole = mag / den_;
    BigInt rem = mag % den_;
    std::string frac;
    for (int i = 0; i < max_scale && rem != 0; ++i) {
        rem *= 10;
        frac += static_cast<char>('0' + (rem / den_).convert_to<int>());
        rem %= den_;
    }
    while (!frac.empty() && frac.back() == '0')
        frac.pop_back();
    std::string out = whole.str();
    if (!frac.empty())
        out += "." + frac;
    if (negative && (whole != 0 || !frac.empty()))
        out.insert(out.begin(), '-');
    return out;
}

Decimal store_decimal(const Rational& value, const PictureSpec& pic) {
    BigInt mantissa = value.mantissa_at_scale(pic.digits_after);
    bool negative = mantissa < 0;
    BigInt magnitude = negative ? BigInt(-mantissa) : mantissa;
    // High-order truncation: keep the low-order total_digits() digits.
    magnitude %= pow10(pic.total_digits());
    std::int64_t stored = magnitude.convert_to<std::int64_t>();
    if (negative && pic.is_signed)
        stored = -stored;
    return Decimal{stored, pic.digits_after};
}

std::string canonical_decimal_text(const Decimal& d) {
    Decimal n = Decimal::normalized(d.mantissa, d.scale);
    std::int64_t mag = n.mantissa < 0 ? -n.mantissa : n.mantissa;
    std::string digits = std::to_string(mag);
    while (static_cast<int>(digits.size()) <= n.scale - 1)
        digits.insert(digits.begin(), '0');
    std::string out;
    if (n.scale == 0) {
        out = digits;
    } else {
        std::string whole = digits.size() > static_cast<std::size_t>(n.scale)
                                ? digits.substr(0, digits.size() - n.scale)
                                : "0";
        std::string frac = digits.substr(digits.size() - n.scale);
        out = whole + "." + frac;
    }
    if (n.mantissa < 0)
        out.insert(out.begin(), '-');
    return out;
}

std::optional<Decimal> parse_decimal_text(const std::string& text) {
    if (text.empty())
        return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    std::int64_t mantissa = 0;
    int scale = 0;
    bool any_digit = false;
    bool in_fraction = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (in_fraction)
                return std::nullopt;
            in_fraction = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return std::nullopt;
        if (mantissa > (INT64_MAX - 9) / 10)
            return std::nullopt;
        mantissa = mantissa * 10 + (c - '0');
        if (in_fraction)
            ++scale;
        any_digit = true;
    }
    if (!any_digit)
        return std::nullopt;
    if (negative)
        mantissa = -mantissa;
    return Decimal::normalized(mantissa, scale);
}

} // namespace mfmod
