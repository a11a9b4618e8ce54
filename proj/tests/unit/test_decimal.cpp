#include <doctest.h>

#include "mfmod/decimal.hpp"
#include "mfmod/errors.hpp"
#include "mfmod/picture.hpp"

using namespace mfmod;

TEST_CASE("picture parsing covers the counted and repeated forms") {
    auto p = parse_picture("9(5)");
    REQUIRE(p.has_value());
    CHECK(p->kind == PictureKind::numeric);
    CHECK(p->digits_before == 5);
    CHECK(p->digits_after == 0);
    CHECK_FALSE(p->is_signed);

    p = parse_picture("S9(4)");
    REQUIRE(p.has_value());
    CHECK(p->is_signed);
    CHECK(p->total_digits() == 4);

    p = parse_picture("9(3)V99");
    REQUIRE(p.has_value());
    CHECK(p->digits_before == 3);
    CHECK(p->digits_after == 2);

    p = parse_picture("9(3)V9(2)");
    REQUIRE(p.has_value());
    CHECK(p->digits_before == 3);
    CHECK(p->digits_after == 2);

    p = parse_picture("999");
    REQUIRE(p.has_value());
    CHECK(p->digits_before == 3);

    p = parse_picture("99V9");
    REQUIRE(p.has_value());
    CHECK(p->digits_before == 2);
    CHECK(p->digits_after == 1);

    p = parse_picture("X(8)");
    REQUIRE(p.has_value());
    CHECK(p->kind == PictureKind::alphanumeric);
    CHECK(p->width == 8);
}

TEST_CASE("picture parsing rejects malformed and out-of-range clauses") {
    CHECK_FALSE(parse_picture("").has_value());
    CHECK_FALSE(parse_picture("9(0)").has_value());
    CHECK_FALSE(parse_picture("9(19)").has_value());
    CHECK_FALSE(parse_picture("X(0)").has_value());
    CHECK_FALSE(parse_picture("V99").has_value());
    CHECK_FALSE(parse_picture("ABC").has_value());
    CHECK_FALSE(parse_picture("9(2").has_value());
    CHECK_FALSE(parse_picture("9()").has_value());
    CHECK_FALSE(parse_picture("S").has_value());
    // eighteen digits is the cap, split across the point
    CHECK(parse_picture("9(9)V9(9)").has_value());
    CHECK_FALSE(parse_picture("9(10)V9(9)").has_value());
}

TEST_CASE("picture width and mantissa bounds") {
    auto p = parse_picture("S9(5)V99");
    REQUIRE(p.has_value());
    CHECK(p->total_digits() == 7);
    CHECK(p->field_width() == 8); // sign byte plus seven digits
    CHECK(p->max_mantissa() == 9999999);

    auto unsigned_p = parse_picture("9(4)");
    REQUIRE(unsigned_p.has_value());
    CHECK(unsigned_p->field_width() == 4);

    auto alnum = parse_picture("X(12)");
    REQUIRE(alnum.has_value());
    CHECK(alnum->field_width() == 12);
}

TEST_CASE("decimal normalization strips trailing fraction zeros") {
    CHECK(Decimal::normalized(1500, 2) == Decimal{15, 0});
    CHECK(Decimal::normalized(150, 2) == Decimal{15, 1});
    CHECK(Decimal::normalized(0, 5) == Decimal{0, 0});
    CHECK(Decimal::normalized(-100, 2) == Decimal{-1, 0});
    CHECK(Decimal::normalized(7, 0) == Decimal{7, 0});
}

TEST_CASE("canonical text is the minimal decimal form") {
    CHECK(canonical_decimal_text(Decimal{0, 0}) == "0");
    CHECK(canonical_decimal_text(Decimal{15, 1}) == "1.5");
    CHECK(canonical_decimal_text(Decimal{1500, 2}) == "15");
    CHECK(canonical_decimal_text(Decimal{-1050, 2}) == "-10.5");
    CHECK(canonical_decimal_text(Decimal{5, 2}) == "0.05");
    CHECK(canonical_decimal_text(Decimal{-5, 0}) == "-5");
}

TEST_CASE("decimal text parsing accepts signs and fractions") {
    CHECK(parse_decimal_text("12.34") == Decimal{1234, 2});
    CHECK(parse_decimal_text("-5") == Decimal{-5, 0});
    CHECK(parse_decimal_text("+7.0") == Decimal{7, 0});
    CHECK(parse_decimal_text("0") == Decimal{0, 0});
    CHECK(parse_decimal_text("000.10") == Decimal{1, 1});
    CHECK_FALSE(parse_decimal_text("").has_value());
    CHECK_FALSE(parse_decimal_text("abc").has_value());
    CHECK_FALSE(parse_decimal_text("1.2.3").has_value());
    CHECK_FALSE(parse_decimal_text(".").has_value());
    CHECK_FALSE(parse_decimal_text("--1").has_value());
    CHECK_FALSE(parse_decimal_text(" 1").has_value());
    CHECK_FALSE(parse_decimal_text("1 ").has_value());
}

TEST_CASE("rational arithmetic is exact") {
    Rational third = Rational::from_int(1) / Rational::from_int(3);
    Rational sum = third + third + third;
    CHECK(sum == Rational::from_int(1));

    Rational tenth = Rational::from_decimal(Decimal{1, 1});
    Rational acc;
    for (int i = 0; i < 10; ++i)
        acc = acc + tenth;
    CHECK(acc == Rational::from_int(1));

    CHECK((Rational::from_int(2) * Rational::from_int(3)) == Rational::from_int(6));
    CHECK(Rational::from_int(-4).negated() == Rational::from_int(4));
    CHECK(Rational::from_int(1) < Rational::from_int(2));
}

TEST_CASE("rational division by zero raises the structured error") {
    CHECK_THROWS_WITH_AS(Rational::from_int(1) / Rational::from_int(0),
                         "division by zero", Error);
}

TEST_CASE("mantissa_at_scale truncates toward zero") {
    Rational v(BigInt(-7), BigInt(2)); // -3.5
    CHECK(v.mantissa_at_scale(0) == BigInt(-3));
    CHECK(v.mantissa_at_scale(1) == BigInt(-35));
    Rational w(BigInt(7), BigInt(3)); // 2.333...
    CHECK(w.mantissa_at_scale(2) == BigInt(233));
}

TEST_CASE("decimal_text truncates non-terminating expansions") {
    Rational third = Rational::from_int(1) / Rational::from_int(3);
    CHECK(third.decimal_text(4) == "0.3333");
    Rational exact = Rational::from_decimal(Decimal{125, 2});
    CHECK(exact.decimal_text(18) == "1.25");
    Rational negative = Rational::from_int(-1) / Rational::from_int(8);
    CHECK(negative.decimal_text(3) == "-0.125");
    CHECK(Rational().decimal_text(5) == "0");
}

TEST_CASE("store truncates scale, drops overflow digits and unsigned signs") {
    auto pic = parse_picture("9(3)V99");
    REQUIRE(pic.has_value());

    // scale truncation toward zero
    Rational v = Rational::from_decimal(Decimal{12999, 3}); // 12.999
    CHECK(store_decimal(v, *pic) == Decimal{1299, 2});

    // high-order digits drop modularly
    Rational big = Rational::from_int(12345); // 12345.00 into 999V99
    CHECK(store_decimal(big, *pic) == Decimal{34500, 2});

    // unsigned pictures discard the sign
    Rational neg = Rational::from_int(-7);
    CHECK(store_decimal(neg, *pic) == Decimal{700, 2});

    auto signed_pic = parse_picture("S9(3)V99");
    REQUIRE(signed_pic.has_value());
    CHECK(store_decimal(neg, *signed_pic) == Decimal{-700, 2});
}
