#include <gtest/gtest.h>

#include <string>

#include "mdisc/parse.hpp"
#include "support/generators.hpp"

using namespace mdisc;
using namespace mdisc::testing;

namespace {

std::size_t error_offset(const RingPtr& r, const std::string& text) {
    try {
        (void)parse(r, text);
    } catch (const ParseError& e) {
        return e.offset();
    }
    ADD_FAILURE() << "no parse error for '" << text << "'";
    return SIZE_MAX;
}

}  // namespace

TEST(Parse, CuspidalD4) {
    const auto r = declare_ring("y1,y2,y3,t");
    const Polynomial p = parse(r, "y1^2 + y2*y3^2 + y3^3");
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(p.coefficient(Monomial{2, 0, 0, 0}), 1);
    EXPECT_EQ(p.coefficient(Monomial{0, 1, 2, 0}), 1);
    EXPECT_EQ(p.coefficient(Monomial{0, 0, 3, 0}), 1);
}

TEST(Parse, ArithmeticValue) {
    const auto r = declare_ring("x,y");
    EXPECT_TRUE(parse(declare_ring("x"), "0").is_zero());
    EXPECT_TRUE(parse(r, "(x+y)^2 - x^2 - 2*x*y - y^2").is_zero());
    EXPECT_EQ(parse(r, "-x"), -Polynomial::variable(r, 0));
    EXPECT_EQ(parse(r, "(-x)^3"), -pow(Polynomial::variable(r, 0), 3));
    EXPECT_EQ(parse(r, "6/4*x"), parse(r, "3/2*x"));
    EXPECT_EQ(parse(r, " x *\ty\n"), parse(r, "x*y"));
    EXPECT_EQ(parse(r, "2^10"), Polynomial::constant(r, 1024));
}

TEST(Parse, ErrorsCarryOffsets) {
    const auto r = declare_ring("x,y");
    EXPECT_EQ(error_offset(r, ""), 0u);
    EXPECT_EQ(error_offset(r, "x + z"), 4u);
    EXPECT_EQ(error_offset(r, "x + 1/0"), 6u);
    EXPECT_EQ(error_offset(r, "2x"), 1u);
    EXPECT_EQ(error_offset(r, "x+"), 2u);
    EXPECT_EQ(error_offset(r, "(x+y"), 4u);
    EXPECT_EQ(error_offset(r, "x # y"), 2u);
    EXPECT_NE(error_offset(r, "x/y"), SIZE_MAX);
    EXPECT_NE(error_offset(r, "1.5*x"), SIZE_MAX);
    EXPECT_NE(error_offset(r, "x^-1"), SIZE_MAX);
    EXPECT_NE(error_offset(r, "x^99999"), SIZE_MAX);
}

TEST(Parse, NoInputCrashes) {
    Rng rng(31);
    const auto r = declare_ring("x,y");
    const std::string alphabet = "xy0123456789+-*/^() z.";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string s;
        const auto len = uniform_int(rng, 0, 14);
        for (long k = 0; k < len; ++k) s += alphabet[static_cast<std::size_t>(uniform_int(rng, 0, alphabet.size() - 1))];
        try {
            (void)parse(r, s);
        } catch (const ParseError& e) {
            EXPECT_LE(e.offset(), s.size()) << s;
        }
    }
}

TEST(Ring, DeclarationRules) {
    EXPECT_EQ(declare_ring(" y1, y2 ,t ")->names(), (std::vector<std::string>{"y1", "y2", "t"}));
    EXPECT_THROW(declare_ring("x,x"), Error);
    EXPECT_THROW(declare_ring("1x"), Error);
    EXPECT_THROW(declare_ring(""), Error);
    EXPECT_TRUE(is_identifier("a_1B"));
    EXPECT_FALSE(is_identifier("_a"));
}

TEST(Render, Canonical) {
    const auto r = declare_ring("x,y");
    EXPECT_EQ(render(Polynomial(r)), "0");
    EXPECT_EQ(render(parse(r, "-y^2 + x^2")), "x^2 - y^2");
    EXPECT_EQ(render(parse(r, "-x")), "-x");
    EXPECT_EQ(render(parse(r, "3/4*x - 1")), "3/4*x - 1");
    EXPECT_EQ(render(parse(r, "y*x^2*y")), "x^2*y^2");
}

TEST(Render, RoundTripRandomPolynomials) {
    Rng rng(32);
    for (int trial = 0; trial < 600; ++trial) {
        const auto r = make_indexed_ring("v", static_cast<std::size_t>(uniform_int(rng, 1, 5)));
        const Polynomial p = random_polynomial(rng, r, static_cast<std::size_t>(uniform_int(rng, 0, 9)), 7);
        const std::string text = render(p);
        EXPECT_EQ(parse(r, text), p) << text;
        EXPECT_EQ(render(parse(r, text)), text);
    }
}

TEST(Parse, LeadingZerosAreDecimal) {
    const auto r = declare_ring("x,y");
    EXPECT_EQ(parse(r, "09*x"), parse(r, "9*x"));
    EXPECT_EQ(parse(r, "010/08"), parse(r, "5/4"));
}
