#include <gtest/gtest.h>

#include "mdisc/gcd.hpp"
#include "mdisc/parse.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace mdisc;
using namespace mdisc::testing;

namespace {

RingPtr xy() { return make_ring({"x", "y"}); }

bool divides(const Polynomial& d, const Polynomial& p) {
    try {
        (void)exact_div(p, d);
        return true;
    } catch (const NotDivisibleError&) {
        return false;
    }
}

bool is_squarefree(const Polynomial& f) {
    Polynomial g = f;
    for (std::size_t v = 0; v < f.ring().size(); ++v) g = gcd(g, partial_derivative(f, v));
    return g.is_constant();
}

bool is_normalized(const Polynomial& p) {
    if (p.leading_coefficient() <= 0) return false;
    Integer g = 0;
    for (const auto& [m, c] : p.terms()) {
        if (!is_integer(c)) return false;
        g = gcd_of(g, c.get_num());
    }
    return g == 1;
}

/// A random linear form a0 + sum ai*xi with at least one nonzero ai.
Polynomial random_linear(Rng& rng, const RingPtr& r) {
    Polynomial p(r);
    while (p.is_zero() || p.is_constant()) {
        p = Polynomial::constant(r, random_rational(rng, 4, 3));
        for (std::size_t i = 0; i < r->size(); ++i)
            if (coin(rng, 0.6)) p = p + random_nonzero_rational(rng, 4, 3) * Polynomial::variable(r, i);
    }
    return p;
}

}  // namespace

TEST(Gcd, Examples) {
    const auto r = xy();
    const Polynomial p = parse(r, "-6*x^2 + 4*y");
    EXPECT_EQ(gcd(p, Polynomial(r)), normalize(p));
    EXPECT_EQ(normalize(p), parse(r, "3*x^2 - 2*y"));

    const Polynomial a = parse(r, "(x+y)^2*(x-y)");
    const Polynomial b = parse(r, "(x+y)*(x-y)^2");
    const Polynomial g = gcd(a, b);
    EXPECT_TRUE(proportional(g, parse(r, "x^2-y^2")));
    EXPECT_TRUE(gcd(exact_div(a, g), exact_div(b, g)).is_constant());

    EXPECT_EQ(gcd(parse(r, "x+1"), parse(r, "y+1")), Polynomial::constant(r, 1));
}

TEST(Gcd, CommonFactorAlwaysDivides) {
    Rng rng(21);
    const auto r = make_indexed_ring("x", 3);
    for (int trial = 0; trial < 120; ++trial) {
        const Polynomial p = random_nonzero_polynomial(rng, r, 4, 3);
        const Polynomial q = random_nonzero_polynomial(rng, r, 4, 3);
        const Polynomial h = random_nonzero_polynomial(rng, r, 3, 2);
        const Polynomial g = gcd(p * h, q * h);
        EXPECT_TRUE(divides(g, p * h));
        EXPECT_TRUE(divides(g, q * h));
        EXPECT_TRUE(divides(normalize(h), g));
        EXPECT_TRUE(is_normalized(g));
        EXPECT_EQ(gcd(q * h, p * h), g);
    }
}

TEST(Gcd, UnivariateAgreesWithEuclid) {
    Rng rng(22);
    const auto r = make_ring({"x"});
    auto euclid = [&](Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial rem = a;
            while (!rem.is_zero() && rem.total_degree() >= b.total_degree()) {
                const auto shift = b.leading_monomial().quotient_of(rem.leading_monomial());
                rem = rem - Polynomial::term(r, shift, rem.leading_coefficient() / b.leading_coefficient()) * b;
            }
            a = b;
            b = rem;
        }
        return a;
    };
    for (int trial = 0; trial < 100; ++trial) {
        const Polynomial h = random_nonzero_polynomial(rng, r, 3, 3);
        const Polynomial a = random_nonzero_polynomial(rng, r, 4, 5) * h;
        const Polynomial b = random_nonzero_polynomial(rng, r, 4, 5) * h;
        EXPECT_TRUE(proportional(gcd(a, b), euclid(a, b)));
    }
}

TEST(Squarefree, Examples) {
    const auto r = make_ring({"y1", "y2", "y3", "t"});
    const auto sd = squarefree_decompose(parse(r, "y3^3*(y3-t)^2"));
    ASSERT_EQ(sd.parts.size(), 2u);
    EXPECT_EQ(sd.parts[0].second, 2u);
    EXPECT_TRUE(proportional(sd.parts[0].first, parse(r, "y3-t")));
    EXPECT_EQ(sd.parts[1].second, 3u);
    EXPECT_TRUE(proportional(sd.parts[1].first, parse(r, "y3")));
    EXPECT_EQ(sd.reconstruct(r), parse(r, "y3^3*(y3-t)^2"));

    const Polynomial sqf = parse(r, "2*y1^2 + y2*t - 3");
    const auto one = squarefree_decompose(sqf);
    ASSERT_EQ(one.parts.size(), 1u);
    EXPECT_EQ(one.parts[0].second, 1u);
    EXPECT_EQ(one.reconstruct(r), sqf);

    const auto cube = squarefree_decompose(parse(r, "(y2+t)^3"));
    ASSERT_EQ(cube.parts.size(), 1u);
    EXPECT_EQ(cube.parts[0].second, 3u);
    EXPECT_EQ(cube.parts[0].first, parse(r, "y2+t"));

    EXPECT_THROW(squarefree_decompose(Polynomial(r)), StructuralError);
}

TEST(Squarefree, ReconstructsRandomProducts) {
    Rng rng(23);
    const auto r = make_indexed_ring("x", 3);
    for (int trial = 0; trial < 80; ++trial) {
        Polynomial p = Polynomial::constant(r, random_nonzero_rational(rng));
        const int factors = static_cast<int>(uniform_int(rng, 1, 3));
        for (int k = 0; k < factors; ++k)
            p = p * pow(random_nonzero_polynomial(rng, r, 3, 2), static_cast<std::uint64_t>(uniform_int(rng, 1, 3)));
        if (p.is_constant()) continue;
        const auto sd = squarefree_decompose(p);
        EXPECT_EQ(sd.reconstruct(r), p);
        std::uint64_t last = 0;
        for (const auto& [f, k] : sd.parts) {
            EXPECT_GT(k, last);
            last = k;
            EXPECT_FALSE(f.is_constant());
            EXPECT_TRUE(is_normalized(f));
            EXPECT_TRUE(is_squarefree(f));
        }
    }
}

TEST(ExponentOne, Examples) {
    const auto r = make_indexed_ring("u", 3);
    EXPECT_TRUE(proportional(exponent_one_part(parse(r, "u3*(u1+u2)^2")), parse(r, "u3")));
    const Polynomial sqf = parse(r, "u1^2+u2^2+1");
    EXPECT_TRUE(proportional(exponent_one_part(sqf), sqf));
    EXPECT_TRUE(exponent_one_part(parse(r, "(u1+u2)^2")).is_constant());
    EXPECT_TRUE(exponent_one_part(parse(r, "-5")).is_constant());
    EXPECT_THROW(exponent_one_part(Polynomial(r)), StructuralError);
}

TEST(ExponentOne, MatchesProductOfSimpleLinearFactors) {
    Rng rng(24);
    const auto r = make_indexed_ring("u", 3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Polynomial> lin;
        while (lin.size() < static_cast<std::size_t>(uniform_int(rng, 1, 4))) {
            const Polynomial l = random_linear(rng, r);
            bool fresh = true;
            for (const auto& m : lin) fresh = fresh && !proportional(m, l);
            if (fresh) lin.push_back(l);
        }
        Polynomial p = Polynomial::constant(r, random_nonzero_rational(rng));
        Polynomial expected = Polynomial::constant(r, 1);
        for (const auto& l : lin) {
            const auto e = static_cast<std::uint64_t>(uniform_int(rng, 1, 3));
            p = p * pow(l, e);
            if (e == 1) expected = expected * l;
        }
        const Polynomial f1 = exponent_one_part(p);
        if (expected.is_constant())
            EXPECT_TRUE(f1.is_constant());
        else
            EXPECT_TRUE(proportional(f1, expected)) << render(p);
    }
}
