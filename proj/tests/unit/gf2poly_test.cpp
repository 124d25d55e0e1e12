#include "quasiform/errors.hpp"
#include "quasiform/gf2poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qf;

namespace
{

class Gf2PolyTest : public ::testing::Test
{
protected:
    PolyRing ring{{"a", "b", "c"}};
    Poly a = ring.variable("a");
    Poly b = ring.variable("b");
    Poly c = ring.variable("c");
    Poly one = Poly::one();

    static Poly random_poly(std::mt19937 &rng, std::size_t vars, int max_terms, int max_exp)
    {
        std::uniform_int_distribution<int> terms(0, max_terms);
        std::uniform_int_distribution<int> exp(0, max_exp);
        Poly p;
        const int n = terms(rng);
        for (int t = 0; t < n; ++t) {
            std::vector<Poly::Exponent> e(vars);
            for (auto &x : e) {
                x = static_cast<Poly::Exponent>(exp(rng));
            }
            p += Poly::monomial(e);
        }
        return p;
    }
};

} // namespace

TEST_F(Gf2PolyTest, AdditionIsCharacteristicTwo)
{
    const RatFn x = a + b;
    EXPECT_TRUE((x + x).is_zero());
}

TEST_F(Gf2PolyTest, SquareOfSumIsSumOfSquares)
{
    EXPECT_EQ((a + b) * (a + b), a.squared() + b.squared());
}

TEST_F(Gf2PolyTest, DivisionCancels)
{
    const RatFn q = RatFn(a.squared() * b + b) / RatFn(b);
    EXPECT_EQ(q, RatFn(a.squared() + one));
    EXPECT_THROW((void)(RatFn(a) / RatFn()), DivisionByZero);
}

TEST_F(Gf2PolyTest, Derivatives)
{
    EXPECT_EQ(ring.derivative(a * b, "a"), b);
    EXPECT_TRUE(ring.derivative(a.squared() * c, "a").is_zero());
    EXPECT_EQ(ring.derivative(a.pow(3) + b, "a"), a.squared());
    EXPECT_THROW((void)ring.derivative(a, "z"), UnknownVariable);
}

TEST_F(Gf2PolyTest, SquareRoots)
{
    EXPECT_EQ(RatFn(a.squared() + b.squared()).sqrt(), RatFn(a + b));
    EXPECT_FALSE(RatFn(a + b.squared()).sqrt().has_value());
    const RatFn x = RatFn(a.pow(4) * b.squared(), c.squared());
    EXPECT_EQ(x.sqrt(), RatFn(a.squared() * b, c));
}

TEST_F(Gf2PolyTest, GcdOfStructuredInputs)
{
    const Poly f = a * b + c;
    const Poly g = a + b * b * c + one;
    const Poly h = a * c + b;
    EXPECT_EQ(gcd(f * g, f * h), f);
    EXPECT_EQ(gcd(f * g * a.squared(), g * h * a), g * a);
    EXPECT_TRUE(gcd(f, g).is_one());
    EXPECT_EQ(gcd(Poly{}, f), f);
}

TEST_F(Gf2PolyTest, ExactDivisionByDenserDivisor)
{
    // The divisor may have more terms than the dividend over GF(2).
    const Poly divisor = a.squared() + a + one;
    EXPECT_EQ(divide_exact(a.pow(3) + one, divisor), a + one);
    EXPECT_FALSE(divide_exact(a.pow(3) + a, divisor).has_value());
}

TEST_F(Gf2PolyTest, RatFnNormalizationGivesStructuralEquality)
{
    const Poly f = a * b + c;
    const RatFn x(f * (a + one), f * (b + one));
    const RatFn y(a + one, b + one);
    EXPECT_EQ(x, y);
    EXPECT_EQ(x.num(), a + one);
}

TEST_F(Gf2PolyTest, PrintsReadableExpressions)
{
    EXPECT_EQ(ring.to_string(a.squared() * b + c + one), "a^2*b + c + 1");
    EXPECT_EQ(ring.to_string(RatFn(a + b, a * c)), "(a + b)/(a*c)");
    EXPECT_EQ(ring.to_string(RatFn(a, c)), "a/c");
    EXPECT_EQ(ring.to_string(Poly{}), "0");
}

TEST_F(Gf2PolyTest, ParitySplitReassembles)
{
    std::mt19937 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        const Poly p = random_poly(rng, 3, 8, 5);
        Poly back;
        for (const auto &[key, root] : p.parity_split()) {
            std::vector<Poly::Exponent> e(3, 0);
            for (std::size_t v = 0; v < 3; ++v) {
                if (!key.empty() && ((key[0] >> v) & 1U)) {
                    e[v] = 1;
                }
            }
            back += Poly::monomial(e) * root.squared();
        }
        EXPECT_EQ(back, p);
    }
}

TEST_F(Gf2PolyTest, PropertyFrobeniusAndLeibniz)
{
    std::mt19937 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        const Poly p = random_poly(rng, 3, 6, 4);
        const Poly q = random_poly(rng, 3, 6, 4);
        EXPECT_EQ((p + q).squared(), p.squared() + q.squared());
        EXPECT_EQ((p + q) * (p + q), p.squared() + q.squared());
        for (std::size_t v = 0; v < 3; ++v) {
            EXPECT_TRUE(p.squared().derivative(v).is_zero());
            EXPECT_EQ((p * q).derivative(v), p * q.derivative(v) + q * p.derivative(v));
        }
        EXPECT_EQ(p.squared().sqrt(), p);
    }
}

TEST_F(Gf2PolyTest, PropertyGcdDividesAndRecoversCommonFactor)
{
    std::mt19937 rng(3);
    for (int iter = 0; iter < 60; ++iter) {
        const Poly f = random_poly(rng, 3, 3, 2);
        const Poly g = random_poly(rng, 3, 3, 2);
        const Poly h = random_poly(rng, 3, 3, 2);
        if (f.is_zero() || g.is_zero() || h.is_zero()) {
            continue;
        }
        const Poly d = gcd(f * g, f * h);
        ASSERT_TRUE(divide_exact(f * g, d).has_value());
        ASSERT_TRUE(divide_exact(f * h, d).has_value());
        ASSERT_TRUE(divide_exact(d, f).has_value());
        const Poly cofactor_gcd = gcd(*divide_exact(f * g, d), *divide_exact(f * h, d));
        EXPECT_TRUE(cofactor_gcd.is_one());
    }
}

TEST_F(Gf2PolyTest, PropertyFieldAxiomsOnRatFn)
{
    std::mt19937 rng(5);
    auto random_ratfn = [&]() {
        Poly d;
        while (d.is_zero()) {
            d = random_poly(rng, 3, 3, 2);
        }
        return RatFn(random_poly(rng, 3, 3, 2), d);
    };
    for (int iter = 0; iter < 60; ++iter) {
        const RatFn x = random_ratfn();
        const RatFn y = random_ratfn();
        const RatFn z = random_ratfn();
        EXPECT_EQ((x + y) * z, x * z + y * z);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ((x + y) + z, x + (y + z));
        if (!x.is_zero()) {
            EXPECT_TRUE((x * x.inverse()).is_one());
            EXPECT_EQ((y / x) * x, y);
        }
        EXPECT_EQ(x.squared().sqrt(), x);
    }
}
