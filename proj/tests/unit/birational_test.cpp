#include "quasiform/birational.hpp"
#include "quasiform/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qf;

namespace
{

class BirationalTest : public ::testing::Test
{
protected:
    TowerPtr k = FieldTower::rational({"a", "b", "c"});
    TowerElement a = TowerElement::variable(k, "a");
    TowerElement b = TowerElement::variable(k, "b");
    TowerElement c = TowerElement::variable(k, "c");
    TowerElement one = TowerElement::one(k);

    QuasilinearForm form(std::vector<TowerElement> coeffs) const
    {
        return {k, std::move(coeffs)};
    }

    QuasilinearForm random_form(std::mt19937 &rng, std::size_t dim) const
    {
        std::uniform_int_distribution<int> e(0, 2);
        std::vector<TowerElement> coeffs;
        while (coeffs.size() < dim) {
            const int ea = e(rng);
            const int eb = e(rng);
            const int ec = e(rng);
            if (ea + eb + ec <= 2) {
                coeffs.push_back(a.pow(ea) * b.pow(eb) * c.pow(ec));
            }
        }
        return form(std::move(coeffs));
    }
};

} // namespace

TEST_F(BirationalTest, RationalMapChecksTarget)
{
    const QuasilinearForm q = form({one, a});
    const FunctionFieldData f = function_field(q);
    EXPECT_NO_THROW(RationalMap(f.tower, f.generic_point, q));
    EXPECT_THROW(RationalMap(k, {one, one}, q), InconsistencyDetected);
    EXPECT_THROW(RationalMap(k, {TowerElement::zero(k), TowerElement::zero(k)}, q), InconsistencyDetected);
}

TEST_F(BirationalTest, ProjectiveRatio)
{
    EXPECT_EQ(projective_ratio({a, b}, {a * c, b * c}), c);
    EXPECT_FALSE(projective_ratio({a, b}, {a, a}).has_value());
    EXPECT_FALSE(projective_ratio({a, TowerElement::zero(k)}, {a, b}).has_value());
}

TEST_F(BirationalTest, IsotropyOverFunctionFields)
{
    const QuasilinearForm p = form({one, a, b, a * b});
    EXPECT_TRUE(is_isotropic_over(p, p));
    EXPECT_TRUE(is_isotropic_over(form({one, a, b}), p));
    EXPECT_FALSE(is_isotropic_over(form({a, b, c}), form({one, a})));
    EXPECT_TRUE(is_isotropic_over(form({one, a, b}), form({one, a})));
    EXPECT_THROW(is_isotropic_over(p, form({a})), DimensionTooSmall);
}

TEST_F(BirationalTest, Domination)
{
    const QuasilinearForm x = form({one, a, b});
    const QuasilinearForm p = form({one, a, b, a * b});
    const DominationReport r1 = essdim_domination_check(x, p);
    EXPECT_EQ(r1.verdict, Domination::equivalent);
    EXPECT_EQ(r1.dim_es_x, 1U);
    EXPECT_EQ(r1.dim_es_y, 1U);
    EXPECT_EQ(essdim_domination_check(p, p).verdict, Domination::equivalent);
    const DominationReport r3 = essdim_domination_check(form({one, a}), x);
    EXPECT_EQ(r3.dim_es_x, 0U);
    EXPECT_EQ(r3.dim_es_y, 1U);
    EXPECT_TRUE(r3.y_isotropic_over_x);
    EXPECT_FALSE(r3.x_isotropic_over_y);
    EXPECT_EQ(r3.verdict, Domination::x_below_y);
}

TEST_F(BirationalTest, StableEquivalenceAndBirationality)
{
    const QuasilinearForm q1 = form({one, a, b, a * b, c});
    const QuasilinearForm q2 = form({one, a, c, a * c, b});
    EXPECT_TRUE(decide_birational(q1, q2));
    const QuasilinearForm x = form({one, a, b});
    const QuasilinearForm p = form({one, a, b, a * b});
    EXPECT_TRUE(decide_stably_equivalent(x, p));
    EXPECT_FALSE(decide_birational(x, p));
    EXPECT_TRUE(decide_birational(p, p));
    EXPECT_FALSE(decide_stably_equivalent(form({one, a}), form({one, b})));
}

TEST_F(BirationalTest, RulingOfTwoFoldPfister)
{
    const RulingDecomposition d = construct_ruling(form({one, a, b, a * b}));
    EXPECT_EQ(d.r, 2U);
    EXPECT_EQ(d.Y.to_string(), "<1, a, b>");
    EXPECT_EQ(d.s_basis.size(), 2U);
    EXPECT_FALSE(d.lambda.is_zero());
    EXPECT_TRUE(verify_ruling(d));

    RulingDecomposition broken = d;
    broken.fibers.front() += TowerElement::one(d.x_field.tower);
    EXPECT_FALSE(verify_ruling(broken));
}

TEST_F(BirationalTest, NotRuled)
{
    EXPECT_THROW(construct_ruling(form({one, a, b, a * b, c})), NotRuled);
    EXPECT_THROW(construct_ruling(form({a, b, c})), NotRuled);
}

TEST_F(BirationalTest, UniqueSelfMap)
{
    EXPECT_TRUE(unique_self_map_check(form({a, b, c})));
    EXPECT_FALSE(unique_self_map_check(form({one, a, b, a * b})));
    EXPECT_TRUE(unique_self_map_check(form({a, b})));
}

TEST_F(BirationalTest, Regularity)
{
    const RegularityReport r1 = is_regular_quadric(form({one, a, b, a * b, c}));
    EXPECT_FALSE(r1.regular);
    ASSERT_TRUE(r1.differentials.has_value());
    EXPECT_FALSE(*r1.differentials);
    const RegularityReport r2 = is_regular_quadric(form({one, a, b, c}));
    EXPECT_TRUE(r2.regular);
    EXPECT_TRUE(r2.pfister_anisotropic);
    EXPECT_EQ(r2.generic_pattern, std::optional<bool>(true));
    EXPECT_FALSE(is_regular_quadric(form({one, a * a})).regular);
}

TEST_F(BirationalTest, NeighborRulingMap)
{
    const QuasiPfisterForm p(k, {a, b});
    const auto m = neighbor_ruling_map(special_neighbor_ruling(p, {0, 1}, {one, c}));
    ASSERT_TRUE(m.has_value());
    EXPECT_TRUE(m->verify());
    EXPECT_FALSE(neighbor_ruling_map(special_neighbor_ruling(p, {0, 1, 2, 3}, {one})).has_value());
}

TEST_F(BirationalTest, PropertyRuledIffWittIndexAboveOne)
{
    std::mt19937 rng(77);
    int tested = 0;
    for (int iter = 0; iter < 60 && tested < 15; ++iter) {
        const QuasilinearForm q = random_form(rng, 2 + iter % 3);
        if (!is_anisotropic(q)) {
            continue;
        }
        ++tested;
        const bool unique = unique_self_map_check(q);
        EXPECT_EQ(unique, first_witt_index(q) == 1);
        if (unique) {
            EXPECT_THROW(construct_ruling(q), NotRuled);
        } else {
            const RulingDecomposition d = construct_ruling(q);
            EXPECT_TRUE(verify_ruling(d));
            EXPECT_EQ(unique_self_map_check(d.Y), true);
        }
    }
    EXPECT_GE(tested, 8);
}

TEST_F(BirationalTest, PropertyDominationAndRegularity)
{
    std::mt19937 rng(91);
    std::vector<QuasilinearForm> suite;
    while (suite.size() < 6) {
        const QuasilinearForm q = random_form(rng, 2 + suite.size() % 3);
        if (is_anisotropic(q)) {
            suite.push_back(q);
        }
    }
    for (const auto &x : suite) {
        for (const auto &y : suite) {
            const DominationReport r = essdim_domination_check(x, y);
            if (r.y_isotropic_over_x) {
                EXPECT_LE(r.dim_es_x, r.dim_es_y);
            }
        }
        EXPECT_NO_THROW(is_regular_quadric(x));
        // Anisotropy survives a purely transcendental extension.
        EXPECT_TRUE(is_anisotropic(x.over(extend_transcendental(k, {"z"}))));
    }
}
