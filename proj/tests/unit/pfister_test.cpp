#include "quasiform/errors.hpp"
#include "quasiform/pfister.hpp"
#include "quasiform/splitting.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qf;

namespace
{

class PfisterTest : public ::testing::Test
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
};

} // namespace

TEST_F(PfisterTest, Expansion)
{
    EXPECT_EQ(quasi_pfister({a}).to_string(), "<1, a>");
    EXPECT_EQ(quasi_pfister({a, b}).to_string(), "<1, a, b, a*b>");
    EXPECT_EQ(quasi_pfister({a, b, c}).to_string(), "<1, a, b, c, a*b, a*c, b*c, a*b*c>");
    const QuasiPfisterForm p(k, {a, b, c});
    EXPECT_TRUE(p.coefficient(0).is_one());
    EXPECT_EQ(p.coefficient(1), a);
    EXPECT_EQ(p.coefficient(2), b);
    EXPECT_EQ(p.coefficient(4), c);
    EXPECT_EQ(p.coefficient(7), a * b * c);
    EXPECT_THROW(QuasiPfisterForm(k, {a, TowerElement::zero(k)}), ZeroSlot);
    EXPECT_EQ(graded_subset_order(2), (std::vector<std::uint32_t>{0, 1, 2, 3}));
    EXPECT_EQ(graded_subset_order(3), (std::vector<std::uint32_t>{0, 1, 2, 4, 3, 5, 6, 7}));
}

TEST_F(PfisterTest, NormDegree)
{
    const NormField n = norm_field(form({one, a, b, a * b, c}));
    EXPECT_EQ(n.degree(), 8U);
    EXPECT_TRUE(is_isometric(QuasilinearForm(k, n.basis), quasi_pfister({a, b, c})));
    EXPECT_EQ(norm_degree(form({one, a})), 2U);

    const TowerPtr t = FieldTower::rational({"t1", "t2", "t3", "t4"});
    std::vector<TowerElement> ts;
    for (const char *name : {"t1", "t2", "t3", "t4"}) {
        ts.push_back(TowerElement::variable(t, name));
    }
    EXPECT_EQ(norm_degree(QuasilinearForm(t, ts)), 8U);

    const auto [sq, mask] = n.multiply(3, 1);
    EXPECT_EQ(mask, 2U);
    EXPECT_EQ(sq.squared() * n.basis[mask], n.basis[3] * n.basis[1]);
}

TEST_F(PfisterTest, Neighbors)
{
    const auto n1 = is_quasi_pfister_neighbor(form({one, a, b, a * b, c}));
    ASSERT_TRUE(n1.has_value());
    EXPECT_EQ(n1->dim(), 8U);
    EXPECT_TRUE(is_isometric(n1->form(), quasi_pfister({a, b, c})));
    EXPECT_FALSE(is_quasi_pfister_neighbor(form({one, a, b, c})).has_value());
    const auto n2 = is_quasi_pfister_neighbor(quasi_pfister({a, b}));
    ASSERT_TRUE(n2.has_value());
    EXPECT_TRUE(is_isometric(n2->form(), quasi_pfister({a, b})));
}

TEST_F(PfisterTest, AlbertProduct)
{
    const QuasiPfisterForm p1(k, {a});
    const TowerPtr t = extend_transcendental(k, {"x0", "x1", "y0", "y1"});
    auto v = [&](const char *n) { return TowerElement::variable(t, n); };
    const auto prod = albert_multiply(p1, {v("x0"), v("x1")}, {v("y0"), v("y1")});
    const TowerElement at = a.embed(t);
    EXPECT_EQ(prod[0], v("x0") * v("y0") + at * v("x1") * v("y1"));
    EXPECT_EQ(prod[1], v("x0") * v("y1") + v("x1") * v("y0"));

    const QuasiPfisterForm p2(k, {a, b});
    const std::vector<TowerElement> x{a, b + one, c, a * c};
    const std::vector<TowerElement> e{one, TowerElement::zero(k), TowerElement::zero(k), TowerElement::zero(k)};
    EXPECT_EQ(albert_multiply(p2, x, e), x);
    EXPECT_THROW(albert_multiply(p2, x, {one}), IndexMismatch);
}

TEST_F(PfisterTest, PropertyAlbertMultiplicativity)
{
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::vector<TowerElement> all{a, b, c};
        const std::vector<TowerElement> slots(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
        const QuasiPfisterForm p(k, slots);
        const auto [tx, xs] = indeterminate_vector(k, "x", p.dim());
        const auto [txy, ys] = indeterminate_vector(tx, "y", p.dim());
        std::vector<TowerElement> xe;
        for (const auto &x : xs) {
            xe.push_back(x.embed(txy));
        }
        const auto prod = albert_multiply(p, xe, ys);
        EXPECT_EQ(p.evaluate(prod), p.evaluate(xe) * p.evaluate(ys)) << "n = " << n;
    }
    // Random specializations with polynomial entries.
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> e(0, 2);
    const QuasiPfisterForm p(k, {a, b + c});
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<TowerElement> x;
        std::vector<TowerElement> y;
        for (int i = 0; i < 4; ++i) {
            x.push_back(a.pow(e(rng)) + b.pow(e(rng)) * c.pow(e(rng)));
            y.push_back(c.pow(e(rng)) + a.pow(e(rng)));
        }
        EXPECT_EQ(p.evaluate(albert_multiply(p, x, y)), p.evaluate(x) * p.evaluate(y));
    }
}

TEST_F(PfisterTest, PropertyNormDegreeInvariance)
{
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> e(0, 2);
    int checked = 0;
    for (int iter = 0; iter < 60 && checked < 25; ++iter) {
        std::vector<TowerElement> coeffs;
        const std::size_t dim = 2 + iter % 4;
        while (coeffs.size() < dim) {
            const int ea = e(rng);
            const int eb = e(rng);
            const int ec = e(rng);
            if (ea + eb + ec <= 2) {
                coeffs.push_back(a.pow(ea) * b.pow(eb) * c.pow(ec));
            }
        }
        const QuasilinearForm q = form(coeffs);
        if (!is_anisotropic(q)) {
            continue;
        }
        ++checked;
        const std::size_t d = norm_degree(q);
        EXPECT_EQ(d & (d - 1), 0U);
        EXPECT_EQ(norm_degree(q.scaled(a * b + c)), d);
        std::vector<TowerElement> moved = q.coeffs();
        moved.front() += (a + one).squared() * moved.back();
        EXPECT_EQ(norm_degree(form(moved)), d);
        // Quasi-Pfister exactly when the norm degree equals the dimension.
        const bool pfister_like = d == q.dim();
        const auto nb = is_quasi_pfister_neighbor(q);
        EXPECT_EQ(nb.has_value(), 2 * q.dim() > d);
        if (nb) {
            EXPECT_EQ(pfister_like, is_isometric(q.scaled(q.coeffs().front().inverse()), nb->form()));
            const TowerElement inv = q.coeffs().front().inverse();
            for (const auto &x : q.coeffs()) {
                const auto rel = k2_membership(x * inv, nb->expansion());
                ASSERT_TRUE(rel.has_value());
                EXPECT_TRUE(rel->verify());
            }
        }
    }
    EXPECT_GE(checked, 15);
}

TEST_F(PfisterTest, SpecialNeighborRuling)
{
    const QuasiPfisterForm p(k, {a, b});
    const NeighborRuling r = special_neighbor_ruling(p, {0, 1}, {one, c});
    EXPECT_EQ(r.source.to_string(), "<1, a, b, a*b, c, a*c>");
    EXPECT_EQ(r.target.to_string(), "<1, a, b, a*b, c>");
    EXPECT_TRUE(r.verify_identity());
    const FunctionFieldData f = function_field(r.source);
    const auto image = r.apply(f.generic_point);
    EXPECT_TRUE(r.target.over(f.tower).evaluate(image).is_zero());

    const NeighborRuling trivial = special_neighbor_ruling(p, {0, 1, 2, 3}, {b});
    EXPECT_EQ(trivial.target.dim(), 1U);
    EXPECT_TRUE(trivial.verify_identity());

    const QuasiPfisterForm p1(k, {a});
    const NeighborRuling self = special_neighbor_ruling(p1, {0}, {one, b});
    EXPECT_EQ(self.source.to_string(), "<1, a, b>");
    EXPECT_EQ(self.target.to_string(), "<1, a, b>");
    const FunctionFieldData g = function_field(self.source);
    EXPECT_TRUE(self.target.over(g.tower).evaluate(self.apply(g.generic_point)).is_zero());

    EXPECT_THROW(special_neighbor_ruling(p, {0, 0}, {one, c}), BadDecomposition);
    EXPECT_THROW(special_neighbor_ruling(p, {}, {one}), BadDecomposition);
    EXPECT_THROW(special_neighbor_ruling(p, {0}, {}), BadDecomposition);
    EXPECT_THROW(special_neighbor_ruling(p, {9}, {one}), BadDecomposition);
}
