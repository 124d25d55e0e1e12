#ifndef QUASIFORM_SQLINALG_HPP
#define QUASIFORM_SQLINALG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "quasiform/fieldtower.hpp"

namespace qf
{

/// target = sum_i coefficients[i] * generators[i] with every coefficient a
/// square; roots[i]^2 = coefficients[i].
struct SquareRelation {
    TowerElement target;
    std::vector<TowerElement> generators;
    std::vector<TowerElement> coefficients;
    std::vector<TowerElement> roots;

    /// Re-evaluates the identity and the square roots exactly.
    bool verify() const;
};

/// Present iff target lies in the K^2-span of gens, K the tower of the gens.
std::optional<SquareRelation> k2_membership(const TowerElement &target, const std::vector<TowerElement> &gens);

struct RankResult {
    std::size_t rank = 0;
    /// Positions of the earliest maximal K^2-independent sub-list.
    std::vector<std::size_t> indices;
    std::vector<TowerElement> independent;
};

/// Greedy left-to-right K^2-rank. Throws ZeroGenerator.
RankResult k2_rank(const std::vector<TowerElement> &gens, const TowerPtr &tower);

/// Basis of {x in K^d : sum a_i x_i^2 = 0}, one vector per dependent
/// coefficient: 1 in that slot, square roots of the relation coefficients in
/// the earlier independent slots. Throws ZeroGenerator.
std::vector<std::vector<TowerElement>> isotropic_kernel_basis(const std::vector<TowerElement> &coefficients,
                                                              const TowerPtr &tower);

namespace linalg
{

/// Sparse column over the rational base: (row, entry) pairs sorted by row.
using SparseVector = std::vector<std::pair<std::size_t, Poly>>;

/// z_c = numerators[c] / denominator.
struct Solution {
    std::vector<Poly> numerators;
    Poly denominator;
};

/// Solve sum_c z_c columns[c] = b over F2(v) for columns known to be linearly
/// independent. Absent when b is outside their span.
std::optional<Solution> solve_independent(const std::vector<SparseVector> &columns, const SparseVector &b);
/// Membership only; skips the exact solve when the columns fill every row.
bool in_span(const std::vector<SparseVector> &columns, const SparseVector &b);

/// Column with entries understood as entries / scale.
struct ScaledColumn {
    SparseVector entries;
    Poly scale = Poly::one();
};

/// Growing list of linearly independent scaled columns with keyed rows.
class ColumnSpan
{
public:
    using RowKey = std::vector<std::uint64_t>;

    std::size_t row_index(const RowKey &key);
    std::optional<std::size_t> find_row(const RowKey &key) const;

    std::size_t size() const noexcept
    {
        return entries_.size();
    }
    void push(ScaledColumn column)
    {
        entries_.push_back(std::move(column.entries));
        scales_.push_back(std::move(column.scale));
    }

    /// Coefficients x with sum x_c column_c = target; absent outside the span.
    std::optional<std::vector<RatFn>> express(const ScaledColumn &target) const;
    bool contains(const ScaledColumn &target) const;

private:
    std::map<RowKey, std::size_t> rows_;
    std::vector<SparseVector> entries_;
    std::vector<Poly> scales_;
};

} // namespace linalg

/// Incrementally built K^2-span of nonzero tower elements, kept independent.
class SquareSpan
{
public:
    explicit SquareSpan(TowerPtr tower);

    const TowerPtr &tower() const noexcept
    {
        return tower_;
    }
    const std::vector<TowerElement> &generators() const noexcept
    {
        return generators_;
    }
    std::size_t size() const noexcept
    {
        return generators_.size();
    }

    /// Roots r with target = sum r_i^2 g_i; absent outside the span.
    std::optional<std::vector<TowerElement>> express(const TowerElement &target) const;
    bool contains(const TowerElement &target) const;
    /// Adds g when it is outside the span; returns whether it was added.
    /// Throws ZeroGenerator.
    bool add(const TowerElement &g);
    /// Roots expressing g when it is in the span; otherwise adds g and returns nothing.
    std::optional<std::vector<TowerElement>> express_or_add(const TowerElement &g);

private:
    std::optional<linalg::ScaledColumn> coordinates(const Expansion &x, linalg::ColumnSpan *grow) const;
    void push(const TowerElement &x);

    TowerPtr tower_;
    std::vector<Expansion> theta_monomials_;
    std::vector<TowerElement> generators_;
    linalg::ColumnSpan span_;
};

/// Incrementally built K-span of vectors in K^n, kept independent.
class VectorSpan
{
public:
    VectorSpan(TowerPtr tower, std::size_t length);

    const TowerPtr &tower() const noexcept
    {
        return tower_;
    }
    std::size_t size() const noexcept
    {
        return vectors_.size();
    }
    const std::vector<std::vector<TowerElement>> &vectors() const noexcept
    {
        return vectors_;
    }

    /// Coefficients k with target = sum k_i v_i; absent outside the span.
    std::optional<std::vector<TowerElement>> express(const std::vector<TowerElement> &target) const;
    bool add(const std::vector<TowerElement> &v);
    std::optional<std::vector<TowerElement>> express_or_add(const std::vector<TowerElement> &v);

private:
    std::optional<linalg::ScaledColumn> coordinates(const std::vector<TowerElement> &v,
                                                    linalg::ColumnSpan *grow) const;
    void push(const std::vector<TowerElement> &v);

    TowerPtr tower_;
    std::size_t length_;
    std::vector<std::vector<TowerElement>> vectors_;
    linalg::ColumnSpan span_;
};

/// Ordinary K-rank of a list of vectors in K^n.
std::size_t k_rank(const std::vector<std::vector<TowerElement>> &vectors, const TowerPtr &tower);

/// Basis of {g in K^k : sum_c g_c columns[c] = 0} for columns in K^n.
std::vector<std::vector<TowerElement>> k_kernel(const std::vector<std::vector<TowerElement>> &columns,
                                                const TowerPtr &tower);

} // namespace qf

#endif
