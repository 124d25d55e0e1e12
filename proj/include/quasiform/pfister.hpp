#ifndef QUASIFORM_PFISTER_HPP
#define QUASIFORM_PFISTER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "quasiform/quasiform.hpp"

namespace qf
{

/// <<a_1, ..., a_n>>: coefficient at subset S is prod_{i in S} a_i. Subsets are
/// bit masks (bit i for slot i) and the expansion is stored in mask order.
class QuasiPfisterForm
{
public:
    /// Throws ZeroSlot.
    QuasiPfisterForm(TowerPtr field, std::vector<TowerElement> slots);

    const TowerPtr &field() const noexcept
    {
        return field_;
    }
    const std::vector<TowerElement> &slots() const noexcept
    {
        return slots_;
    }
    std::size_t fold() const noexcept
    {
        return slots_.size();
    }
    std::size_t dim() const noexcept
    {
        return expansion_.size();
    }
    const std::vector<TowerElement> &expansion() const noexcept
    {
        return expansion_;
    }
    const TowerElement &coefficient(std::uint32_t subset) const
    {
        return expansion_.at(subset);
    }
    /// The diagonal form with coefficients in mask order.
    QuasilinearForm form() const;
    /// P(x) for x indexed by subsets. Throws IndexMismatch.
    TowerElement evaluate(const std::vector<TowerElement> &x) const;

private:
    TowerPtr field_;
    std::vector<TowerElement> slots_;
    std::vector<TowerElement> expansion_;
};

/// Subsets of {0..n-1} ordered by size, then lexicographically by members.
std::vector<std::uint32_t> graded_subset_order(std::size_t n);

/// Diagonal form of all subset products, listed in graded order:
/// <<a,b,c>> = <1, a, b, c, ab, ac, bc, abc>. Throws ZeroSlot.
QuasilinearForm quasi_pfister(const std::vector<TowerElement> &slots);

/// K^2-algebra generated by the coefficients of a form divided by its first one.
struct NormField {
    TowerPtr base;
    std::vector<TowerElement> slots;
    /// Subset products of the slots in mask order; a K^2-basis.
    std::vector<TowerElement> basis;

    std::size_t degree() const noexcept
    {
        return basis.size();
    }
    /// a_S a_T = (a_{S and T})^2 a_{S xor T}: returns (a_{S and T}, S xor T).
    std::pair<TowerElement, std::uint32_t> multiply(std::uint32_t s, std::uint32_t t) const;
};

NormField norm_field(const QuasilinearForm &q);
std::size_t norm_degree(const QuasilinearForm &q);

/// The quasi-Pfister form on the slots of the norm field when q is a neighbor
/// of it (dim q more than half its dimension).
std::optional<QuasiPfisterForm> is_quasi_pfister_neighbor(const QuasilinearForm &q);

/// (x o y)_U = sum over S xor T = U of x_S y_T a_{S and T}. Throws IndexMismatch.
std::vector<TowerElement> albert_multiply(const QuasiPfisterForm &p, const std::vector<TowerElement> &x,
                                          const std::vector<TowerElement> &y);

/// The map (x_1, ..., x_s) -> (x_s o x_1, ..., x_s o x_{s-1}, P(x_s)) from the
/// quadric of b_1 P + ... + b_{s-1} P + b_s P_1 to that of b_1 P + ... + b_{s-1} P + <b_s>.
struct NeighborRuling {
    QuasiPfisterForm pfister;
    /// Subsets of P spanning the coordinate subform P_1.
    std::vector<std::uint32_t> subform;
    std::vector<TowerElement> scalars;
    QuasilinearForm source;
    QuasilinearForm target;

    /// Image of a source point.
    std::vector<TowerElement> apply(const std::vector<TowerElement> &point) const;
    /// target(apply(x)) = P(x_s) source(x) with indeterminate coordinates.
    bool verify_identity() const;
};

/// Throws BadDecomposition.
NeighborRuling special_neighbor_ruling(const QuasiPfisterForm &p, const std::vector<std::uint32_t> &subform,
                                       const std::vector<TowerElement> &scalars);

/// Fresh transcendental coordinates x_1, ..., x_n over a tower.
std::pair<TowerPtr, std::vector<TowerElement>> indeterminate_vector(const TowerPtr &tower, const std::string &stem,
                                                                    std::size_t n);

} // namespace qf

#endif
