#ifndef QUASIFORM_QUASIFORM_HPP
#define QUASIFORM_QUASIFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "quasiform/fieldtower.hpp"
#include "quasiform/sqlinalg.hpp"

namespace qf
{

/// Diagonal quasilinear form a_1 x_1^2 + ... + a_n x_n^2 with nonzero
/// coefficients over a field tower.
class QuasilinearForm
{
public:
    /// Throws ZeroCoefficient, DimensionTooSmall (no coefficients).
    QuasilinearForm(TowerPtr field, std::vector<TowerElement> coeffs);

    const TowerPtr &field() const noexcept
    {
        return field_;
    }
    const std::vector<TowerElement> &coeffs() const noexcept
    {
        return coeffs_;
    }
    std::size_t dim() const noexcept
    {
        return coeffs_.size();
    }

    /// q(x). Throws DimensionMismatch.
    TowerElement evaluate(const std::vector<TowerElement> &x) const;

    /// c * q. Throws ZeroCoefficient for c = 0.
    QuasilinearForm scaled(const TowerElement &c) const;
    /// The same form with coefficients viewed in a tower this one embeds into.
    QuasilinearForm over(const TowerPtr &bigger) const;
    /// Form on the given coefficient positions, in the given order.
    QuasilinearForm subform(const std::vector<std::size_t> &indices) const;
    QuasilinearForm orthogonal_sum(const QuasilinearForm &other) const;

    std::string to_string() const;

private:
    TowerPtr field_;
    std::vector<TowerElement> coeffs_;
};

struct FormInvariants {
    std::size_t dim = 0;
    std::size_t total_index = 0;
    std::size_t anisotropic_dim = 0;
};

std::size_t total_index(const QuasilinearForm &q);
bool is_anisotropic(const QuasilinearForm &q);
/// Form on the greedy K^2-independent coefficient sub-list.
QuasilinearForm anisotropic_part(const QuasilinearForm &q);
FormInvariants invariants(const QuasilinearForm &q);

/// Basis of the isotropic vectors of q over an extension tower.
std::vector<std::vector<TowerElement>> isotropic_kernel_basis(const QuasilinearForm &q, const TowerPtr &tower);

/// Equal dimension and equal K^2-spans of the coefficients.
bool is_isometric(const QuasilinearForm &q, const QuasilinearForm &r);

/// K^2-algebra generated by a list of elements whose squares lie in K^2.
struct SquareAlgebra {
    /// Elements that enlarged the algebra, in order.
    std::vector<TowerElement> slots;
    /// Subset products of the slots in binary-counter order; a K^2-basis.
    std::vector<TowerElement> basis;
};

/// Adds generators one at a time; each generator outside the current algebra
/// doubles it. Throws NormFieldNotAField if a doubling fails to be independent.
SquareAlgebra generate_square_algebra(const std::vector<TowerElement> &generators, const TowerPtr &tower);

/// A factor c with r isometric to c*q, or nothing when the forms are not
/// similar. Throws DimensionMismatch, NotAnisotropic, NormFieldNotAField.
std::optional<TowerElement> decide_similar(const QuasilinearForm &q, const QuasilinearForm &r);

/// Restriction of q to j successive generic hyperplanes over fresh
/// transcendentals. Throws BadCodimension, NotAnisotropic.
QuasilinearForm generic_subform(const QuasilinearForm &q, std::size_t j);

} // namespace qf

#endif
