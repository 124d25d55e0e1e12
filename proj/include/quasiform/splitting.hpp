#ifndef QUASIFORM_SPLITTING_HPP
#define QUASIFORM_SPLITTING_HPP

#include <string>
#include <vector>

#include "quasiform/quasiform.hpp"

namespace qf
{

/// The function field k(q) of the projective quadric q = 0.
struct FunctionFieldData {
    TowerPtr tower;
    /// (1, u_2, ..., u_{d-1}, y) with q(point) = 0.
    std::vector<TowerElement> generic_point;
    /// u_2, ..., u_{d-1}, then y.
    std::vector<std::string> fresh_names;
};

/// Chart x_1 = 1, solving for x_d: y^2 = (a_1 + a_2 u_2^2 + ... + a_{d-1} u_{d-1}^2) / a_d.
/// Throws IsotropicInput, DimensionTooSmall, TowerDepthExceeded.
FunctionFieldData function_field(const QuasilinearForm &q);

/// dim q minus the K^2-rank of its coefficients over an extension. Throws EmbeddingFailure.
std::size_t total_index_over(const QuasilinearForm &q, const TowerPtr &extension);

struct SplittingPattern {
    std::vector<std::size_t> dims;
};

/// (dim q_0, ..., dim q_h) with q_0 the anisotropic part and q_{j+1} the
/// anisotropic part of q_j over k_j(q_j). Throws TowerDepthExceeded.
SplittingPattern splitting_pattern(const QuasilinearForm &q);

/// Total index of q over k(q). Throws IsotropicInput, DimensionTooSmall.
std::size_t first_witt_index(const QuasilinearForm &q);

/// (dim q - 2) - (i_1(q) - 1).
std::size_t essential_dimension(const QuasilinearForm &q);
std::size_t essential_dimension(std::size_t dim, std::size_t i1);

/// dim - 2^n with 2^n the largest power of two strictly below dim (dim >= 2).
std::size_t hl_bound(std::size_t dim);
bool check_hl_bound(const QuasilinearForm &q);

} // namespace qf

#endif
