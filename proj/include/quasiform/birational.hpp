#ifndef QUASIFORM_BIRATIONAL_HPP
#define QUASIFORM_BIRATIONAL_HPP

#include <optional>
#include <vector>

#include "quasiform/pfister.hpp"
#include "quasiform/splitting.hpp"

namespace qf
{

/// A rational map into the quadric of `target`, given by its value at the
/// generic point of the source: projective coordinates over the source field.
class RationalMap
{
public:
    /// Throws InconsistencyDetected unless target(coords) = 0 with coords not all zero.
    RationalMap(TowerPtr source_field, std::vector<TowerElement> coords, QuasilinearForm target);

    const TowerPtr &source_field() const noexcept
    {
        return source_field_;
    }
    const std::vector<TowerElement> &coords() const noexcept
    {
        return coords_;
    }
    const QuasilinearForm &target() const noexcept
    {
        return target_;
    }
    bool verify() const;

private:
    TowerPtr source_field_;
    std::vector<TowerElement> coords_;
    QuasilinearForm target_;
};

/// lambda with v = lambda u, decided by cross products u_i v_j = u_j v_i.
/// Absent when the vectors are not projectively equal or either is zero.
std::optional<TowerElement> projective_ratio(const std::vector<TowerElement> &u, const std::vector<TowerElement> &v);

/// X birational to Y x P^{r-1}.
struct RulingDecomposition {
    QuasilinearForm X;
    std::size_t r;
    /// X with its last r - 1 coefficients dropped.
    QuasilinearForm Y;
    FunctionFieldData x_field;
    FunctionFieldData y_field;
    /// Basis of the isotropic vectors of X over k(Y).
    std::vector<std::vector<TowerElement>> s_basis;
    /// (y, [1, w_2, ..., w_r]) -> sum w_i s_i(y), over k(Y)(w_2, ..., w_r).
    RationalMap phi;
    /// X -> Y: an isotropic vector of Y over k(X).
    RationalMap pi;
    /// s_i composed with pi, over k(X).
    std::vector<std::vector<TowerElement>> pulled_back;
    /// f_i with sum f_i (s_i o pi) = lambda g, g the generic point of X.
    std::vector<TowerElement> fibers;
    TowerElement lambda;
};

/// True iff p gains isotropy over k(q). Throws DimensionTooSmall, IsotropicInput.
bool is_isotropic_over(const QuasilinearForm &p, const QuasilinearForm &q);

enum class Domination { x_below_y, y_below_x, equivalent, incomparable };

std::string_view to_string(Domination d) noexcept;

struct DominationReport {
    Domination verdict;
    std::size_t dim_es_x;
    std::size_t dim_es_y;
    /// X isotropic over k(Y).
    bool x_isotropic_over_y;
    /// Y isotropic over k(X).
    bool y_isotropic_over_x;
};

/// Compares essential dimensions against mutual isotropy; throws
/// InconsistencyDetected when they contradict each other.
DominationReport essdim_domination_check(const QuasilinearForm &x, const QuasilinearForm &y);

bool decide_stably_equivalent(const QuasilinearForm &x, const QuasilinearForm &y);
bool decide_birational(const QuasilinearForm &x, const QuasilinearForm &y);

/// Throws NotRuled when i_1(X) = 1, TowerDepthExceeded.
RulingDecomposition construct_ruling(const QuasilinearForm &x);

/// Re-derives every identity the decomposition claims.
bool verify_ruling(const RulingDecomposition &d);

/// i_1(X) = 1, checked on the isotropic vectors of X over k(X).
bool unique_self_map_check(const QuasilinearForm &x);

struct RegularityReport {
    bool regular = false;
    std::size_t n = 0;
    /// Independence of the differentials, over purely transcendental bases only.
    std::optional<bool> differentials;
    bool pfister_anisotropic = false;
    /// Absent when the splitting tower exceeds the depth limit.
    std::optional<bool> generic_pattern;
};

/// Scales q to end in 1 and evaluates the equivalent regularity conditions.
/// Throws InconsistencyDetected when they disagree.
RegularityReport is_regular_quadric(const QuasilinearForm &q);

/// The neighbor ruling evaluated at the generic point of its source, when the
/// source is anisotropic and the image does not vanish.
std::optional<RationalMap> neighbor_ruling_map(const NeighborRuling &ruling);

} // namespace qf

#endif
