#include "quasiform/splitting.hpp"

#include "quasiform/errors.hpp"

#include <algorithm>

namespace qf
{

FunctionFieldData function_field(const QuasilinearForm &q)
{
    const std::size_t d = q.dim();
    if (d < 2) {
        throw DimensionTooSmall("function fields are built for forms of dimension at least 2");
    }
    if (!is_anisotropic(q)) {
        throw IsotropicInput("function fields are built for anisotropic forms");
    }
    FunctionFieldData data;
    TowerPtr t = q.field();
    std::vector<std::string> us;
    for (std::size_t i = 2; i < d; ++i) {
        std::string name = t->fresh_name("u" + std::to_string(i));
        while (std::find(us.begin(), us.end(), name) != us.end()) {
            name += "_";
        }
        us.push_back(name);
    }
    if (!us.empty()) {
        t = extend_transcendental(t, us);
    }
    TowerElement numerator = q.coeffs().front().embed(t);
    for (std::size_t i = 1; i + 1 < d; ++i) {
        numerator += q.coeffs()[i].embed(t) * TowerElement::variable(t, us[i - 1]).squared();
    }
    const TowerElement theta = numerator / q.coeffs().back().embed(t);
    const std::string y = t->fresh_name("y");
    try {
        t = extend_inseparable(t, theta, y);
    } catch (const IsSquare &) {
        throw InconsistencyDetected("function field generator is a square for an anisotropic form");
    }
    data.tower = t;
    data.generic_point.push_back(TowerElement::one(t));
    for (const auto &u : us) {
        data.generic_point.push_back(TowerElement::variable(t, u));
    }
    data.generic_point.push_back(TowerElement::variable(t, y));
    data.fresh_names = us;
    data.fresh_names.push_back(y);
    if (!q.over(t).evaluate(data.generic_point).is_zero()) {
        throw InconsistencyDetected("generic point does not lie on the quadric");
    }
    return data;
}

std::size_t total_index_over(const QuasilinearForm &q, const TowerPtr &extension)
{
    return total_index(q.over(extension));
}

SplittingPattern splitting_pattern(const QuasilinearForm &q)
{
    SplittingPattern pattern;
    QuasilinearForm current = anisotropic_part(q);
    pattern.dims.push_back(current.dim());
    while (current.dim() >= 2) {
        const FunctionFieldData ff = function_field(current);
        current = anisotropic_part(current.over(ff.tower));
        pattern.dims.push_back(current.dim());
    }
    return pattern;
}

std::size_t first_witt_index(const QuasilinearForm &q)
{
    return total_index_over(q, function_field(q).tower);
}

std::size_t essential_dimension(std::size_t dim, std::size_t i1)
{
    return (dim - 2) - (i1 - 1);
}

std::size_t essential_dimension(const QuasilinearForm &q)
{
    return essential_dimension(q.dim(), first_witt_index(q));
}

std::size_t hl_bound(std::size_t dim)
{
    std::size_t p = 1;
    while (2 * p < dim) {
        p *= 2;
    }
    return dim - p;
}

bool check_hl_bound(const QuasilinearForm &q)
{
    return first_witt_index(q) <= hl_bound(q.dim());
}

} // namespace qf
