#include "quasiform/birational.hpp"

#include "quasiform/errors.hpp"

#include <algorithm>

namespace qf
{

RationalMap::RationalMap(TowerPtr source_field, std::vector<TowerElement> coords, QuasilinearForm target)
    : source_field_(std::move(source_field)), target_(std::move(target))
{
    for (auto &c : coords) {
        coords_.push_back(c.embed(source_field_));
    }
    if (!verify()) {
        throw InconsistencyDetected("rational map does not land on its target quadric");
    }
}

bool RationalMap::verify() const
{
    if (coords_.size() != target_.dim()) {
        return false;
    }
    if (std::all_of(coords_.begin(), coords_.end(), [](const TowerElement &c) { return c.is_zero(); })) {
        return false;
    }
    return target_.over(source_field_).evaluate(coords_).is_zero();
}

std::optional<TowerElement> projective_ratio(const std::vector<TowerElement> &u, const std::vector<TowerElement> &v)
{
    if (u.size() != v.size()) {
        return std::nullopt;
    }
    std::size_t pivot = u.size();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero() != v[i].is_zero()) {
            return std::nullopt;
        }
        if (pivot == u.size() && !u[i].is_zero()) {
            pivot = i;
        }
    }
    if (pivot == u.size()) {
        return std::nullopt;
    }
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (j != pivot && !u[j].is_zero() && !(u[pivot] * v[j] == u[j] * v[pivot])) {
            return std::nullopt;
        }
    }
    return v[pivot] / u[pivot];
}

bool is_isotropic_over(const QuasilinearForm &p, const QuasilinearForm &q)
{
    const TowerPtr t = common_tower(p.field(), q.field());
    const FunctionFieldData f = function_field(q.over(t));
    return total_index_over(p, f.tower) > total_index(p);
}

std::string_view to_string(Domination d) noexcept
{
    switch (d) {
    case Domination::x_below_y:
        return "x_below_y";
    case Domination::y_below_x:
        return "y_below_x";
    case Domination::equivalent:
        return "equivalent";
    case Domination::incomparable:
        return "incomparable";
    }
    return "unknown";
}

DominationReport essdim_domination_check(const QuasilinearForm &x, const QuasilinearForm &y)
{
    DominationReport rep{};
    rep.dim_es_x = essential_dimension(x);
    rep.dim_es_y = essential_dimension(y);
    rep.x_isotropic_over_y = is_isotropic_over(x, y);
    rep.y_isotropic_over_x = is_isotropic_over(y, x);
    auto check = [](bool dominated, std::size_t lower, std::size_t upper, bool converse) {
        if (!dominated) {
            return;
        }
        if (lower > upper || (lower == upper) != converse) {
            throw InconsistencyDetected("essential dimensions contradict the isotropy pattern");
        }
    };
    check(rep.y_isotropic_over_x, rep.dim_es_x, rep.dim_es_y, rep.x_isotropic_over_y);
    check(rep.x_isotropic_over_y, rep.dim_es_y, rep.dim_es_x, rep.y_isotropic_over_x);
    if (rep.x_isotropic_over_y && rep.y_isotropic_over_x) {
        rep.verdict = Domination::equivalent;
    } else if (rep.y_isotropic_over_x) {
        rep.verdict = Domination::x_below_y;
    } else if (rep.x_isotropic_over_y) {
        rep.verdict = Domination::y_below_x;
    } else {
        rep.verdict = Domination::incomparable;
    }
    return rep;
}

bool decide_stably_equivalent(const QuasilinearForm &x, const QuasilinearForm &y)
{
    return is_isotropic_over(x, y) && is_isotropic_over(y, x);
}

bool decide_birational(const QuasilinearForm &x, const QuasilinearForm &y)
{
    return x.dim() == y.dim() && decide_stably_equivalent(x, y);
}

namespace
{

// Field map k(Y) -> k(X) induced by a point p of Y over k(X).
TowerMap pullback(const FunctionFieldData &y_field, const TowerPtr &base, const TowerPtr &x_tower,
                  const std::vector<TowerElement> &p)
{
    const TowerElement inv = p.front().inverse();
    std::vector<TowerElement> base_images;
    const auto &names = y_field.tower->base().names();
    for (const auto &name : names) {
        const auto it = std::find(y_field.fresh_names.begin(), y_field.fresh_names.end(), name);
        if (it == y_field.fresh_names.end()) {
            base_images.push_back(TowerElement::variable(x_tower, name));
        } else {
            const auto slot = static_cast<std::size_t>(it - y_field.fresh_names.begin()) + 1;
            base_images.push_back(p[slot] * inv);
        }
    }
    std::vector<TowerElement> generator_images;
    for (const auto &g : base->generators()) {
        generator_images.push_back(TowerElement::variable(x_tower, g.name));
    }
    generator_images.push_back(p.back() * inv);
    return {y_field.tower, x_tower, std::move(base_images), std::move(generator_images)};
}

std::vector<TowerElement> apply_map(const TowerMap &sigma, const std::vector<TowerElement> &v)
{
    std::vector<TowerElement> out;
    out.reserve(v.size());
    for (const auto &e : v) {
        out.push_back(sigma(e));
    }
    return out;
}

std::vector<TowerElement> combine(const std::vector<std::vector<TowerElement>> &vs,
                                  const std::vector<TowerElement> &weights, const TowerPtr &t)
{
    std::vector<TowerElement> out(vs.front().size(), TowerElement::zero(t));
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] += weights[i] * vs[i][j];
        }
    }
    return out;
}

RationalMap build_phi(const FunctionFieldData &y_field, const std::vector<std::vector<TowerElement>> &s_basis,
                      const QuasilinearForm &x)
{
    std::vector<std::string> names;
    for (std::size_t i = 2; i <= s_basis.size(); ++i) {
        names.push_back(y_field.tower->fresh_name("w" + std::to_string(i)));
    }
    TowerPtr t = y_field.tower;
    std::vector<TowerElement> weights{TowerElement::one(t)};
    if (!names.empty()) {
        t = extend_transcendental(t, names);
        weights.front() = TowerElement::one(t);
        for (const auto &n : names) {
            weights.push_back(TowerElement::variable(t, n));
        }
    }
    std::vector<std::vector<TowerElement>> embedded;
    for (const auto &s : s_basis) {
        std::vector<TowerElement> e;
        for (const auto &c : s) {
            e.push_back(c.embed(t));
        }
        embedded.push_back(std::move(e));
    }
    return {t, combine(embedded, weights, t), x};
}

} // namespace

RulingDecomposition construct_ruling(const QuasilinearForm &x)
{
    const FunctionFieldData x_field = function_field(x);
    const std::vector<TowerElement> &g = x_field.generic_point;
    const auto x_kernel = isotropic_kernel_basis(x, x_field.tower);
    const std::size_t r = x_kernel.size();
    if (r <= 1) {
        throw NotRuled("first Witt index is 1");
    }
    std::vector<std::size_t> keep(x.dim() - (r - 1));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        keep[i] = i;
    }
    const QuasilinearForm y = x.subform(keep);
    const FunctionFieldData y_field = function_field(y);
    const auto s_basis = isotropic_kernel_basis(x, y_field.tower);
    if (s_basis.size() != r) {
        throw InconsistencyDetected("total index over k(Y) differs from the first Witt index");
    }

    // A point of Y over k(X) in the chart x_1 != 0, with a pullback defined on
    // every entry of the s_i.
    const auto y_kernel = isotropic_kernel_basis(y, x_field.tower);
    std::vector<std::vector<TowerElement>> candidates = y_kernel;
    for (std::size_t i = 0; i < y_kernel.size(); ++i) {
        for (std::size_t j = i + 1; j < y_kernel.size(); ++j) {
            candidates.push_back(combine({y_kernel[i], y_kernel[j]},
                                         {TowerElement::one(x_field.tower), TowerElement::one(x_field.tower)},
                                         x_field.tower));
        }
    }
    for (const auto &p : candidates) {
        if (p.front().is_zero()) {
            continue;
        }
        std::vector<std::vector<TowerElement>> pulled;
        try {
            const TowerMap sigma = pullback(y_field, x.field(), x_field.tower, p);
            for (const auto &s : s_basis) {
                pulled.push_back(apply_map(sigma, s));
            }
        } catch (const ZeroElement &) {
            continue;
        } catch (const DivisionByZero &) {
            continue;
        }
        std::vector<std::vector<TowerElement>> columns = pulled;
        columns.push_back(g);
        const auto kernel = k_kernel(columns, x_field.tower);
        if (kernel.size() != 1 || !kernel.front().back().is_one()) {
            throw InconsistencyDetected("pulled back isotropic vectors do not span the generic point");
        }
        std::vector<TowerElement> fibers(kernel.front().begin(), kernel.front().end() - 1);
        const auto lambda = projective_ratio(g, combine(pulled, fibers, x_field.tower));
        if (!lambda) {
            throw InconsistencyDetected("ruling certificate fails");
        }
        RulingDecomposition d{x,
                              r,
                              y,
                              x_field,
                              y_field,
                              s_basis,
                              build_phi(y_field, s_basis, x),
                              RationalMap(x_field.tower, p, y),
                              std::move(pulled),
                              std::move(fibers),
                              *lambda};
        return d;
    }
    throw InconsistencyDetected("no point of Y over k(X) gives a usable pullback");
}

bool verify_ruling(const RulingDecomposition &d)
{
    if (d.r < 2 || d.Y.dim() + d.r - 1 != d.X.dim() || d.s_basis.size() != d.r || d.fibers.size() != d.r) {
        return false;
    }
    if (!d.phi.verify() || !d.pi.verify()) {
        return false;
    }
    const QuasilinearForm xy = d.X.over(d.y_field.tower);
    for (const auto &s : d.s_basis) {
        if (!xy.evaluate(s).is_zero()) {
            return false;
        }
    }
    if (k_rank(d.s_basis, d.y_field.tower) != d.r) {
        return false;
    }
    const TowerMap sigma = pullback(d.y_field, d.X.field(), d.x_field.tower, d.pi.coords());
    for (std::size_t i = 0; i < d.r; ++i) {
        if (apply_map(sigma, d.s_basis[i]) != d.pulled_back[i]) {
            return false;
        }
    }
    const auto sum = combine(d.pulled_back, d.fibers, d.x_field.tower);
    const auto lambda = projective_ratio(d.x_field.generic_point, sum);
    return lambda && !lambda->is_zero() && *lambda == d.lambda &&
           d.X.over(d.x_field.tower).evaluate(d.x_field.generic_point).is_zero();
}

bool unique_self_map_check(const QuasilinearForm &x)
{
    const FunctionFieldData f = function_field(x);
    const auto kernel = isotropic_kernel_basis(x, f.tower);
    if (kernel.size() == 1 && !projective_ratio(kernel.front(), f.generic_point)) {
        throw InconsistencyDetected("one-dimensional isotropic space misses the generic point");
    }
    return kernel.size() == 1;
}

RegularityReport is_regular_quadric(const QuasilinearForm &q)
{
    RegularityReport rep;
    rep.n = q.dim();
    const TowerPtr t = q.field();
    const TowerElement inv = q.coeffs().back().inverse();
    std::vector<TowerElement> a;
    for (std::size_t i = 0; i + 1 < q.dim(); ++i) {
        a.push_back(q.coeffs()[i] * inv);
    }

    rep.pfister_anisotropic = generate_square_algebra(a, t).slots.size() == a.size();

    if (t->generators().empty()) {
        const PolyRing &ring = t->base();
        std::vector<std::vector<TowerElement>> rows;
        for (const auto &ai : a) {
            std::vector<TowerElement> row;
            for (std::size_t v = 0; v < ring.size(); ++v) {
                row.emplace_back(t, ai.rational_part().derivative(v));
            }
            rows.push_back(std::move(row));
        }
        rep.differentials = a.empty() || (ring.size() >= a.size() && k_rank(rows, t) == a.size());
    }

    try {
        bool generic = is_anisotropic(q);
        if (generic) {
            const auto dims = splitting_pattern(q).dims;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                generic = generic && dims[i] == q.dim() - i;
            }
            generic = generic && dims.size() == q.dim();
        }
        rep.generic_pattern = generic;
    } catch (const TowerDepthExceeded &) {
        rep.generic_pattern.reset();
    }

    rep.regular = rep.pfister_anisotropic;
    if ((rep.differentials && *rep.differentials != rep.regular) ||
        (rep.generic_pattern && *rep.generic_pattern != rep.regular)) {
        throw InconsistencyDetected("regularity conditions disagree on " + q.to_string());
    }
    return rep;
}

std::optional<RationalMap> neighbor_ruling_map(const NeighborRuling &ruling)
{
    if (ruling.source.dim() < 2 || !is_anisotropic(ruling.source)) {
        return std::nullopt;
    }
    const FunctionFieldData f = function_field(ruling.source);
    auto image = ruling.apply(f.generic_point);
    if (std::all_of(image.begin(), image.end(), [](const TowerElement &c) { return c.is_zero(); })) {
        return std::nullopt;
    }
    return RationalMap(f.tower, std::move(image), ruling.target);
}

} // namespace qf
