#include "quasiform/quasiform.hpp"

#include "quasiform/errors.hpp"

#include <algorithm>

namespace qf
{

QuasilinearForm::QuasilinearForm(TowerPtr field, std::vector<TowerElement> coeffs) : field_(std::move(field))
{
    if (coeffs.empty()) {
        throw DimensionTooSmall("a form needs at least one coefficient");
    }
    coeffs_.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) {
            throw ZeroCoefficient("coefficient " + std::to_string(i + 1) + " is zero");
        }
        coeffs_.push_back(coeffs[i].embed(field_));
    }
}

TowerElement QuasilinearForm::evaluate(const std::vector<TowerElement> &x) const
{
    if (x.size() != coeffs_.size()) {
        throw DimensionMismatch("vector of length " + std::to_string(x.size()) + " for a form of dimension " +
                                std::to_string(coeffs_.size()));
    }
    TowerElement sum(field_);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i].is_zero()) {
            sum += coeffs_[i] * x[i].squared();
        }
    }
    return sum;
}

QuasilinearForm QuasilinearForm::scaled(const TowerElement &c) const
{
    std::vector<TowerElement> out;
    out.reserve(coeffs_.size());
    for (const auto &a : coeffs_) {
        out.push_back(c * a);
    }
    return {common_tower(field_, c.tower()), std::move(out)};
}

QuasilinearForm QuasilinearForm::over(const TowerPtr &bigger) const
{
    return {bigger, coeffs_};
}

QuasilinearForm QuasilinearForm::subform(const std::vector<std::size_t> &indices) const
{
    std::vector<TowerElement> out;
    for (const auto i : indices) {
        if (i >= coeffs_.size()) {
            throw DimensionMismatch("subform index out of range");
        }
        out.push_back(coeffs_[i]);
    }
    return {field_, std::move(out)};
}

QuasilinearForm QuasilinearForm::orthogonal_sum(const QuasilinearForm &other) const
{
    const TowerPtr t = common_tower(field_, other.field_);
    std::vector<TowerElement> out = coeffs_;
    out.insert(out.end(), other.coeffs_.begin(), other.coeffs_.end());
    return {t, std::move(out)};
}

std::string QuasilinearForm::to_string() const
{
    std::string s = "<";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i > 0) {
            s += ", ";
        }
        s += coeffs_[i].to_string();
    }
    return s + ">";
}

std::size_t total_index(const QuasilinearForm &q)
{
    return q.dim() - k2_rank(q.coeffs(), q.field()).rank;
}

bool is_anisotropic(const QuasilinearForm &q)
{
    return total_index(q) == 0;
}

QuasilinearForm anisotropic_part(const QuasilinearForm &q)
{
    return {q.field(), k2_rank(q.coeffs(), q.field()).independent};
}

FormInvariants invariants(const QuasilinearForm &q)
{
    const std::size_t rank = k2_rank(q.coeffs(), q.field()).rank;
    return {q.dim(), q.dim() - rank, rank};
}

std::vector<std::vector<TowerElement>> isotropic_kernel_basis(const QuasilinearForm &q, const TowerPtr &tower)
{
    return isotropic_kernel_basis(q.coeffs(), tower);
}

bool is_isometric(const QuasilinearForm &q, const QuasilinearForm &r)
{
    if (q.dim() != r.dim()) {
        return false;
    }
    const TowerPtr t = common_tower(q.field(), r.field());
    SquareSpan sq(t);
    SquareSpan sr(t);
    for (const auto &a : q.coeffs()) {
        sq.add(a);
    }
    for (const auto &a : r.coeffs()) {
        sr.add(a);
    }
    if (sq.size() != sr.size()) {
        return false;
    }
    // Equal dimensions plus one inclusion give equal spans.
    for (const auto &a : sr.generators()) {
        if (!sq.contains(a)) {
            return false;
        }
    }
    return true;
}

SquareAlgebra generate_square_algebra(const std::vector<TowerElement> &generators, const TowerPtr &tower)
{
    SquareAlgebra alg;
    SquareSpan span(tower);
    alg.basis.push_back(TowerElement::one(tower));
    span.add(alg.basis.front());
    for (const auto &g : generators) {
        if (g.is_zero() || span.contains(g)) {
            continue;
        }
        const std::size_t half = alg.basis.size();
        for (std::size_t i = 0; i < half; ++i) {
            TowerElement p = alg.basis[i] * g;
            if (!span.add(p)) {
                throw NormFieldNotAField("generated algebra has zero divisors");
            }
            alg.basis.push_back(std::move(p));
        }
        alg.slots.push_back(g.embed(tower));
    }
    return alg;
}

std::optional<TowerElement> decide_similar(const QuasilinearForm &q, const QuasilinearForm &r)
{
    if (q.dim() != r.dim()) {
        throw DimensionMismatch("similarity needs forms of equal dimension");
    }
    if (!is_anisotropic(q) || !is_anisotropic(r)) {
        throw NotAnisotropic("similarity is decided for anisotropic forms");
    }
    const TowerPtr t = common_tower(q.field(), r.field());
    const TowerElement q1 = q.coeffs().front().embed(t);
    const TowerElement r1 = r.coeffs().front().embed(t);
    const TowerElement direct = r1 / q1;
    if (is_isometric(q.scaled(direct), r)) {
        return direct;
    }

    std::vector<TowerElement> v;
    std::vector<TowerElement> w;
    for (const auto &a : q.coeffs()) {
        v.push_back(a.embed(t) / q1);
    }
    for (const auto &a : r.coeffs()) {
        w.push_back(a.embed(t) / r1);
    }
    std::vector<TowerElement> both = v;
    both.insert(both.end(), w.begin(), w.end());
    const SquareAlgebra P = generate_square_algebra(both, t);

    // Basis of P extending the normalized coefficients of r.
    SquareSpan ambient(t);
    for (const auto &x : w) {
        ambient.add(x);
    }
    const std::size_t n = ambient.size();
    for (const auto &p : P.basis) {
        ambient.add(p);
    }
    const std::size_t extra = ambient.size() - n;

    // c = sum_k delta_k^2 p_k with c * v_i in span(w) for all i. Taking square
    // roots of the coordinates turns this into a K-linear system in delta.
    std::vector<std::vector<TowerElement>> columns(P.basis.size());
    for (std::size_t k = 0; k < P.basis.size(); ++k) {
        for (const auto &vi : v) {
            auto roots = ambient.express(P.basis[k] * vi);
            if (!roots) {
                throw InconsistencyDetected("norm field is not closed under multiplication");
            }
            for (std::size_t e = 0; e < extra; ++e) {
                columns[k].push_back((*roots)[n + e]);
            }
        }
    }
    const auto kernel = k_kernel(columns, t);
    if (kernel.empty()) {
        return std::nullopt;
    }
    TowerElement c(t);
    for (std::size_t k = 0; k < P.basis.size(); ++k) {
        c += kernel.front()[k].squared() * P.basis[k];
    }
    const TowerElement factor = c * r1 / q1;
    if (!is_isometric(q.scaled(factor), r)) {
        throw InconsistencyDetected("similarity factor failed the isometry check");
    }
    return factor;
}

QuasilinearForm generic_subform(const QuasilinearForm &q, std::size_t j)
{
    if (q.dim() < 2 || j > q.dim() - 2) {
        throw BadCodimension("codimension " + std::to_string(j) + " is out of range for dimension " +
                             std::to_string(q.dim()));
    }
    if (!is_anisotropic(q)) {
        throw NotAnisotropic("generic subforms are taken of anisotropic forms");
    }
    QuasilinearForm current = q;
    for (std::size_t step = 0; step < j; ++step) {
        const std::size_t d = current.dim();
        std::vector<std::string> names;
        TowerPtr t = current.field();
        for (std::size_t i = 1; i < d; ++i) {
            std::string name = t->fresh_name("c" + std::to_string(i));
            while (std::find(names.begin(), names.end(), name) != names.end()) {
                name += "_";
            }
            names.push_back(name);
        }
        t = extend_transcendental(t, names);
        // On the hyperplane x_d = sum c_i x_i the form stays diagonal:
        // a_d (sum c_i x_i)^2 = sum a_d c_i^2 x_i^2.
        const TowerElement ad = current.coeffs().back().embed(t);
        std::vector<TowerElement> out;
        for (std::size_t i = 0; i + 1 < d; ++i) {
            out.push_back(current.coeffs()[i].embed(t) + ad * TowerElement::variable(t, names[i]).squared());
        }
        current = QuasilinearForm(t, std::move(out));
    }
    return current;
}

} // namespace qf
