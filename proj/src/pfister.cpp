#include "quasiform/pfister.hpp"

#include "quasiform/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace qf
{

QuasiPfisterForm::QuasiPfisterForm(TowerPtr field, std::vector<TowerElement> slots) : field_(std::move(field))
{
    if (slots.size() > 20) {
        throw IndexMismatch("too many slots for a quasi-Pfister expansion");
    }
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].is_zero()) {
            throw ZeroSlot("slot " + std::to_string(i + 1) + " is zero");
        }
        slots_.push_back(slots[i].embed(field_));
    }
    expansion_.push_back(TowerElement::one(field_));
    for (const auto &a : slots_) {
        const std::size_t half = expansion_.size();
        for (std::size_t s = 0; s < half; ++s) {
            expansion_.push_back(expansion_[s] * a);
        }
    }
}

QuasilinearForm QuasiPfisterForm::form() const
{
    return {field_, expansion_};
}

TowerElement QuasiPfisterForm::evaluate(const std::vector<TowerElement> &x) const
{
    if (x.size() != expansion_.size()) {
        throw IndexMismatch("vector of length " + std::to_string(x.size()) + " for a quasi-Pfister form of dimension " +
                            std::to_string(expansion_.size()));
    }
    return form().evaluate(x);
}

std::vector<std::uint32_t> graded_subset_order(std::size_t n)
{
    std::vector<std::uint32_t> masks(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < masks.size(); ++m) {
        masks[m] = m;
    }
    auto members = [](std::uint32_t m) {
        std::vector<int> out;
        for (int i = 0; m != 0; ++i, m >>= 1) {
            if (m & 1U) {
                out.push_back(i);
            }
        }
        return out;
    };
    std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
        const int pa = std::popcount(a);
        const int pb = std::popcount(b);
        if (pa != pb) {
            return pa < pb;
        }
        return members(a) < members(b);
    });
    return masks;
}

QuasilinearForm quasi_pfister(const std::vector<TowerElement> &slots)
{
    if (slots.empty()) {
        throw ZeroSlot("a quasi-Pfister form needs at least one slot");
    }
    TowerPtr t = slots.front().tower();
    for (const auto &s : slots) {
        t = common_tower(t, s.tower());
    }
    const QuasiPfisterForm p(t, slots);
    std::vector<TowerElement> coeffs;
    for (const auto m : graded_subset_order(slots.size())) {
        coeffs.push_back(p.coefficient(m));
    }
    return {t, std::move(coeffs)};
}

std::pair<TowerElement, std::uint32_t> NormField::multiply(std::uint32_t s, std::uint32_t t) const
{
    if (s >= basis.size() || t >= basis.size()) {
        throw IndexMismatch("subset outside the norm field basis");
    }
    return {basis[s & t], s ^ t};
}

NormField norm_field(const QuasilinearForm &q)
{
    const TowerElement inv = q.coeffs().front().inverse();
    std::vector<TowerElement> normalized;
    for (const auto &a : q.coeffs()) {
        normalized.push_back(a * inv);
    }
    SquareAlgebra alg = generate_square_algebra(normalized, q.field());
    return {q.field(), std::move(alg.slots), std::move(alg.basis)};
}

std::size_t norm_degree(const QuasilinearForm &q)
{
    return norm_field(q).degree();
}

std::optional<QuasiPfisterForm> is_quasi_pfister_neighbor(const QuasilinearForm &q)
{
    const NormField n = norm_field(q);
    if (2 * q.dim() <= n.degree()) {
        return std::nullopt;
    }
    return QuasiPfisterForm(q.field(), n.slots);
}

std::vector<TowerElement> albert_multiply(const QuasiPfisterForm &p, const std::vector<TowerElement> &x,
                                          const std::vector<TowerElement> &y)
{
    const std::size_t d = p.dim();
    if (x.size() != d || y.size() != d) {
        throw IndexMismatch("Albert product needs vectors of length " + std::to_string(d));
    }
    TowerPtr t = p.field();
    for (const auto &v : {&x, &y}) {
        for (const auto &e : *v) {
            t = common_tower(t, e.tower());
        }
    }
    std::vector<TowerElement> out(d, TowerElement::zero(t));
    for (std::uint32_t s = 0; s < d; ++s) {
        if (x[s].is_zero()) {
            continue;
        }
        for (std::uint32_t u = 0; u < d; ++u) {
            if (y[u].is_zero()) {
                continue;
            }
            out[s ^ u] += x[s] * y[u] * p.coefficient(s & u);
        }
    }
    return out;
}

std::pair<TowerPtr, std::vector<TowerElement>> indeterminate_vector(const TowerPtr &tower, const std::string &stem,
                                                                    std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        std::string name = tower->fresh_name(stem + std::to_string(i));
        while (std::find(names.begin(), names.end(), name) != names.end()) {
            name += "_";
        }
        names.push_back(name);
    }
    const TowerPtr t = extend_transcendental(tower, names);
    std::vector<TowerElement> xs;
    for (const auto &name : names) {
        xs.push_back(TowerElement::variable(t, name));
    }
    return {t, xs};
}

std::vector<TowerElement> NeighborRuling::apply(const std::vector<TowerElement> &point) const
{
    const std::size_t full = pfister.dim();
    const std::size_t s = scalars.size();
    if (point.size() != source.dim()) {
        throw DimensionMismatch("point does not match the source form");
    }
    TowerPtr t = pfister.field();
    for (const auto &e : point) {
        t = common_tower(t, e.tower());
    }
    std::vector<TowerElement> last(full, TowerElement::zero(t));
    const std::size_t offset = (s - 1) * full;
    for (std::size_t i = 0; i < subform.size(); ++i) {
        last[subform[i]] = point[offset + i];
    }
    std::vector<TowerElement> out;
    for (std::size_t block = 0; block + 1 < s; ++block) {
        const std::vector<TowerElement> xi(point.begin() + static_cast<std::ptrdiff_t>(block * full),
                                           point.begin() + static_cast<std::ptrdiff_t>((block + 1) * full));
        const auto prod = albert_multiply(pfister, last, xi);
        out.insert(out.end(), prod.begin(), prod.end());
    }
    out.push_back(pfister.evaluate(last));
    return out;
}

bool NeighborRuling::verify_identity() const
{
    const auto [t, xs] = indeterminate_vector(source.field(), "x", source.dim());
    const std::vector<TowerElement> image = apply(xs);
    std::vector<TowerElement> last(pfister.dim(), TowerElement::zero(t));
    const std::size_t offset = (scalars.size() - 1) * pfister.dim();
    for (std::size_t i = 0; i < subform.size(); ++i) {
        last[subform[i]] = xs[offset + i];
    }
    const TowerElement lhs = target.over(t).evaluate(image);
    const TowerElement rhs = pfister.evaluate(last) * source.over(t).evaluate(xs);
    return lhs == rhs;
}

NeighborRuling special_neighbor_ruling(const QuasiPfisterForm &p, const std::vector<std::uint32_t> &subform,
                                       const std::vector<TowerElement> &scalars)
{
    if (scalars.empty()) {
        throw BadDecomposition("at least one scalar is needed");
    }
    if (subform.empty()) {
        throw BadDecomposition("the last block must be a nonzero subform");
    }
    std::set<std::uint32_t> seen;
    for (const auto m : subform) {
        if (m >= p.dim() || !seen.insert(m).second) {
            throw BadDecomposition("subform positions must be distinct subsets of the slots");
        }
    }
    TowerPtr t = p.field();
    for (const auto &b : scalars) {
        if (b.is_zero()) {
            throw BadDecomposition("scalars must be nonzero");
        }
        t = common_tower(t, b.tower());
    }
    const QuasiPfisterForm pf(t, p.slots());
    std::vector<TowerElement> src;
    std::vector<TowerElement> dst;
    for (std::size_t i = 0; i + 1 < scalars.size(); ++i) {
        for (const auto &c : pf.expansion()) {
            src.push_back(scalars[i] * c);
            dst.push_back(scalars[i] * c);
        }
    }
    for (const auto m : subform) {
        src.push_back(scalars.back() * pf.coefficient(m));
    }
    dst.push_back(scalars.back().embed(t));
    NeighborRuling r{pf, subform, scalars, QuasilinearForm(t, src), QuasilinearForm(t, dst)};
    if (!r.verify_identity()) {
        throw InconsistencyDetected("neighbor ruling fails its defining identity");
    }
    return r;
}

} // namespace qf
