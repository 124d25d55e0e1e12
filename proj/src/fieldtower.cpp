#include "quasiform/fieldtower.hpp"

#include "quasiform/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace qf
{

namespace detail
{

Expansion expansion_add(const Expansion &a, const Expansion &b)
{
    Expansion r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            RatFn s = a[i].second + b[j].second;
            if (!s.is_zero()) {
                r.emplace_back(a[i].first, std::move(s));
            }
            ++i;
            ++j;
        }
    }
    return r;
}

namespace
{

std::uint32_t mask_union(const Expansion &x)
{
    std::uint32_t m = 0;
    for (const auto &[mask, c] : x) {
        m |= mask;
    }
    return m;
}

void split_at(const Expansion &x, std::uint32_t bit, Expansion &low, Expansion &high)
{
    for (const auto &[mask, c] : x) {
        if (mask & bit) {
            high.emplace_back(mask & ~bit, c);
        } else {
            low.emplace_back(mask, c);
        }
    }
}

} // namespace

Expansion expansion_mul(const Expansion &a, const Expansion &b, const FieldTower &tower)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    const std::uint32_t all = mask_union(a) | mask_union(b);
    if (all == 0) {
        RatFn p = a.front().second * b.front().second;
        return {{0, std::move(p)}};
    }
    if (a.size() == 1 && a.front().first == 0) {
        Expansion r = b;
        for (auto &[mask, c] : r) {
            c *= a.front().second;
        }
        return r;
    }
    if (b.size() == 1 && b.front().first == 0) {
        return expansion_mul(b, a, tower);
    }

    // (A + B y)(C + D y) = AC + BD theta + (AD + BC) y, y the highest generator present.
    const int top = std::bit_width(all) - 1;
    const std::uint32_t bit = std::uint32_t{1} << top;
    Expansion A, B, C, D;
    split_at(a, bit, A, B);
    split_at(b, bit, C, D);

    Expansion AC = expansion_mul(A, C, tower);
    Expansion BD = expansion_mul(B, D, tower);
    Expansion cross;
    if (!A.empty() && !B.empty() && !C.empty() && !D.empty()) {
        cross = expansion_mul(expansion_add(A, B), expansion_add(C, D), tower);
        cross = expansion_add(cross, expansion_add(AC, BD));
    } else {
        cross = expansion_add(expansion_mul(A, D, tower), expansion_mul(B, C, tower));
    }
    Expansion low = expansion_add(AC, expansion_mul(BD, tower.generators()[top].theta, tower));
    for (auto &[mask, c] : cross) {
        low.emplace_back(mask | bit, std::move(c));
    }
    return low;
}

Expansion expansion_square(const Expansion &a, const FieldTower &tower)
{
    if (a.empty()) {
        return {};
    }
    const std::uint32_t all = mask_union(a);
    if (all == 0) {
        return {{0, a.front().second.squared()}};
    }
    // (A + B y)^2 = A^2 + B^2 theta.
    const int top = std::bit_width(all) - 1;
    const std::uint32_t bit = std::uint32_t{1} << top;
    Expansion A, B;
    split_at(a, bit, A, B);
    return expansion_add(expansion_square(A, tower),
                         expansion_mul(expansion_square(B, tower), tower.generators()[top].theta, tower));
}

} // namespace detail

using detail::expansion_add;
using detail::expansion_mul;
using detail::expansion_square;

// ---------------------------------------------------------------------------
// FieldTower

TowerPtr FieldTower::rational(std::vector<std::string> vars, std::size_t max_depth)
{
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->base_ = PolyRing(std::move(vars));
    t->max_depth_ = std::min<std::size_t>(max_depth, 32);
    return t;
}

bool FieldTower::has_name(std::string_view name) const
{
    if (base_.contains(name)) {
        return true;
    }
    return std::any_of(generators_.begin(), generators_.end(), [&](const Generator &g) { return g.name == name; });
}

std::string FieldTower::fresh_name(const std::string &stem) const
{
    if (!has_name(stem)) {
        return stem;
    }
    for (std::size_t i = 1;; ++i) {
        std::string candidate = stem + "_" + std::to_string(i);
        if (!has_name(candidate)) {
            return candidate;
        }
    }
}

bool FieldTower::embeds_into(const FieldTower &other) const
{
    if (this == &other) {
        return true;
    }
    for (const FieldTower *p = other.parent_.get(); p != nullptr; p = p->parent_.get()) {
        if (p == this) {
            return true;
        }
    }
    if (base_.size() > other.base_.size() || generators_.size() > other.generators_.size()) {
        return false;
    }
    if (!std::equal(base_.names().begin(), base_.names().end(), other.base_.names().begin())) {
        return false;
    }
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const Generator &g = generators_[i];
        const Generator &h = other.generators_[i];
        if (g.name != h.name || g.theta != h.theta) {
            return false;
        }
    }
    return true;
}

std::string FieldTower::generator_monomial(std::uint32_t mask) const
{
    std::string s;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (mask & (std::uint32_t{1} << i)) {
            if (!s.empty()) {
                s += "*";
            }
            s += generators_[i].name;
        }
    }
    return s.empty() ? "1" : s;
}

std::string FieldTower::describe() const
{
    std::string s = "F2(";
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (i > 0) {
            s += ",";
        }
        s += base_.names()[i];
    }
    s += ")";
    for (const Generator &g : generators_) {
        s += "(" + g.name + ": " + g.name + "^2 = " + TowerElement(g.over, g.theta).to_string() + ")";
    }
    return s;
}

TowerPtr extend_transcendental(const TowerPtr &tower, const std::vector<std::string> &names)
{
    std::vector<std::string> all = tower->base().names();
    for (const auto &n : names) {
        if (tower->has_name(n) || std::find(all.begin(), all.end(), n) != all.end()) {
            throw NameCollision("name already used in tower: " + n);
        }
        all.push_back(n);
    }
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->base_ = PolyRing(std::move(all));
    t->generators_ = tower->generators_;
    t->parent_ = tower;
    t->max_depth_ = tower->max_depth_;
    return t;
}

TowerPtr extend_inseparable(const TowerPtr &tower, const TowerElement &theta, const std::string &name)
{
    const TowerElement th = theta.embed(tower);
    if (th.is_zero()) {
        throw ZeroElement("inseparable generator must square to a nonzero element");
    }
    if (tower->has_name(name)) {
        throw NameCollision("name already used in tower: " + name);
    }
    if (tower->depth() + 1 > tower->max_depth()) {
        throw TowerDepthExceeded("tower depth limit " + std::to_string(tower->max_depth()) + " exceeded");
    }
    if (sqrt_in_tower(th)) {
        throw IsSquare("element is already a square: " + th.to_string());
    }
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->base_ = tower->base_;
    t->generators_ = tower->generators_;
    t->generators_.push_back({name, th.expansion(), tower});
    t->parent_ = tower;
    t->max_depth_ = tower->max_depth_;
    return t;
}

TowerPtr common_tower(const TowerPtr &a, const TowerPtr &b)
{
    if (a == b || a->embeds_into(*b)) {
        return b;
    }
    if (b->embeds_into(*a)) {
        return a;
    }
    throw TowerMismatch("elements live in incompatible towers: " + a->describe() + " and " + b->describe());
}

// ---------------------------------------------------------------------------
// TowerElement

TowerElement::TowerElement(TowerPtr tower) : tower_(std::move(tower)) {}

TowerElement::TowerElement(TowerPtr tower, RatFn value) : tower_(std::move(tower))
{
    if (!value.is_zero()) {
        expansion_.emplace_back(0, std::move(value));
    }
}

TowerElement::TowerElement(TowerPtr tower, Expansion expansion) : tower_(std::move(tower))
{
    const std::uint64_t limit = std::uint64_t{1} << tower_->depth();
    std::sort(expansion.begin(), expansion.end(),
              [](const auto &x, const auto &y) { return x.first < y.first; });
    for (auto &[mask, c] : expansion) {
        if (mask >= limit) {
            throw UnknownVariable("generator monomial outside the tower");
        }
        if (!expansion_.empty() && expansion_.back().first == mask) {
            expansion_.back().second += c;
            if (expansion_.back().second.is_zero()) {
                expansion_.pop_back();
            }
        } else if (!c.is_zero()) {
            expansion_.emplace_back(mask, std::move(c));
        }
    }
}

TowerElement TowerElement::variable(const TowerPtr &tower, std::string_view name)
{
    if (tower->base().contains(name)) {
        return TowerElement(tower, RatFn(tower->base().variable(name)));
    }
    const auto &gens = tower->generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].name == name) {
            return TowerElement(tower, Expansion{{std::uint32_t{1} << i, RatFn::one()}});
        }
    }
    throw UnknownVariable("unknown variable: " + std::string(name));
}

bool TowerElement::is_one() const noexcept
{
    return expansion_.size() == 1 && expansion_.front().first == 0 && expansion_.front().second.is_one();
}

bool TowerElement::in_rational_base() const noexcept
{
    return expansion_.empty() || (expansion_.size() == 1 && expansion_.front().first == 0);
}

RatFn TowerElement::rational_part() const
{
    if (!expansion_.empty() && expansion_.front().first == 0) {
        return expansion_.front().second;
    }
    return {};
}

TowerElement &TowerElement::operator+=(const TowerElement &other)
{
    tower_ = common_tower(tower_, other.tower_);
    expansion_ = expansion_add(expansion_, other.expansion_);
    return *this;
}

TowerElement &TowerElement::operator*=(const TowerElement &other)
{
    tower_ = common_tower(tower_, other.tower_);
    expansion_ = expansion_mul(expansion_, other.expansion_, *tower_);
    return *this;
}

TowerElement &TowerElement::operator/=(const TowerElement &other)
{
    return *this *= other.inverse();
}

TowerElement operator+(const TowerElement &a, const TowerElement &b)
{
    TowerElement r = a;
    r += b;
    return r;
}

TowerElement operator*(const TowerElement &a, const TowerElement &b)
{
    TowerElement r = a;
    r *= b;
    return r;
}

TowerElement operator/(const TowerElement &a, const TowerElement &b)
{
    TowerElement r = a;
    r /= b;
    return r;
}

TowerElement TowerElement::squared() const
{
    TowerElement r(tower_);
    r.expansion_ = expansion_square(expansion_, *tower_);
    return r;
}

TowerElement TowerElement::inverse() const
{
    if (is_zero()) {
        throw ZeroElement("inverse of zero");
    }
    if (in_rational_base()) {
        return TowerElement(tower_, expansion_.front().second.inverse());
    }
    // Squaring strictly lowers the highest generator present, so this recursion
    // ends after at most depth steps in the rational base.
    return *this * squared().inverse();
}

TowerElement TowerElement::pow(std::int64_t n) const
{
    if (n < 0) {
        return inverse().pow(-n);
    }
    TowerElement result = one(tower_);
    TowerElement base = *this;
    auto e = static_cast<std::uint64_t>(n);
    while (e != 0) {
        if (e & 1U) {
            result *= base;
        }
        e >>= 1U;
        if (e != 0) {
            base = base.squared();
        }
    }
    return result;
}

TowerElement TowerElement::embed(const TowerPtr &bigger) const
{
    if (tower_ == bigger) {
        return *this;
    }
    if (!tower_->embeds_into(*bigger)) {
        throw EmbeddingFailure("cannot embed " + tower_->describe() + " into " + bigger->describe());
    }
    TowerElement r(bigger);
    r.expansion_ = expansion_;
    return r;
}

bool operator==(const TowerElement &a, const TowerElement &b)
{
    if (a.tower_ != b.tower_) {
        (void)common_tower(a.tower_, b.tower_);
    }
    return a.expansion_ == b.expansion_;
}

std::string TowerElement::to_string() const
{
    if (expansion_.empty()) {
        return "0";
    }
    std::string s;
    for (const auto &[mask, c] : expansion_) {
        if (!s.empty()) {
            s += " + ";
        }
        std::string coeff = tower_->base().to_string(c);
        if (mask == 0) {
            s += coeff;
            continue;
        }
        if (!c.is_one()) {
            if (coeff.find(' ') != std::string::npos || coeff.find('/') != std::string::npos) {
                coeff = "(" + coeff + ")";
            }
            s += coeff + "*";
        }
        s += tower_->generator_monomial(mask);
    }
    return s;
}

// ---------------------------------------------------------------------------
// TowerMap

TowerMap::TowerMap(TowerPtr source, TowerPtr target, std::vector<TowerElement> base_images,
                   std::vector<TowerElement> generator_images)
    : source_(std::move(source)), target_(std::move(target))
{
    if (base_images.size() != source_->base().size() || generator_images.size() != source_->depth()) {
        throw DimensionMismatch("tower map needs one image per variable and generator");
    }
    for (auto &img : base_images) {
        base_images_.push_back(img.embed(target_));
    }
    for (auto &img : generator_images) {
        generator_images_.push_back(img.embed(target_));
    }
    identity_.resize(base_images_.size());
    for (std::size_t i = 0; i < base_images_.size(); ++i) {
        const Expansion &e = base_images_[i].expansion();
        identity_[i] = i < target_->base().size() && e.size() == 1 && e.front().first == 0 &&
                       e.front().second == RatFn(Poly::variable(i));
    }
    for (std::size_t i = 0; i < generator_images_.size(); ++i) {
        const TowerElement theta_image = apply_expansion(source_->generators()[i].theta);
        if (!(generator_images_[i].squared() == theta_image)) {
            throw EmbeddingFailure("image of " + source_->generators()[i].name +
                                   " does not square to the image of its defining element");
        }
    }
}

TowerElement TowerMap::operator()(const Poly &p) const
{
    if (p.is_zero()) {
        return TowerElement(target_);
    }
    // Terms are grouped by their exponents on non-identity variables; the
    // identity part of each group stays a polynomial in the target base.
    std::map<std::vector<Poly::Exponent>, std::vector<std::vector<Poly::Exponent>>> groups;
    const std::size_t width = p.width();
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        std::vector<Poly::Exponent> key(width, 0);
        std::vector<Poly::Exponent> rest(width, 0);
        for (std::size_t v = 0; v < width; ++v) {
            const Poly::Exponent e = p.exponent(t, v);
            (identity_[v] ? rest : key)[v] = e;
        }
        groups[std::move(key)].push_back(std::move(rest));
    }
    std::vector<std::map<Poly::Exponent, TowerElement>> powers(width);
    TowerElement result(target_);
    for (auto &[key, rests] : groups) {
        std::sort(rests.begin(), rests.end(), std::greater<>());
        std::vector<Poly::Exponent> flat;
        flat.reserve(rests.size() * width);
        for (const auto &r : rests) {
            flat.insert(flat.end(), r.begin(), r.end());
        }
        TowerElement term(target_, RatFn(Poly::from_sorted_terms(width, rests.size(), std::move(flat))));
        for (std::size_t v = 0; v < width; ++v) {
            if (key[v] == 0) {
                continue;
            }
            auto it = powers[v].find(key[v]);
            if (it == powers[v].end()) {
                it = powers[v].emplace(key[v], base_images_[v].pow(key[v])).first;
            }
            term *= it->second;
        }
        result += term;
    }
    return result;
}

TowerElement TowerMap::operator()(const RatFn &x) const
{
    if (x.is_polynomial()) {
        return (*this)(x.num());
    }
    return (*this)(x.num()) / (*this)(x.den());
}

TowerElement TowerMap::apply_expansion(const Expansion &x) const
{
    TowerElement result(target_);
    for (const auto &[mask, c] : x) {
        TowerElement term = (*this)(c);
        for (std::size_t i = 0; i < generator_images_.size(); ++i) {
            if (mask & (std::uint32_t{1} << i)) {
                term *= generator_images_[i];
            }
        }
        result += term;
    }
    return result;
}

TowerElement TowerMap::operator()(const TowerElement &x) const
{
    return apply_expansion(x.embed(source_).expansion());
}

} // namespace qf
