#include "quasiform/gf2poly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "quasiform/errors.hpp"
#include "gf64.hpp"

namespace qf
{

namespace
{

using Exponent = Poly::Exponent;

int compare_terms(const Exponent *a, std::size_t wa, const Exponent *b, std::size_t wb)
{
    const std::size_t w = std::max(wa, wb);
    for (std::size_t i = 0; i < w; ++i) {
        const Exponent ea = i < wa ? a[i] : 0;
        const Exponent eb = i < wb ? b[i] : 0;
        if (ea != eb) {
            return ea > eb ? 1 : -1;
        }
    }
    return 0;
}

Exponent checked_add(Exponent a, Exponent b)
{
    if (a > std::numeric_limits<Exponent>::max() - b) {
        throw ExponentOverflow("polynomial exponent overflow");
    }
    return a + b;
}

void append_padded(std::vector<Exponent> &out, const Exponent *src, std::size_t ws, std::size_t w)
{
    out.insert(out.end(), src, src + ws);
    out.insert(out.end(), w - ws, 0);
}

} // namespace

// ---------------------------------------------------------------------------
// Poly

Poly Poly::one()
{
    Poly p;
    p.terms_ = 1;
    return p;
}

Poly Poly::variable(std::size_t index, Exponent power)
{
    std::vector<Exponent> e(index + 1, 0);
    e[index] = power;
    return monomial(e);
}

Poly Poly::monomial(std::span<const Exponent> exponents)
{
    Poly p;
    p.width_ = exponents.size();
    p.terms_ = 1;
    p.exps_.assign(exponents.begin(), exponents.end());
    p.trim();
    return p;
}

void Poly::trim()
{
    std::size_t used = 0;
    for (std::size_t t = 0; t < terms_; ++t) {
        for (std::size_t v = width_; v > used; --v) {
            if (exps_[t * width_ + v - 1] != 0) {
                used = v;
                break;
            }
        }
        if (used == width_) {
            return;
        }
    }
    if (used == width_) {
        return;
    }
    std::vector<Exponent> packed;
    packed.reserve(terms_ * used);
    for (std::size_t t = 0; t < terms_; ++t) {
        packed.insert(packed.end(), exps_.begin() + t * width_, exps_.begin() + t * width_ + used);
    }
    exps_ = std::move(packed);
    width_ = used;
}

Exponent Poly::degree_in(std::size_t var) const
{
    Exponent d = 0;
    if (var >= width_) {
        return 0;
    }
    for (std::size_t t = 0; t < terms_; ++t) {
        d = std::max(d, exps_[t * width_ + var]);
    }
    return d;
}

std::uint64_t Poly::total_degree() const
{
    std::uint64_t best = 0;
    for (std::size_t t = 0; t < terms_; ++t) {
        std::uint64_t d = 0;
        for (std::size_t v = 0; v < width_; ++v) {
            d += exps_[t * width_ + v];
        }
        best = std::max(best, d);
    }
    return best;
}

std::vector<std::size_t> Poly::support() const
{
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < width_; ++v) {
        for (std::size_t t = 0; t < terms_; ++t) {
            if (exps_[t * width_ + v] != 0) {
                vars.push_back(v);
                break;
            }
        }
    }
    return vars;
}

Poly merge_xor(const Poly &a, const Poly &b)
{
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    const std::size_t w = std::max(a.width_, b.width_);
    Poly r;
    r.width_ = w;
    r.exps_.reserve((a.terms_ + b.terms_) * w);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms_ && j < b.terms_) {
        const Exponent *ta = a.exps_.data() + i * a.width_;
        const Exponent *tb = b.exps_.data() + j * b.width_;
        const int c = compare_terms(ta, a.width_, tb, b.width_);
        if (c > 0) {
            append_padded(r.exps_, ta, a.width_, w);
            ++i;
        } else if (c < 0) {
            append_padded(r.exps_, tb, b.width_, w);
            ++j;
        } else {
            ++i;
            ++j;
        }
    }
    for (; i < a.terms_; ++i) {
        append_padded(r.exps_, a.exps_.data() + i * a.width_, a.width_, w);
    }
    for (; j < b.terms_; ++j) {
        append_padded(r.exps_, b.exps_.data() + j * b.width_, b.width_, w);
    }
    r.terms_ = w == 0 ? r.exps_.size() : r.exps_.size() / w;
    if (w == 0) {
        // Both constant 1: they cancelled above and nothing was appended.
        r.terms_ = 0;
    }
    r.trim();
    return r;
}

Poly &Poly::operator+=(const Poly &other)
{
    *this = merge_xor(*this, other);
    return *this;
}

Poly operator+(const Poly &a, const Poly &b)
{
    return merge_xor(a, b);
}

Poly Poly::shifted(std::span<const Exponent> exponents) const
{
    if (is_zero()) {
        return {};
    }
    const std::size_t w = std::max(width_, exponents.size());
    Poly r;
    r.width_ = w;
    r.terms_ = terms_;
    r.exps_.resize(terms_ * w);
    for (std::size_t t = 0; t < terms_; ++t) {
        for (std::size_t v = 0; v < w; ++v) {
            const Exponent e = v < width_ ? exps_[t * width_ + v] : 0;
            const Exponent s = v < exponents.size() ? exponents[v] : 0;
            r.exps_[t * w + v] = checked_add(e, s);
        }
    }
    r.trim();
    return r;
}

Poly operator*(const Poly &a, const Poly &b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    if (a.is_monomial()) {
        return b.shifted(a.term(0));
    }
    if (b.is_monomial()) {
        return a.shifted(b.term(0));
    }
    const Poly &small = a.term_count() <= b.term_count() ? a : b;
    const Poly &large = a.term_count() <= b.term_count() ? b : a;
    std::vector<Poly> parts;
    parts.reserve(small.term_count());
    for (std::size_t t = 0; t < small.term_count(); ++t) {
        parts.push_back(large.shifted(small.term(t)));
    }
    while (parts.size() > 1) {
        std::vector<Poly> next;
        next.reserve((parts.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
            next.push_back(merge_xor(parts[i], parts[i + 1]));
        }
        if (parts.size() % 2 == 1) {
            next.push_back(std::move(parts.back()));
        }
        parts = std::move(next);
    }
    return std::move(parts.front());
}

Poly &Poly::operator*=(const Poly &other)
{
    *this = *this * other;
    return *this;
}

Poly Poly::squared() const
{
    Poly r = *this;
    for (auto &e : r.exps_) {
        e = checked_add(e, e);
    }
    return r;
}

Poly Poly::pow(std::uint64_t n) const
{
    Poly result = one();
    Poly base = *this;
    while (n > 0) {
        if (n & 1U) {
            result *= base;
        }
        n >>= 1U;
        if (n > 0) {
            base = base.squared();
        }
    }
    return result;
}

std::optional<Poly> Poly::sqrt() const
{
    Poly r = *this;
    for (auto &e : r.exps_) {
        if (e % 2 != 0) {
            return std::nullopt;
        }
        e /= 2;
    }
    return r;
}

Poly Poly::derivative(std::size_t var) const
{
    Poly r;
    if (var >= width_) {
        return r;
    }
    r.width_ = width_;
    for (std::size_t t = 0; t < terms_; ++t) {
        const Exponent e = exps_[t * width_ + var];
        if (e % 2 == 1) {
            r.exps_.insert(r.exps_.end(), exps_.begin() + t * width_, exps_.begin() + (t + 1) * width_);
            r.exps_[r.terms_ * width_ + var] = e - 1;
            ++r.terms_;
        }
    }
    r.trim();
    return r;
}

std::optional<Poly> Poly::divided_by_monomial(std::span<const Exponent> exponents) const
{
    Poly r = *this;
    for (std::size_t t = 0; t < terms_; ++t) {
        for (std::size_t v = 0; v < exponents.size(); ++v) {
            const Exponent e = v < width_ ? r.exps_[t * width_ + v] : 0;
            if (e < exponents[v]) {
                return std::nullopt;
            }
            if (v < width_) {
                r.exps_[t * width_ + v] = e - exponents[v];
            }
        }
    }
    r.trim();
    return r;
}

Poly Poly::from_sorted_terms(std::size_t width, std::size_t count, std::vector<Exponent> flat)
{
    Poly r;
    r.width_ = width;
    r.terms_ = count;
    r.exps_ = std::move(flat);
    r.trim();
    return r;
}

std::vector<Exponent> Poly::monomial_content() const
{
    if (is_zero()) {
        return {};
    }
    std::vector<Exponent> m(exps_.begin(), exps_.begin() + width_);
    for (std::size_t t = 1; t < terms_; ++t) {
        for (std::size_t v = 0; v < width_; ++v) {
            m[v] = std::min(m[v], exps_[t * width_ + v]);
        }
    }
    return m;
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const
{
    std::vector<Poly> out(degree_in(var) + 1);
    for (std::size_t t = 0; t < terms_; ++t) {
        const Exponent e = exponent(t, var);
        Poly &c = out[e];
        c.width_ = width_;
        c.exps_.insert(c.exps_.end(), exps_.begin() + t * width_, exps_.begin() + (t + 1) * width_);
        if (var < width_) {
            c.exps_[c.terms_ * width_ + var] = 0;
        }
        ++c.terms_;
    }
    for (auto &c : out) {
        if (c.terms_ == 0) {
            c.width_ = 0;
        }
        c.trim();
    }
    return out;
}

Poly Poly::from_coefficients(std::span<const Poly> coefficients, std::size_t var)
{
    std::vector<Poly> parts;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (coefficients[k].is_zero()) {
            continue;
        }
        std::vector<Exponent> shift(var + 1, 0);
        shift[var] = static_cast<Exponent>(k);
        parts.push_back(coefficients[k].shifted(shift));
    }
    Poly r;
    // Highest power first keeps merges close to appends.
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        r = merge_xor(r, *it);
    }
    return r;
}

std::map<std::vector<std::uint64_t>, Poly> Poly::parity_split() const
{
    std::map<std::vector<std::uint64_t>, Poly> out;
    const std::size_t words = (width_ + 63) / 64;
    std::vector<std::uint64_t> key(words);
    std::vector<Exponent> half(width_);
    for (std::size_t t = 0; t < terms_; ++t) {
        std::fill(key.begin(), key.end(), 0);
        for (std::size_t v = 0; v < width_; ++v) {
            const Exponent e = exps_[t * width_ + v];
            if (e % 2 == 1) {
                key[v / 64] |= std::uint64_t{1} << (v % 64);
            }
            half[v] = e / 2;
        }
        while (!key.empty() && key.back() == 0) {
            key.pop_back();
        }
        Poly &bucket = out[key];
        bucket.width_ = width_;
        bucket.exps_.insert(bucket.exps_.end(), half.begin(), half.end());
        ++bucket.terms_;
        key.resize(words);
    }
    for (auto &[k, p] : out) {
        p.trim();
    }
    return out;
}

bool operator<(const Poly &a, const Poly &b)
{
    if (a.width_ != b.width_) {
        return a.width_ < b.width_;
    }
    if (a.terms_ != b.terms_) {
        return a.terms_ < b.terms_;
    }
    return a.exps_ < b.exps_;
}

std::size_t Poly::hash() const noexcept
{
    std::size_t h = 1469598103934665603ULL ^ width_;
    for (const auto e : exps_) {
        h = (h ^ e) * 1099511628211ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Division and gcd

namespace
{

bool divides_term(std::span<const Exponent> d, std::span<const Exponent> t)
{
    for (std::size_t v = 0; v < d.size(); ++v) {
        const Exponent te = v < t.size() ? t[v] : 0;
        if (d[v] > te) {
            return false;
        }
    }
    return true;
}

std::vector<Exponent> term_quotient(std::span<const Exponent> t, std::span<const Exponent> d)
{
    std::vector<Exponent> q(std::max(t.size(), d.size()), 0);
    for (std::size_t v = 0; v < q.size(); ++v) {
        const Exponent te = v < t.size() ? t[v] : 0;
        const Exponent de = v < d.size() ? d[v] : 0;
        q[v] = te - de;
    }
    return q;
}

Poly divide_by_monomial(const Poly &a, std::span<const Exponent> m)
{
    return *a.divided_by_monomial(m);
}

} // namespace

std::optional<Poly> divide_exact(const Poly &a, const Poly &b)
{
    if (b.is_zero()) {
        throw DivisionByZero("polynomial division by zero");
    }
    if (a.is_zero()) {
        return Poly{};
    }
    if (b.is_one()) {
        return a;
    }
    if (b.total_degree() > a.total_degree()) {
        return std::nullopt;
    }
    for (std::size_t v = 0; v < b.width(); ++v) {
        if (b.degree_in(v) > a.degree_in(v)) {
            return std::nullopt;
        }
    }
    if (b.is_monomial()) {
        const auto m = b.term(0);
        for (std::size_t t = 0; t < a.term_count(); ++t) {
            if (!divides_term(m, a.term(t))) {
                return std::nullopt;
            }
        }
        return a.divided_by_monomial(m);
    }
    const auto lead = b.term(0);
    Poly r = a;
    std::vector<std::vector<Exponent>> quotient_terms;
    std::size_t width = 0;
    while (!r.is_zero()) {
        const auto lt = r.term(0);
        if (!divides_term(lead, lt)) {
            return std::nullopt;
        }
        auto q = term_quotient(lt, lead);
        r += b.shifted(q);
        width = std::max(width, q.size());
        quotient_terms.push_back(std::move(q));
    }
    // Quotient terms are generated in strictly descending order.
    std::vector<Exponent> flat;
    flat.reserve(quotient_terms.size() * width);
    for (auto &q : quotient_terms) {
        q.resize(width, 0);
        flat.insert(flat.end(), q.begin(), q.end());
    }
    return Poly::from_sorted_terms(width, quotient_terms.size(), std::move(flat));
}

namespace
{

using Coeffs = std::vector<Poly>;

void strip(Coeffs &c)
{
    while (!c.empty() && c.back().is_zero()) {
        c.pop_back();
    }
}

Poly content_of(const Coeffs &c)
{
    Poly g;
    for (const auto &x : c) {
        g = gcd(g, x);
        if (g.is_one()) {
            break;
        }
    }
    return g;
}

Coeffs divide_all(const Coeffs &c, const Poly &d)
{
    if (d.is_one()) {
        return c;
    }
    Coeffs out;
    out.reserve(c.size());
    for (const auto &x : c) {
        auto q = divide_exact(x, d);
        if (!q) {
            throw InconsistencyDetected("gcd: content does not divide coefficient");
        }
        out.push_back(std::move(*q));
    }
    return out;
}

/// Pseudo-remainder of a by b as univariate polynomials with polynomial coefficients.
Coeffs pseudo_remainder(Coeffs a, const Coeffs &b)
{
    const Poly &lcb = b.back();
    const std::size_t db = b.size() - 1;
    strip(a);
    while (!a.empty() && a.size() - 1 >= db) {
        const Poly lca = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (auto &x : a) {
            x = x * lcb;
        }
        for (std::size_t k = 0; k <= db; ++k) {
            a[k + shift] += lca * b[k];
        }
        strip(a);
    }
    return a;
}

Poly gcd_primitive(Poly a, Poly b);

} // namespace

Poly gcd(const Poly &a_in, const Poly &b_in)
{
    if (a_in.is_zero()) {
        return b_in;
    }
    if (b_in.is_zero() || a_in == b_in) {
        return a_in;
    }
    if (a_in.is_one() || b_in.is_one()) {
        return Poly::one();
    }
    const auto ma = a_in.monomial_content();
    const auto mb = b_in.monomial_content();
    std::vector<Exponent> mg(std::min(ma.size(), mb.size()));
    for (std::size_t v = 0; v < mg.size(); ++v) {
        mg[v] = std::min(ma[v], mb[v]);
    }
    const Poly mono = Poly::monomial(mg);
    Poly a = divide_by_monomial(a_in, ma);
    Poly b = divide_by_monomial(b_in, mb);
    if (a.is_one() || b.is_one()) {
        return mono;
    }
    return gcd_primitive(std::move(a), std::move(b)) * mono;
}

namespace
{

// Both arguments are free of monomial factors and nonconstant.
Poly gcd_primitive(Poly a, Poly b)
{
    for (;;) {
        if (a.is_one() || b.is_one()) {
            return Poly::one();
        }
        if (a.term_count() < b.term_count()) {
            std::swap(a, b);
        }
        // Cheap exact-division probe: many gcds in practice are one of the arguments.
        if (auto q = divide_exact(a, b)) {
            return b;
        }
        const auto sa = a.support();
        const auto sb = b.support();
        // A variable occurring in only one argument cannot occur in the gcd.
        bool reduced = false;
        for (const auto v : sa) {
            if (!std::binary_search(sb.begin(), sb.end(), v)) {
                a = content_of(a.coefficients_in(v));
                reduced = true;
                break;
            }
        }
        if (reduced) {
            continue;
        }
        for (const auto v : sb) {
            if (!std::binary_search(sa.begin(), sa.end(), v)) {
                b = content_of(b.coefficients_in(v));
                reduced = true;
                break;
            }
        }
        if (reduced) {
            continue;
        }
        // Specializing all but one variable at a random point bounds the degree
        // of the gcd in that variable whenever both leading coefficients survive.
        {
            std::size_t width = std::max(a.width(), b.width());
            std::mt19937_64 rng(0x9cd5u + width);
            std::vector<std::uint64_t> point(width);
            for (auto &x : point) {
                x = rng();
            }
            std::size_t proven_free = 0;
            std::optional<std::size_t> free_var;
            for (const auto v : sa) {
                const auto ia = gf64::univariate_image(a, v, point);
                const auto ib = gf64::univariate_image(b, v, point);
                if (ia.back() == 0 || ib.back() == 0) {
                    continue;
                }
                if (gf64::gcd_degree(ia, ib) == 0) {
                    ++proven_free;
                    if (!free_var) {
                        free_var = v;
                    }
                }
            }
            if (proven_free == sa.size()) {
                return Poly::one();
            }
            if (free_var) {
                // The gcd does not involve free_var, so it is the gcd of the contents.
                return gcd(content_of(a.coefficients_in(*free_var)), content_of(b.coefficients_in(*free_var)));
            }
        }
        // Same support: pick the variable of smallest degree as the main variable.
        std::size_t x = sa.front();
        Exponent best = std::numeric_limits<Exponent>::max();
        for (const auto v : sa) {
            const Exponent d = std::max(a.degree_in(v), b.degree_in(v));
            if (d < best) {
                best = d;
                x = v;
            }
        }
        Coeffs ca = a.coefficients_in(x);
        Coeffs cb = b.coefficients_in(x);
        const Poly conta = content_of(ca);
        const Poly contb = content_of(cb);
        const Poly content = gcd(conta, contb);
        ca = divide_all(ca, conta);
        cb = divide_all(cb, contb);
        if (ca.size() < cb.size()) {
            std::swap(ca, cb);
        }
        while (true) {
            Coeffs r = pseudo_remainder(ca, cb);
            if (r.empty()) {
                break;
            }
            if (r.size() == 1) {
                cb = {Poly::one()};
                break;
            }
            ca = std::move(cb);
            cb = divide_all(r, content_of(r));
        }
        Poly g = Poly::from_coefficients(cb, x);
        return g * content;
    }
}

} // namespace

// ---------------------------------------------------------------------------
// RatFn

RatFn::RatFn(const Poly &num, const Poly &den)
{
    if (den.is_zero()) {
        throw DivisionByZero("rational function with zero denominator");
    }
    if (num.is_zero()) {
        den_ = Poly::one();
        return;
    }
    const Poly g = gcd(num, den);
    if (g.is_one()) {
        num_ = num;
        den_ = den;
    } else {
        num_ = *divide_exact(num, g);
        den_ = *divide_exact(den, g);
    }
}

RatFn operator+(const RatFn &a, const RatFn &b)
{
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    if (a.den_ == b.den_) {
        if (a.den_.is_one()) {
            return RatFn(a.num_ + b.num_);
        }
        return RatFn(a.num_ + b.num_, a.den_);
    }
    if (a.den_.is_one()) {
        return RatFn(a.num_ * b.den_ + b.num_, b.den_, RatFn::Reduced{});
    }
    if (b.den_.is_one()) {
        return RatFn(b.num_ * a.den_ + a.num_, a.den_, RatFn::Reduced{});
    }
    const Poly g = gcd(a.den_, b.den_);
    if (g.is_one()) {
        // Any common factor of the new numerator and a.den*b.den would divide a.num*b.den.
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, RatFn::Reduced{});
    }
    const Poly da = *divide_exact(a.den_, g);
    const Poly db = *divide_exact(b.den_, g);
    Poly num = a.num_ * db + b.num_ * da;
    if (num.is_zero()) {
        return {};
    }
    Poly den = a.den_ * db;
    const Poly h = gcd(num, g);
    if (!h.is_one()) {
        num = *divide_exact(num, h);
        den = *divide_exact(den, h);
    }
    return RatFn(std::move(num), std::move(den), RatFn::Reduced{});
}

RatFn operator*(const RatFn &a, const RatFn &b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    if (a.den_.is_one() && b.den_.is_one()) {
        return RatFn(a.num_ * b.num_);
    }
    const Poly g1 = gcd(a.num_, b.den_);
    const Poly g2 = gcd(b.num_, a.den_);
    const Poly an = g1.is_one() ? a.num_ : *divide_exact(a.num_, g1);
    const Poly bd = g1.is_one() ? b.den_ : *divide_exact(b.den_, g1);
    const Poly bn = g2.is_one() ? b.num_ : *divide_exact(b.num_, g2);
    const Poly ad = g2.is_one() ? a.den_ : *divide_exact(a.den_, g2);
    return RatFn(an * bn, ad * bd, RatFn::Reduced{});
}

RatFn RatFn::inverse() const
{
    if (is_zero()) {
        throw DivisionByZero("inverse of zero rational function");
    }
    return RatFn(den_, num_, Reduced{});
}

RatFn operator/(const RatFn &a, const RatFn &b)
{
    if (b.is_zero()) {
        throw DivisionByZero("rational function division by zero");
    }
    return a * b.inverse();
}

RatFn &RatFn::operator+=(const RatFn &other)
{
    *this = *this + other;
    return *this;
}

RatFn &RatFn::operator*=(const RatFn &other)
{
    *this = *this * other;
    return *this;
}

RatFn &RatFn::operator/=(const RatFn &other)
{
    *this = *this / other;
    return *this;
}

RatFn RatFn::squared() const
{
    return RatFn(num_.squared(), den_.squared(), Reduced{});
}

RatFn RatFn::pow(std::int64_t n) const
{
    if (n < 0) {
        return inverse().pow(-n);
    }
    return RatFn(num_.pow(static_cast<std::uint64_t>(n)), den_.pow(static_cast<std::uint64_t>(n)), Reduced{});
}

std::optional<RatFn> RatFn::sqrt() const
{
    // With coprime numerator and denominator and trivial units, N/D is a square iff both are.
    auto n = num_.sqrt();
    if (!n) {
        return std::nullopt;
    }
    auto d = den_.sqrt();
    if (!d) {
        return std::nullopt;
    }
    return RatFn(std::move(*n), std::move(*d), Reduced{});
}

RatFn RatFn::derivative(std::size_t var) const
{
    if (den_.is_one()) {
        return RatFn(num_.derivative(var));
    }
    return RatFn(num_.derivative(var) * den_ + num_ * den_.derivative(var), den_.squared());
}

bool operator<(const RatFn &a, const RatFn &b)
{
    if (a.num_ == b.num_) {
        return a.den_ < b.den_;
    }
    return a.num_ < b.num_;
}

// ---------------------------------------------------------------------------
// PolyRing

PolyRing::PolyRing(std::vector<std::string> names) : names_(std::move(names))
{
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], i).second) {
            throw NameCollision("duplicate variable name '" + names_[i] + "'");
        }
    }
}

bool PolyRing::contains(std::string_view name) const
{
    return index_.find(name) != index_.end();
}

std::size_t PolyRing::index_of(std::string_view name) const
{
    const auto it = index_.find(name);
    if (it == index_.end()) {
        throw UnknownVariable("unknown variable '" + std::string(name) + "'");
    }
    return it->second;
}

Poly PolyRing::variable(std::string_view name) const
{
    return Poly::variable(index_of(name));
}

Poly PolyRing::derivative(const Poly &p, std::string_view var) const
{
    return p.derivative(index_of(var));
}

RatFn PolyRing::derivative(const RatFn &p, std::string_view var) const
{
    return p.derivative(index_of(var));
}

std::string PolyRing::to_string(const Poly &p) const
{
    if (p.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        if (t > 0) {
            os << " + ";
        }
        bool first = true;
        const auto term = p.term(t);
        for (std::size_t v = 0; v < term.size(); ++v) {
            if (term[v] == 0) {
                continue;
            }
            if (!first) {
                os << '*';
            }
            first = false;
            os << (v < names_.size() ? names_[v] : "x" + std::to_string(v));
            if (term[v] > 1) {
                os << '^' << term[v];
            }
        }
        if (first) {
            os << '1';
        }
    }
    return os.str();
}

namespace
{

bool is_atom(const Poly &p)
{
    return p.is_constant() || (p.is_monomial() && p.support().size() == 1);
}

} // namespace

std::string PolyRing::to_string(const RatFn &p) const
{
    if (p.is_polynomial()) {
        return to_string(p.num());
    }
    std::string num = to_string(p.num());
    if (p.num().term_count() > 1) {
        num = "(" + num + ")";
    }
    std::string den = to_string(p.den());
    if (!is_atom(p.den())) {
        den = "(" + den + ")";
    }
    return num + "/" + den;
}

} // namespace qf
