#include "quasiform/sqlinalg.hpp"

#include "quasiform/errors.hpp"
#include "gf64.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace qf
{

namespace
{

using gf64::evaluate;
using gf64::mul;

Poly exact(const Poly &a, const Poly &b)
{
    if (b.is_one()) {
        return a;
    }
    auto q = divide_exact(a, b);
    if (!q) {
        throw InconsistencyDetected("fraction-free elimination produced an inexact division");
    }
    return std::move(*q);
}

Poly lcm(const Poly &a, const Poly &b)
{
    if (a == b || b.is_one()) {
        return a;
    }
    if (a.is_one()) {
        return b;
    }
    return a * exact(b, gcd(a, b));
}

// Square subsystem solve by Bareiss elimination with full pivoting. Returns
// numerators y and the determinant d with solution y / d.
linalg::Solution bareiss_solve(std::vector<std::vector<Poly>> A)
{
    const std::size_t k = A.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Poly prev = Poly::one();
    for (std::size_t s = 0; s < k; ++s) {
        std::size_t br = k;
        std::size_t bc = k;
        std::pair<std::size_t, std::uint64_t> best{0, 0};
        for (std::size_t r = s; r < k; ++r) {
            for (std::size_t c = s; c < k; ++c) {
                if (A[r][c].is_zero()) {
                    continue;
                }
                const std::pair<std::size_t, std::uint64_t> cost{A[r][c].term_count(), A[r][c].total_degree()};
                if (br == k || cost < best) {
                    best = cost;
                    br = r;
                    bc = c;
                }
            }
        }
        if (br == k) {
            throw InconsistencyDetected("singular subsystem after a nonsingular probe");
        }
        std::swap(A[s], A[br]);
        if (bc != s) {
            for (auto &row : A) {
                std::swap(row[s], row[bc]);
            }
            std::swap(perm[s], perm[bc]);
        }
        for (std::size_t i = s + 1; i < k; ++i) {
            const Poly f = A[i][s];
            for (std::size_t j = s + 1; j <= k; ++j) {
                Poly v = A[s][s] * A[i][j];
                if (!f.is_zero() && !A[s][j].is_zero()) {
                    v += f * A[s][j];
                }
                A[i][j] = exact(v, prev);
            }
            A[i][s] = Poly{};
        }
        prev = A[s][s];
    }
    linalg::Solution sol;
    sol.denominator = prev;
    std::vector<Poly> y(k);
    for (std::size_t i = k; i-- > 0;) {
        Poly acc = A[i][k] * sol.denominator;
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!A[i][j].is_zero() && !y[j].is_zero()) {
                acc += A[i][j] * y[j];
            }
        }
        y[i] = exact(acc, A[i][i]);
    }
    sol.numerators.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        sol.numerators[perm[i]] = std::move(y[i]);
    }
    return sol;
}

constexpr int probe_attempts = 8;

} // namespace

namespace linalg
{

namespace
{

// With membership_only, a member is reported by an empty Solution.
std::optional<Solution> solve_or_test(const std::vector<SparseVector> &columns, const SparseVector &b,
                                      bool membership_only)
{
    const std::size_t k = columns.size();
    if (b.empty()) {
        return Solution{std::vector<Poly>(k), Poly::one()};
    }
    if (k == 0) {
        return std::nullopt;
    }

    // Compact the rows that actually occur.
    std::vector<std::size_t> row_ids;
    std::size_t width = 0;
    for (const auto &col : columns) {
        for (const auto &[r, p] : col) {
            row_ids.push_back(r);
            width = std::max(width, p.width());
        }
    }
    std::sort(row_ids.begin(), row_ids.end());
    row_ids.erase(std::unique(row_ids.begin(), row_ids.end()), row_ids.end());
    auto local = [&](std::size_t r) -> std::optional<std::size_t> {
        auto it = std::lower_bound(row_ids.begin(), row_ids.end(), r);
        if (it == row_ids.end() || *it != r) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - row_ids.begin());
    };
    std::vector<std::pair<std::size_t, const Poly *>> rhs;
    for (const auto &[r, p] : b) {
        auto l = local(r);
        if (!l) {
            return std::nullopt;
        }
        rhs.emplace_back(*l, &p);
        width = std::max(width, p.width());
    }
    const std::size_t n = row_ids.size();
    if (n < k) {
        throw InconsistencyDetected("more columns than rows in an independent system");
    }

    std::mt19937_64 rng(0x5eed5eedULL);
    std::vector<std::size_t> pivot_rows;
    bool found = false;
    for (int attempt = 0; attempt < probe_attempts && !found; ++attempt) {
        std::vector<std::uint64_t> point(width);
        for (auto &x : point) {
            x = rng();
        }
        std::vector<std::vector<std::uint64_t>> V(n, std::vector<std::uint64_t>(k + 1, 0));
        for (std::size_t c = 0; c < k; ++c) {
            for (const auto &[r, p] : columns[c]) {
                V[*local(r)][c] = evaluate(p, point);
            }
        }
        for (const auto &[l, p] : rhs) {
            V[l][k] = evaluate(*p, point);
        }
        std::vector<bool> used(n, false);
        pivot_rows.clear();
        bool deficient = false;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t piv = n;
            for (std::size_t r = 0; r < n; ++r) {
                if (!used[r] && V[r][c] != 0) {
                    piv = r;
                    break;
                }
            }
            if (piv == n) {
                deficient = true;
                break;
            }
            used[piv] = true;
            pivot_rows.push_back(piv);
            const std::uint64_t pv = V[piv][c];
            for (std::size_t r = 0; r < n; ++r) {
                if (used[r] || V[r][c] == 0) {
                    continue;
                }
                const std::uint64_t f = V[r][c];
                for (std::size_t cc = c; cc <= k; ++cc) {
                    V[r][cc] = mul(pv, V[r][cc]) ^ mul(f, V[piv][cc]);
                }
            }
        }
        if (deficient) {
            continue;
        }
        found = true;
        // A nonzero (k+1)-minor at the point proves the augmented rank.
        for (std::size_t r = 0; r < n; ++r) {
            if (!used[r] && V[r][k] != 0) {
                return std::nullopt;
            }
        }
    }
    if (!found) {
        throw InconsistencyDetected("columns expected to be independent are dependent");
    }
    // k independent columns in k rows span everything on those rows.
    if (membership_only && n == k) {
        return Solution{};
    }

    std::vector<std::size_t> slot(n, k);
    for (std::size_t i = 0; i < k; ++i) {
        slot[pivot_rows[i]] = i;
    }
    std::vector<std::vector<Poly>> A(k, std::vector<Poly>(k + 1));
    for (std::size_t c = 0; c < k; ++c) {
        for (const auto &[r, p] : columns[c]) {
            const std::size_t s = slot[*local(r)];
            if (s < k) {
                A[s][c] = p;
            }
        }
    }
    for (const auto &[l, p] : rhs) {
        if (slot[l] < k) {
            A[slot[l]][k] = *p;
        }
    }
    Solution sol = bareiss_solve(std::move(A));

    // The square subsystem has a unique solution; it answers the full
    // system exactly when it satisfies every remaining row.
    if (n > k) {
        std::vector<Poly> acc(n);
        for (std::size_t c = 0; c < k; ++c) {
            if (sol.numerators[c].is_zero()) {
                continue;
            }
            for (const auto &[r, p] : columns[c]) {
                const std::size_t l = *local(r);
                if (slot[l] == k) {
                    acc[l] += sol.numerators[c] * p;
                }
            }
        }
        for (const auto &[l, p] : rhs) {
            if (slot[l] == k) {
                acc[l] += sol.denominator * *p;
            }
        }
        for (std::size_t l = 0; l < n; ++l) {
            if (!acc[l].is_zero()) {
                return std::nullopt;
            }
        }
    }
    return sol;
}

} // namespace

std::optional<Solution> solve_independent(const std::vector<SparseVector> &columns, const SparseVector &b)
{
    return solve_or_test(columns, b, false);
}

bool in_span(const std::vector<SparseVector> &columns, const SparseVector &b)
{
    return solve_or_test(columns, b, true).has_value();
}

std::size_t ColumnSpan::row_index(const RowKey &key)
{
    return rows_.try_emplace(key, rows_.size()).first->second;
}

std::optional<std::size_t> ColumnSpan::find_row(const RowKey &key) const
{
    auto it = rows_.find(key);
    if (it == rows_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::vector<RatFn>> ColumnSpan::express(const ScaledColumn &target) const
{
    auto sol = solve_independent(entries_, target.entries);
    if (!sol) {
        return std::nullopt;
    }
    // sum (y_c/d) S_c = S_t with columns S_c / L_c and target S_t / L_t.
    const Poly den = sol->denominator * target.scale;
    std::vector<RatFn> x;
    x.reserve(entries_.size());
    for (std::size_t c = 0; c < entries_.size(); ++c) {
        if (sol->numerators[c].is_zero()) {
            x.emplace_back();
        } else {
            x.emplace_back(sol->numerators[c] * scales_[c], den);
        }
    }
    return x;
}

bool ColumnSpan::contains(const ScaledColumn &target) const
{
    return in_span(entries_, target.entries);
}

} // namespace linalg

namespace
{

void sort_entries(linalg::SparseVector &v)
{
    std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
}

Expansion monomial_expansion(std::uint32_t mask)
{
    return {{mask, RatFn::one()}};
}

} // namespace

// ---------------------------------------------------------------------------
// SquareSpan

SquareSpan::SquareSpan(TowerPtr tower) : tower_(std::move(tower))
{
    const std::uint32_t count = std::uint32_t{1} << tower_->depth();
    theta_monomials_.reserve(count);
    for (std::uint32_t m = 0; m < count; ++m) {
        theta_monomials_.push_back(detail::expansion_square(monomial_expansion(m), *tower_));
    }
}

std::optional<linalg::ScaledColumn> SquareSpan::coordinates(const Expansion &x, linalg::ColumnSpan *grow) const
{
    // x = sum_n c_n y^n with c_n = F_n / L^2 and F_n = sum_e v^e S_{n,e}^2, so
    // the coordinates over squares, square-rooted, are S_{n,e} / L.
    linalg::ScaledColumn col;
    for (const auto &[n, c] : x) {
        col.scale = lcm(col.scale, c.den());
    }
    for (const auto &[n, c] : x) {
        const Poly f = c.num() * exact(col.scale, c.den()) * col.scale;
        for (auto &[parity, root] : f.parity_split()) {
            linalg::ColumnSpan::RowKey key;
            key.reserve(parity.size() + 1);
            key.push_back(n);
            key.insert(key.end(), parity.begin(), parity.end());
            if (grow != nullptr) {
                col.entries.emplace_back(grow->row_index(key), std::move(root));
            } else if (auto r = span_.find_row(key)) {
                col.entries.emplace_back(*r, std::move(root));
            } else {
                return std::nullopt;
            }
        }
    }
    sort_entries(col.entries);
    return col;
}

std::optional<std::vector<TowerElement>> SquareSpan::express(const TowerElement &target) const
{
    const TowerElement t = target.embed(tower_);
    const std::size_t blocks = theta_monomials_.size();
    if (t.is_zero()) {
        return std::vector<TowerElement>(generators_.size(), TowerElement(tower_));
    }
    if (generators_.empty()) {
        return std::nullopt;
    }
    auto col = coordinates(t.expansion(), nullptr);
    if (!col) {
        return std::nullopt;
    }
    auto x = span_.express(*col);
    if (!x) {
        return std::nullopt;
    }
    std::vector<TowerElement> roots;
    roots.reserve(generators_.size());
    for (std::size_t j = 0; j < generators_.size(); ++j) {
        Expansion e;
        for (std::size_t m = 0; m < blocks; ++m) {
            RatFn &w = (*x)[j * blocks + m];
            if (!w.is_zero()) {
                e.emplace_back(static_cast<std::uint32_t>(m), std::move(w));
            }
        }
        roots.emplace_back(tower_, std::move(e));
    }
    return roots;
}

bool SquareSpan::contains(const TowerElement &target) const
{
    const TowerElement t = target.embed(tower_);
    if (t.is_zero()) {
        return true;
    }
    if (generators_.empty()) {
        return false;
    }
    auto col = coordinates(t.expansion(), nullptr);
    return col && span_.contains(*col);
}

bool SquareSpan::add(const TowerElement &g)
{
    const TowerElement x = g.embed(tower_);
    if (x.is_zero()) {
        throw ZeroGenerator("zero generator");
    }
    if (contains(x)) {
        return false;
    }
    push(x);
    return true;
}

void SquareSpan::push(const TowerElement &x)
{
    for (const auto &theta : theta_monomials_) {
        span_.push(*coordinates(detail::expansion_mul(theta, x.expansion(), *tower_), &span_));
    }
    generators_.push_back(x);
}

std::optional<std::vector<TowerElement>> SquareSpan::express_or_add(const TowerElement &g)
{
    const TowerElement x = g.embed(tower_);
    if (x.is_zero()) {
        throw ZeroGenerator("zero generator");
    }
    if (auto roots = express(x)) {
        return roots;
    }
    push(x);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// VectorSpan

VectorSpan::VectorSpan(TowerPtr tower, std::size_t length) : tower_(std::move(tower)), length_(length) {}

std::optional<linalg::ScaledColumn> VectorSpan::coordinates(const std::vector<TowerElement> &v,
                                                            linalg::ColumnSpan *grow) const
{
    linalg::ScaledColumn col;
    for (const auto &x : v) {
        for (const auto &[n, c] : x.expansion()) {
            col.scale = lcm(col.scale, c.den());
        }
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (const auto &[n, c] : v[i].expansion()) {
            linalg::ColumnSpan::RowKey key{i, n};
            Poly entry = c.num() * exact(col.scale, c.den());
            if (grow != nullptr) {
                col.entries.emplace_back(grow->row_index(key), std::move(entry));
            } else if (auto r = span_.find_row(key)) {
                col.entries.emplace_back(*r, std::move(entry));
            } else {
                return std::nullopt;
            }
        }
    }
    sort_entries(col.entries);
    return col;
}

std::optional<std::vector<TowerElement>> VectorSpan::express(const std::vector<TowerElement> &target) const
{
    if (target.size() != length_) {
        throw DimensionMismatch("vector length differs from span");
    }
    std::vector<TowerElement> t;
    t.reserve(length_);
    bool zero = true;
    for (const auto &x : target) {
        t.push_back(x.embed(tower_));
        zero = zero && x.is_zero();
    }
    if (zero) {
        return std::vector<TowerElement>(vectors_.size(), TowerElement(tower_));
    }
    if (vectors_.empty()) {
        return std::nullopt;
    }
    auto col = coordinates(t, nullptr);
    if (!col) {
        return std::nullopt;
    }
    auto x = span_.express(*col);
    if (!x) {
        return std::nullopt;
    }
    const std::size_t blocks = std::size_t{1} << tower_->depth();
    std::vector<TowerElement> coeffs;
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
        Expansion e;
        for (std::size_t m = 0; m < blocks; ++m) {
            RatFn &w = (*x)[j * blocks + m];
            if (!w.is_zero()) {
                e.emplace_back(static_cast<std::uint32_t>(m), std::move(w));
            }
        }
        coeffs.emplace_back(tower_, std::move(e));
    }
    return coeffs;
}

bool VectorSpan::add(const std::vector<TowerElement> &v)
{
    if (v.size() != length_) {
        throw DimensionMismatch("vector length differs from span");
    }
    std::vector<TowerElement> t;
    bool zero = true;
    for (const auto &x : v) {
        t.push_back(x.embed(tower_));
        zero = zero && x.is_zero();
    }
    if (zero) {
        return false;
    }
    if (!vectors_.empty()) {
        auto col = coordinates(t, nullptr);
        if (col && span_.contains(*col)) {
            return false;
        }
    }
    push(v);
    return true;
}

std::optional<std::vector<TowerElement>> VectorSpan::express_or_add(const std::vector<TowerElement> &v)
{
    if (auto coeffs = express(v)) {
        return coeffs;
    }
    push(v);
    return std::nullopt;
}

void VectorSpan::push(const std::vector<TowerElement> &v)
{
    const std::uint32_t blocks = std::uint32_t{1} << tower_->depth();
    std::vector<TowerElement> w(v.size(), TowerElement(tower_));
    for (std::uint32_t m = 0; m < blocks; ++m) {
        const TowerElement ym(tower_, monomial_expansion(m));
        for (std::size_t i = 0; i < v.size(); ++i) {
            w[i] = ym * v[i].embed(tower_);
        }
        span_.push(*coordinates(w, &span_));
    }
    std::vector<TowerElement> stored;
    for (const auto &x : v) {
        stored.push_back(x.embed(tower_));
    }
    vectors_.push_back(std::move(stored));
}

std::size_t k_rank(const std::vector<std::vector<TowerElement>> &vectors, const TowerPtr &tower)
{
    if (vectors.empty()) {
        return 0;
    }
    VectorSpan span(tower, vectors.front().size());
    for (const auto &v : vectors) {
        span.add(v);
    }
    return span.size();
}

std::vector<std::vector<TowerElement>> k_kernel(const std::vector<std::vector<TowerElement>> &columns,
                                                const TowerPtr &tower)
{
    std::vector<std::vector<TowerElement>> basis;
    if (columns.empty()) {
        return basis;
    }
    VectorSpan span(tower, columns.front().size());
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (auto coeffs = span.express_or_add(columns[c])) {
            std::vector<TowerElement> v(columns.size(), TowerElement(tower));
            v[c] = TowerElement::one(tower);
            for (std::size_t i = 0; i < kept.size(); ++i) {
                v[kept[i]] = (*coeffs)[i];
            }
            basis.push_back(std::move(v));
        } else {
            kept.push_back(c);
        }
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Square relations

bool SquareRelation::verify() const
{
    if (generators.size() != coefficients.size() || roots.size() != coefficients.size()) {
        return false;
    }
    TowerElement sum(target.tower());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (!(roots[i].squared() == coefficients[i])) {
            return false;
        }
        sum += coefficients[i] * generators[i];
    }
    return sum == target;
}

std::optional<SquareRelation> k2_membership(const TowerElement &target, const std::vector<TowerElement> &gens)
{
    TowerPtr tower = target.tower();
    for (const auto &g : gens) {
        tower = common_tower(tower, g.tower());
    }
    SquareSpan span(tower);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!gens[i].is_zero() && span.add(gens[i])) {
            kept.push_back(i);
        }
    }
    auto roots = span.express(target);
    if (!roots) {
        return std::nullopt;
    }
    SquareRelation rel{target.embed(tower), {}, {}, {}};
    for (const auto &g : gens) {
        rel.generators.push_back(g.embed(tower));
        rel.coefficients.emplace_back(tower);
        rel.roots.emplace_back(tower);
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        rel.coefficients[kept[i]] = (*roots)[i].squared();
        rel.roots[kept[i]] = std::move((*roots)[i]);
    }
    if (!rel.verify()) {
        throw InconsistencyDetected("square relation failed exact verification");
    }
    return rel;
}

RankResult k2_rank(const std::vector<TowerElement> &gens, const TowerPtr &tower)
{
    SquareSpan span(tower);
    RankResult result;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_zero()) {
            throw ZeroGenerator("zero generator at position " + std::to_string(i));
        }
        if (span.add(gens[i])) {
            result.indices.push_back(i);
        }
    }
    result.rank = span.size();
    result.independent = span.generators();
    return result;
}

std::vector<std::vector<TowerElement>> isotropic_kernel_basis(const std::vector<TowerElement> &coefficients,
                                                              const TowerPtr &tower)
{
    SquareSpan span(tower);
    std::vector<std::size_t> kept;
    std::vector<std::vector<TowerElement>> basis;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        if (coefficients[j].is_zero()) {
            throw ZeroGenerator("zero coefficient at position " + std::to_string(j));
        }
        if (auto roots = span.express_or_add(coefficients[j])) {
            std::vector<TowerElement> v(coefficients.size(), TowerElement(tower));
            v[j] = TowerElement::one(tower);
            for (std::size_t i = 0; i < kept.size(); ++i) {
                v[kept[i]] = (*roots)[i];
            }
            basis.push_back(std::move(v));
        } else {
            kept.push_back(j);
        }
    }
    return basis;
}

std::optional<TowerElement> sqrt_in_tower(const TowerElement &x)
{
    if (x.is_zero()) {
        return x;
    }
    if (x.tower()->depth() == 0) {
        auto r = x.rational_part().sqrt();
        if (!r) {
            return std::nullopt;
        }
        return TowerElement(x.tower(), std::move(*r));
    }
    SquareSpan span(x.tower());
    span.add(TowerElement::one(x.tower()));
    auto roots = span.express(x);
    if (!roots) {
        return std::nullopt;
    }
    return std::move(roots->front());
}

} // namespace qf
