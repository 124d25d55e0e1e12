#include "quasiform/birational.hpp"
#include "quasiform/errors.hpp"
#include "quasiform/report.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

using namespace qf;

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check
{
public:
    void expect(bool cond, const std::string &what)
    {
        if (!cond) {
            pass_ = false;
            if (failures_++ < 5) {
                detail_ += (detail_.empty() ? "" : "; ") + what;
            }
        }
    }
    void note(const std::string &s)
    {
        notes_ += (notes_.empty() ? "" : ", ") + s;
    }
    Outcome done() const
    {
        if (pass_) {
            return {true, notes_};
        }
        return {false, detail_ + (failures_ > 5 ? " (and " + std::to_string(failures_ - 5) + " more)" : "")};
    }

private:
    bool pass_ = true;
    int failures_ = 0;
    std::string detail_;
    std::string notes_;
};

struct Fixture {
    TowerPtr k = FieldTower::rational({"a", "b", "c"});
    TowerElement a = TowerElement::variable(k, "a");
    TowerElement b = TowerElement::variable(k, "b");
    TowerElement c = TowerElement::variable(k, "c");
    TowerElement one = TowerElement::one(k);

    QuasilinearForm form(std::vector<TowerElement> coeffs) const
    {
        return {k, std::move(coeffs)};
    }

    std::vector<TowerElement> monomials() const
    {
        std::vector<TowerElement> out;
        for (int ea = 0; ea <= 2; ++ea) {
            for (int eb = 0; ea + eb <= 2; ++eb) {
                for (int ec = 0; ea + eb + ec <= 2; ++ec) {
                    out.push_back(a.pow(ea) * b.pow(eb) * c.pow(ec));
                }
            }
        }
        return out;
    }
};

QuasilinearForm generic_form(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) {
        names.push_back("t" + std::to_string(i));
    }
    const TowerPtr k = FieldTower::rational(names);
    std::vector<TowerElement> coeffs;
    for (const auto &name : names) {
        coeffs.push_back(TowerElement::variable(k, name));
    }
    return {k, coeffs};
}

std::string str(std::size_t v)
{
    return std::to_string(v);
}

Outcome criterion1()
{
    const Fixture f;
    Check ch;
    const auto start = Clock::now();
    const QuasilinearForm q1 = f.form({f.one, f.a, f.b, f.a * f.b, f.c});
    const QuasilinearForm q2 = f.form({f.one, f.a, f.c, f.a * f.c, f.b});
    ch.expect(!decide_similar(q1, q2).has_value(), "decide_similar returned a factor");
    ch.expect(decide_birational(q1, q2), "decide_birational returned false");
    const double t = seconds_since(start);
    ch.expect(t < 10, "runtime " + std::to_string(t) + " s");
    ch.note("not similar, birational");
    return ch.done();
}

Outcome criterion2()
{
    Check ch;
    double t5 = 0;
    for (std::size_t n = 2; n <= 5; ++n) {
        const auto start = Clock::now();
        const QuasilinearForm q = generic_form(n);
        const std::string tag = "n=" + str(n) + ": ";
        ch.expect(is_anisotropic(q), tag + "isotropic");
        std::vector<std::size_t> expected;
        for (std::size_t d = n; d >= 1; --d) {
            expected.push_back(d);
        }
        ch.expect(splitting_pattern(q).dims == expected, tag + "wrong splitting pattern");
        ch.expect(first_witt_index(q) == 1, tag + "i_1 != 1");
        const QuasilinearForm scaled = q.scaled(q.coeffs().back().inverse());
        ch.expect(is_regular_quadric(scaled).regular, tag + "not regular");
        bool not_ruled = false;
        try {
            construct_ruling(q);
        } catch (const NotRuled &) {
            not_ruled = true;
        }
        ch.expect(not_ruled, tag + "construct_ruling did not report NotRuled");
        if (n == 5) {
            t5 = seconds_since(start);
        }
    }
    ch.expect(t5 < 60, "n=5 runtime " + std::to_string(t5) + " s");
    ch.note("n=2..5, n=5 in " + std::to_string(t5) + " s");
    return ch.done();
}

Outcome criterion3()
{
    const Fixture f;
    Check ch;
    const auto start = Clock::now();
    const QuasilinearForm q = f.form({f.one, f.a, f.b, f.a * f.b, f.c});
    ch.expect(is_anisotropic(q), "isotropic");
    ch.expect(first_witt_index(q) == 1, "i_1 != 1");
    ch.expect(!is_regular_quadric(q).regular, "reported regular");
    const double t = seconds_since(start);
    ch.expect(t < 10, "runtime " + std::to_string(t) + " s");
    ch.note("anisotropic, i_1 = 1, not regular");
    return ch.done();
}

Outcome criterion4()
{
    const Fixture f;
    Check ch;
    const QuasilinearForm p2 = quasi_pfister({f.a, f.b});
    const QuasilinearForm p3 = quasi_pfister({f.a, f.b, f.c});
    const RulingDecomposition d2 = construct_ruling(p2);
    ch.expect(d2.r == 2 && !d2.lambda.is_zero() && verify_ruling(d2), "<<a,b>> certificate");
    const auto start = Clock::now();
    const RulingDecomposition d3 = construct_ruling(p3);
    ch.expect(d3.r == 4 && !d3.lambda.is_zero() && verify_ruling(d3), "<<a,b,c>> certificate");
    const double t3 = seconds_since(start);
    ch.expect(t3 < 120, "3-fold runtime " + std::to_string(t3) + " s");

    const cli::Script script = cli::parse_script("field F2(a,b,c);\n"
                                                 "form p2 = <1, a, b, a*b>;\n"
                                                 "form p3 = <1, a, b, c, a*b, a*c, b*c, a*b*c>;\n"
                                                 "ruling p2;\nruling p3;\n");
    cli::RunOptions opts;
    opts.verify_certificates = true;
    const auto out = cli::run_script(script, opts);
    for (const auto &r : out.report["results"]) {
        ch.expect(r.value("ruled", false) && r.value("reverified", false), "re-verification through the runner");
    }
    ch.note("r = 2 and r = 4, 3-fold in " + std::to_string(t3) + " s");
    return ch.done();
}

Outcome criterion5()
{
    const Fixture f;
    Check ch;
    const auto mons = f.monomials();
    std::mt19937 rng(5005);
    std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
    std::size_t all_evaluated = 0;
    std::size_t regular = 0;
    std::size_t disagreements = 0;
    const std::size_t total = 120;
    for (std::size_t i = 0; i < total; ++i) {
        std::vector<TowerElement> coeffs;
        const std::size_t dim = 2 + i % 3;
        while (coeffs.size() < dim) {
            coeffs.push_back(mons[pick(rng)]);
        }
        const QuasilinearForm q = f.form(coeffs);
        try {
            const RegularityReport r = is_regular_quadric(q);
            if (r.differentials && r.generic_pattern) {
                ++all_evaluated;
            }
            regular += r.regular ? 1 : 0;
        } catch (const InconsistencyDetected &e) {
            ++disagreements;
            ch.expect(false, q.to_string() + ": " + e.what());
        }
    }
    ch.expect(all_evaluated == total, "only " + str(all_evaluated) + " forms had every condition evaluated");
    ch.note(str(total) + " forms, " + str(regular) + " regular, " + str(disagreements) + " disagreements");
    return ch.done();
}

Outcome criterion6()
{
    const Fixture f;
    Check ch;
    const auto mons = f.monomials();
    std::mt19937 rng(6006);
    std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
    std::uniform_int_distribution<int> coin(0, 2);
    std::size_t anisotropic = 0;
    std::size_t violations = 0;
    std::size_t kernel_mismatch = 0;
    std::size_t generated = 0;
    std::map<std::size_t, std::size_t> by_i1;
    while (anisotropic < 200) {
        ++generated;
        const std::size_t dim = 2 + generated % 5;
        std::vector<TowerElement> coeffs;
        while (coeffs.size() < dim) {
            TowerElement x = mons[pick(rng)];
            if (coin(rng) == 0) {
                x += mons[pick(rng)];
            }
            if (!x.is_zero()) {
                coeffs.push_back(x);
            }
        }
        const QuasilinearForm q = f.form(coeffs);
        if (!is_anisotropic(q)) {
            continue;
        }
        ++anisotropic;
        const std::size_t i1 = first_witt_index(q);
        ++by_i1[i1];
        if (i1 > hl_bound(q.dim()) || !check_hl_bound(q)) {
            ++violations;
            ch.expect(false, q.to_string() + " has i_1 = " + str(i1));
        }
        if (unique_self_map_check(q) != (i1 == 1)) {
            ++kernel_mismatch;
            ch.expect(false, q.to_string() + ": kernel dimension disagrees with i_1");
        }
    }
    std::string dist;
    for (const auto &[i1, n] : by_i1) {
        dist += (dist.empty() ? "" : " ") + str(i1) + ":" + str(n);
    }
    ch.note(str(anisotropic) + " anisotropic of " + str(generated) + " generated, " + str(violations) +
            " violations, i_1 counts " + dist);
    return ch.done();
}

Outcome criterion7()
{
    const Fixture f;
    Check ch;
    const std::vector<QuasilinearForm> forms{quasi_pfister({f.a, f.b}), quasi_pfister({f.a, f.b, f.c}),
                                             f.form({f.one, f.a, f.b, f.a * f.b, f.c})};
    std::string seen;
    for (const auto &q : forms) {
        const std::size_t i1 = first_witt_index(q);
        for (std::size_t j = 1; j <= 2; ++j) {
            const std::size_t got = first_witt_index(generic_subform(q, j));
            const std::size_t want = i1 > j + 1 ? i1 - j : 1;
            ch.expect(got == want, q.to_string() + ", j=" + str(j) + ": " + str(got) + " != " + str(want));
            seen += (seen.empty() ? "" : " ") + str(got);
        }
    }
    ch.note("indices " + seen);
    return ch.done();
}

Outcome criterion8()
{
    const Fixture f;
    Check ch;
    const QuasilinearForm x = quasi_pfister({f.a, f.b});
    const std::size_t r = first_witt_index(x);
    ch.expect(r == 2, "i_1(X) != 2");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i + (r - 1) < x.dim(); ++i) {
        keep.push_back(i);
    }
    const QuasilinearForm y = x.subform(keep);
    const TowerPtr kx = function_field(x).tower;
    const TowerPtr ky = function_field(y).tower;
    std::string seen;
    for (const auto &a : {x, y, f.form({f.one, f.a})}) {
        const std::size_t ix = total_index_over(a, kx);
        const std::size_t iy = total_index_over(a, ky);
        ch.expect(ix == iy, a.to_string() + ": " + str(ix) + " over k(X), " + str(iy) + " over k(Y)");
        seen += (seen.empty() ? "" : " ") + str(ix) + "/" + str(iy);
    }
    ch.note("indices " + seen);
    return ch.done();
}

Outcome criterion9()
{
    const Fixture f;
    Check ch;
    std::vector<QuasilinearForm> suite{f.form({f.one, f.a}),
                                       f.form({f.one, f.a, f.b}),
                                       quasi_pfister({f.a, f.b}),
                                       f.form({f.one, f.a, f.b, f.a * f.b, f.c}),
                                       f.form({f.one, f.a, f.c, f.a * f.c, f.b}),
                                       f.form({f.a, f.b, f.c}),
                                       f.form({f.one, f.b}),
                                       f.form({f.one, f.a, f.b, f.c})};
    const auto mons = f.monomials();
    std::mt19937 rng(9009);
    std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
    while (suite.size() < 20) {
        std::vector<TowerElement> coeffs;
        const std::size_t dim = 2 + suite.size() % 4;
        while (coeffs.size() < dim) {
            coeffs.push_back(mons[pick(rng)]);
        }
        const QuasilinearForm q = f.form(coeffs);
        if (is_anisotropic(q)) {
            suite.push_back(q);
        }
    }
    std::size_t applicable = 0;
    std::size_t inconsistencies = 0;
    for (const auto &x : suite) {
        for (const auto &y : suite) {
            try {
                const DominationReport d = essdim_domination_check(x, y);
                if (!d.y_isotropic_over_x) {
                    continue;
                }
                ++applicable;
                ch.expect(d.dim_es_x <= d.dim_es_y, x.to_string() + " vs " + y.to_string() + ": dim_es order");
                ch.expect((d.dim_es_x == d.dim_es_y) == d.x_isotropic_over_y,
                          x.to_string() + " vs " + y.to_string() + ": equality case");
            } catch (const InconsistencyDetected &e) {
                ++inconsistencies;
                ch.expect(false, e.what());
            }
        }
    }
    ch.note(str(suite.size() * suite.size()) + " ordered pairs, " + str(applicable) + " with Y isotropic over k(X), " +
            str(inconsistencies) + " inconsistencies");
    return ch.done();
}

Outcome criterion10()
{
    const Fixture f;
    Check ch;
    const auto start = Clock::now();
    const std::vector<TowerElement> all{f.a, f.b, f.c};
    for (std::size_t n = 1; n <= 3; ++n) {
        const QuasiPfisterForm p(f.k, std::vector<TowerElement>(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n)));
        const auto [tx, xs] = indeterminate_vector(f.k, "x", p.dim());
        const auto [txy, ys] = indeterminate_vector(tx, "y", p.dim());
        std::vector<TowerElement> xe;
        for (const auto &x : xs) {
            xe.push_back(x.embed(txy));
        }
        ch.expect(p.evaluate(albert_multiply(p, xe, ys)) == p.evaluate(xe) * p.evaluate(ys),
                  "identity fails for n=" + str(n));
    }
    const double t = seconds_since(start);
    ch.expect(t < 30, "runtime " + std::to_string(t) + " s");
    ch.note("n=1,2,3 symbolic in " + std::to_string(t) + " s");
    return ch.done();
}

// All isotropic vectors of q with polynomial entries of degree <= 3: the map
// x -> sum a_i x_i^2 is GF(2)-linear in the coefficients of the entries.
std::vector<std::vector<TowerElement>> oracle_isotropic_vectors(const QuasilinearForm &q,
                                                                const std::vector<TowerElement> &entries)
{
    const TowerPtr &t = q.field();
    struct Column {
        std::size_t slot;
        std::size_t entry;
        Poly image;
    };
    std::vector<Column> cols;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        for (std::size_t m = 0; m < entries.size(); ++m) {
            const TowerElement img = q.coeffs()[i] * entries[m].squared();
            cols.push_back({i, m, img.rational_part().num()});
        }
    }
    // Rows are monomials of the images.
    std::map<std::vector<Poly::Exponent>, std::size_t> row_of;
    std::vector<std::vector<std::size_t>> col_rows(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const Poly &p = cols[j].image;
        for (std::size_t term = 0; term < p.term_count(); ++term) {
            const auto e = p.term(term);
            const std::vector<Poly::Exponent> key(e.begin(), e.end());
            const auto it = row_of.emplace(key, row_of.size()).first;
            col_rows[j].push_back(it->second);
        }
    }
    const std::size_t rows = row_of.size();
    const std::size_t n = cols.size();
    // Reduced echelon form over GF(2) of the rows x columns matrix.
    std::vector<std::vector<bool>> mat(rows, std::vector<bool>(n, false));
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto r : col_rows[j]) {
            mat[r][j] = !mat[r][j];
        }
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t j = 0; j < n && rank < rows; ++j) {
        std::size_t p = rank;
        while (p < rows && !mat[p][j]) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(mat[p], mat[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != rank && mat[r][j]) {
                for (std::size_t c = 0; c < n; ++c) {
                    mat[r][c] = mat[r][c] != mat[rank][c];
                }
            }
        }
        pivot_col.push_back(j);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (const auto j : pivot_col) {
        is_pivot[j] = true;
    }
    std::vector<std::vector<TowerElement>> out;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<bool> sel(n, false);
        sel[free] = true;
        for (std::size_t r = 0; r < rank; ++r) {
            if (mat[r][free]) {
                sel[pivot_col[r]] = true;
            }
        }
        std::vector<TowerElement> v(q.dim(), TowerElement::zero(t));
        for (std::size_t j = 0; j < n; ++j) {
            if (sel[j]) {
                v[cols[j].slot] += entries[cols[j].entry];
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

Outcome criterion11()
{
    Check ch;
    const TowerPtr k = FieldTower::rational({"a", "b"});
    const TowerElement a = TowerElement::variable(k, "a");
    const TowerElement b = TowerElement::variable(k, "b");
    std::vector<TowerElement> coeff_monomials;
    std::vector<TowerElement> entries;
    for (int d = 0; d <= 3; ++d) {
        for (int ea = d; ea >= 0; --ea) {
            const TowerElement m = a.pow(ea) * b.pow(d - ea);
            entries.push_back(m);
            if (d <= 2) {
                coeff_monomials.push_back(m);
            }
        }
    }
    std::size_t forms = 0;
    std::size_t mismatches = 0;
    std::size_t isotropic = 0;
    // Every multiset of coefficients of size 1..4.
    std::function<void(std::vector<std::size_t> &, std::size_t)> visit = [&](std::vector<std::size_t> &chosen,
                                                                             std::size_t from) {
        if (!chosen.empty()) {
            std::vector<TowerElement> coeffs;
            for (const auto i : chosen) {
                coeffs.push_back(coeff_monomials[i]);
            }
            const QuasilinearForm q(k, coeffs);
            ++forms;
            const std::size_t it = total_index(q);
            const auto found = oracle_isotropic_vectors(q, entries);
            bool ok = true;
            for (const auto &v : found) {
                ok = ok && q.evaluate(v).is_zero();
            }
            const std::size_t oracle = found.empty() ? 0 : k_rank(found, k);
            ok = ok && oracle == it;
            isotropic += it > 0 ? 1 : 0;
            if (!ok) {
                ++mismatches;
                ch.expect(false, q.to_string() + ": rank method " + str(it) + ", oracle " + str(oracle));
            }
        }
        if (chosen.size() == 4) {
            return;
        }
        for (std::size_t i = from; i < coeff_monomials.size(); ++i) {
            chosen.push_back(i);
            visit(chosen, i);
            chosen.pop_back();
        }
    };
    std::vector<std::size_t> chosen;
    visit(chosen, 0);
    ch.note(str(forms) + " forms, " + str(isotropic) + " isotropic, " + str(mismatches) + " mismatches");
    return ch.done();
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, Outcome (*)()>> criteria{
        {"five-dimensional pair: not similar, birational", criterion1},
        {"generic forms <t1..tn>, n = 2..5", criterion2},
        {"regularity counterexample <1,a,b,ab,c>", criterion3},
        {"ruling certificates for <<a,b>> and <<a,b,c>>", criterion4},
        {"regularity conditions agree", criterion5},
        {"Hoffmann-Laghribi bound", criterion6},
        {"first Witt index of generic subforms", criterion7},
        {"total index over k(X) and k(Y)", criterion8},
        {"essential dimension versus isotropy", criterion9},
        {"Albert multiplicativity", criterion10},
        {"rank method versus brute-force oracle", criterion11},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu: %s [%s] (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), seconds_since(start));
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
