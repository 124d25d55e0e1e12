#include "quasiform/report.hpp"

#include "quasiform/birational.hpp"

#include <functional>

namespace qf::cli
{

using nlohmann::ordered_json;

namespace
{

ordered_json strings(const std::vector<TowerElement> &v)
{
    ordered_json out = ordered_json::array();
    for (const auto &e : v) {
        out.push_back(e.to_string());
    }
    return out;
}

ordered_json string_rows(const std::vector<std::vector<TowerElement>> &rows)
{
    ordered_json out = ordered_json::array();
    for (const auto &r : rows) {
        out.push_back(strings(r));
    }
    return out;
}

std::string pfister_string(const QuasiPfisterForm &p)
{
    std::string s = "<<";
    for (std::size_t i = 0; i < p.slots().size(); ++i) {
        s += (i ? ", " : "") + p.slots()[i].to_string();
    }
    return s + ">>";
}

void check_deadline(const RunOptions &options)
{
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
        throw Timeout("time limit exceeded");
    }
}

} // namespace

ordered_json invariants_report(const QuasilinearForm &q)
{
    ordered_json j;
    const FormInvariants inv = invariants(q);
    j["dim"] = inv.dim;
    j["i_t"] = inv.total_index;
    j["anisotropic_dim"] = inv.anisotropic_dim;
    j["splitting_pattern"] = splitting_pattern(q).dims;
    if (inv.total_index == 0 && q.dim() >= 2) {
        const std::size_t i1 = first_witt_index(q);
        j["i_1"] = i1;
        j["dim_es"] = essential_dimension(q.dim(), i1);
        j["hl_bound_holds"] = i1 <= hl_bound(q.dim());
    } else {
        j["i_1"] = nullptr;
        j["dim_es"] = nullptr;
        j["hl_bound_holds"] = nullptr;
    }
    j["norm_degree"] = norm_degree(q);
    if (inv.total_index == 0) {
        const auto nb = is_quasi_pfister_neighbor(q);
        j["quasi_pfister_neighbor"] = nb ? ordered_json(pfister_string(*nb)) : ordered_json(nullptr);
    } else {
        j["quasi_pfister_neighbor"] = nullptr;
    }
    return j;
}

ordered_json compare_report(const QuasilinearForm &q, const QuasilinearForm &r)
{
    ordered_json j;
    j["isometric"] = is_isometric(q, r);
    const bool anisotropic = is_anisotropic(q) && is_anisotropic(r);
    if (anisotropic && q.dim() == r.dim()) {
        const auto f = decide_similar(q, r);
        j["similar"] = f.has_value();
        j["similarity_factor"] = f ? ordered_json(f->to_string()) : ordered_json(nullptr);
    } else {
        j["similar"] = anisotropic ? ordered_json(false) : ordered_json(nullptr);
        j["similarity_factor"] = nullptr;
    }
    if (anisotropic && q.dim() >= 2 && r.dim() >= 2) {
        const DominationReport d = essdim_domination_check(q, r);
        j["stably_equivalent"] = d.x_isotropic_over_y && d.y_isotropic_over_x;
        j["birational"] = d.x_isotropic_over_y && d.y_isotropic_over_x && q.dim() == r.dim();
        j["dim_es"] = {d.dim_es_x, d.dim_es_y};
        j["domination"] = to_string(d.verdict);
    } else {
        j["stably_equivalent"] = nullptr;
        j["birational"] = nullptr;
        j["dim_es"] = nullptr;
        j["domination"] = nullptr;
    }
    return j;
}

ordered_json ruling_report(const QuasilinearForm &q, bool verify_certificates)
{
    ordered_json j;
    try {
        const RulingDecomposition d = construct_ruling(q);
        j["ruled"] = true;
        j["r"] = d.r;
        j["Y"] = d.Y.to_string();
        j["function_field_X"] = d.x_field.tower->describe();
        j["function_field_Y"] = d.y_field.tower->describe();
        j["s_basis"] = string_rows(d.s_basis);
        j["pi"] = strings(d.pi.coords());
        j["fibers"] = strings(d.fibers);
        j["lambda"] = d.lambda.to_string();
        j["certificate_verified"] = true;
        if (verify_certificates) {
            if (!verify_ruling(d)) {
                throw InconsistencyDetected("ruling certificate failed re-verification for " + q.to_string());
            }
            j["reverified"] = true;
        }
    } catch (const NotRuled &) {
        j["ruled"] = false;
        j["unique_self_map"] = unique_self_map_check(q);
    }
    return j;
}

ordered_json regular_report(const QuasilinearForm &q)
{
    const RegularityReport r = is_regular_quadric(q);
    ordered_json j;
    j["regular"] = r.regular;
    ordered_json c;
    c["differentials"] = r.differentials ? ordered_json(*r.differentials) : ordered_json(nullptr);
    c["pfister_anisotropic"] = r.pfister_anisotropic;
    c["generic_splitting_pattern"] = r.generic_pattern ? ordered_json(*r.generic_pattern) : ordered_json(nullptr);
    j["conditions"] = c;
    return j;
}

ordered_json splitting_report(const QuasilinearForm &q)
{
    ordered_json j;
    j["anisotropic_part"] = anisotropic_part(q).to_string();
    j["splitting_pattern"] = splitting_pattern(q).dims;
    return j;
}

namespace
{

struct CorpusCase {
    std::string name;
    ordered_json expected;
    std::function<ordered_json()> actual;
};

std::vector<CorpusCase> corpus_cases(bool verify)
{
    const TowerPtr k = FieldTower::rational({"a", "b", "c"});
    const TowerElement a = TowerElement::variable(k, "a");
    const TowerElement b = TowerElement::variable(k, "b");
    const TowerElement c = TowerElement::variable(k, "c");
    const TowerElement one = TowerElement::one(k);
    const QuasilinearForm q1(k, {one, a, b, a * b, c});
    const QuasilinearForm q2(k, {one, a, c, a * c, b});
    const QuasilinearForm p2(k, {one, a, b, a * b});
    const QuasilinearForm n3(k, {one, a, b});
    const TowerPtr kt = FieldTower::rational({"t1", "t2", "t3"});
    const QuasilinearForm t3(kt, {TowerElement::variable(kt, "t1"), TowerElement::variable(kt, "t2"),
                                  TowerElement::variable(kt, "t3")});

    std::vector<CorpusCase> cases;
    cases.push_back({"neighbors of <<a,b,c>> are not similar", false,
                     [=] { return ordered_json(decide_similar(q1, q2).has_value()); }});
    cases.push_back({"neighbors of <<a,b,c>> are birational", true, [=] { return ordered_json(decide_birational(q1, q2)); }});
    cases.push_back({"<1,a,b,ab,c> is not regular", false, [=] { return ordered_json(is_regular_quadric(q1).regular); }});
    cases.push_back({"<1,a,b,c> is regular", true,
                     [=] { return ordered_json(is_regular_quadric(QuasilinearForm(k, {one, a, b, c})).regular); }});
    cases.push_back({"<1,a,b,ab,c> has first Witt index 1", 1, [=] { return ordered_json(first_witt_index(q1)); }});
    cases.push_back({"<1,a,b,ab,c> is not ruled", false, [=] { return ruling_report(q1, verify)["ruled"]; }});
    cases.push_back({"<<a,b>> is ruled", true, [=] { return ruling_report(p2, verify)["ruled"]; }});
    cases.push_back({"<t1,t2,t3> splitting pattern", ordered_json::array({3, 2, 1}),
                     [=] { return ordered_json(splitting_pattern(t3).dims); }});
    cases.push_back({"<t1,t2,t3> has a unique self-map", true, [=] { return ordered_json(unique_self_map_check(t3)); }});
    cases.push_back({"<<a,b>> splitting pattern", ordered_json::array({4, 2, 1}),
                     [=] { return ordered_json(splitting_pattern(p2).dims); }});
    cases.push_back({"<<a,b>> essential dimension", 1, [=] { return ordered_json(essential_dimension(p2)); }});
    cases.push_back({"<1,a,b> and <<a,b>> are stably equivalent", true,
                     [=] { return ordered_json(decide_stably_equivalent(n3, p2)); }});
    cases.push_back({"<<a,b,c>> expansion", "<1, a, b, c, a*b, a*c, b*c, a*b*c>",
                     [=] { return ordered_json(quasi_pfister({a, b, c}).to_string()); }});
    cases.push_back({"<1,a,b,ab,c> norm degree", 8, [=] { return ordered_json(norm_degree(q1)); }});
    cases.push_back({"<1,a,b,ab,c> is a neighbor of <<a,b,c>>", "<<a, b, c>>", [=] {
                         const auto nb = is_quasi_pfister_neighbor(q1);
                         return nb ? ordered_json(pfister_string(*nb)) : ordered_json(nullptr);
                     }});
    cases.push_back({"<1,a,b,c> is not a quasi-Pfister neighbor", nullptr, [=] {
                         const auto nb = is_quasi_pfister_neighbor(QuasilinearForm(k, {one, a, b, c}));
                         return nb ? ordered_json(pfister_string(*nb)) : ordered_json(nullptr);
                     }});
    cases.push_back({"<<a,b>> neighbor ruling onto <1,a,b,ab,c>", true, [=] {
                         const NeighborRuling r = special_neighbor_ruling(QuasiPfisterForm(k, {a, b}), {0, 1}, {one, c});
                         const auto m = neighbor_ruling_map(r);
                         return ordered_json(r.verify_identity() && m.has_value() && m->verify());
                     }});
    return cases;
}

} // namespace

ordered_json run_corpus(const RunOptions &options, bool &all_passed)
{
    ordered_json out = ordered_json::array();
    all_passed = true;
    for (const auto &cs : corpus_cases(options.verify_certificates)) {
        check_deadline(options);
        const auto start = std::chrono::steady_clock::now();
        const ordered_json actual = cs.actual();
        ordered_json j;
        j["case"] = cs.name;
        j["expected"] = cs.expected;
        j["actual"] = actual;
        j["pass"] = actual == cs.expected;
        if (options.timings) {
            j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        all_passed = all_passed && actual == cs.expected;
        out.push_back(std::move(j));
    }
    return out;
}

RunOutcome run_script(const Script &script, const RunOptions &options)
{
    RunOutcome outcome;
    ordered_json &rep = outcome.report;
    rep["version"] = report_version;
    rep["field"] = script.field ? ordered_json(script.field->describe()) : ordered_json(nullptr);
    ordered_json forms = ordered_json::array();
    for (const auto &f : script.forms) {
        ordered_json j;
        j["name"] = f.name;
        j["coefficients"] = strings(f.form.coeffs());
        forms.push_back(std::move(j));
    }
    rep["forms"] = forms;
    ordered_json results = ordered_json::array();
    for (const auto &cmd : script.commands) {
        check_deadline(options);
        const auto start = std::chrono::steady_clock::now();
        ordered_json j;
        j["command"] = to_string(cmd.kind);
        auto form = [&](std::size_t i) -> const QuasilinearForm & { return script.find_form(cmd.forms.at(i))->form; };
        ordered_json body;
        switch (cmd.kind) {
        case CommandKind::invariants:
            j["form"] = cmd.forms[0];
            body = invariants_report(form(0));
            break;
        case CommandKind::compare:
            j["forms"] = cmd.forms;
            body = compare_report(form(0), form(1));
            break;
        case CommandKind::ruling:
            j["form"] = cmd.forms[0];
            body = ruling_report(form(0), options.verify_certificates);
            break;
        case CommandKind::regular:
            j["form"] = cmd.forms[0];
            body = regular_report(form(0));
            break;
        case CommandKind::splitting:
            j["form"] = cmd.forms[0];
            body = splitting_report(form(0));
            break;
        case CommandKind::corpus: {
            bool passed = true;
            body["cases"] = run_corpus(options, passed);
            body["all_passed"] = passed;
            outcome.assertions_passed = outcome.assertions_passed && passed;
            break;
        }
        }
        j.update(body);
        if (options.timings) {
            j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        results.push_back(std::move(j));
    }
    rep["results"] = results;
    return outcome;
}

int exit_code_for(const Error &e) noexcept
{
    switch (error_class(e.code())) {
    case ErrorClass::input:
        return 2;
    case ErrorClass::resource:
        return 3;
    default:
        return 1;
    }
}

} // namespace qf::cli
