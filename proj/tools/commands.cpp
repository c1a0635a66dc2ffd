#include "commands.hpp"

#include "qfs/acc.hpp"
#include "qfs/battery.hpp"
#include "qfs/blowup.hpp"
#include "qfs/delpezzo.hpp"
#include "qfs/dual_graph.hpp"
#include "qfs/error.hpp"
#include "qfs/ledger.hpp"
#include "qfs/orbifold_cone.hpp"
#include "qfs/polynomial.hpp"
#include "qfs/witt.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#ifndef QFS_FIXTURE_DIR
#define QFS_FIXTURE_DIR "fixtures"
#endif

namespace qfs::cli {

using nlohmann::json;

json CommandResult::to_json() const {
    json j = {{"status", status}, {"payload", payload}, {"citations", citations}};
    return j;
}

namespace {

// ---------------------------------------------------------------- parsing helpers

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& t : split(s)) out.push_back(Rational::parse(t));
    return out;
}

std::vector<long> parse_longs(const std::string& s) {
    std::vector<long> out;
    for (const auto& t : split(s)) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t, &used);
        } catch (const std::exception&) {
            throw Error("parse-error", "'" + t + "' is not an integer");
        }
        if (used != t.size()) throw Error("parse-error", "'" + t + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> rationals_json(const std::vector<Rational>& v) {
    std::vector<std::string> out;
    for (const auto& q : v) out.push_back(q.str());
    return out;
}

json read_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path);
        if (!in) throw Error("invalid-argument", "cannot read '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("parse-error", std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string fixture_dir() {
    if (const char* env = std::getenv("QFS_FIXTURES")) return env;
    return QFS_FIXTURE_DIR;
}

json case_json(const DelPezzoCase& c) {
    json j = {{"p", c.p}, {"coefficients", rationals_json(c.coefficients)}};
    if (!c.label.empty()) j["label"] = c.label;
    return j;
}

DelPezzoCase case_from_json(const json& j) {
    try {
        DelPezzoCase c;
        c.p = j.at("p").get<unsigned long>();
        for (const auto& a : j.at("coefficients")) c.coefficients.push_back(Rational::parse(a.get<std::string>()));
        if (j.contains("label")) c.label = j.at("label").get<std::string>();
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw Error("parse-error", std::string("bad case document: ") + e.what());
    }
}

struct CaseArgs {
    std::string label;
    unsigned long p = 0;
    std::string coeffs;
    std::string input;

    void attach(CLI::App* sub) {
        sub->add_option("--case", label, "shipped case i, ii, iii, iv or v");
        sub->add_option("--p", p, "characteristic");
        sub->add_option("--coeffs", coeffs, "four standard coefficients, e.g. 1/2,2/3,6/7,40/41");
        sub->add_option("--input", input, "case JSON file ('-' for stdin)");
    }

    DelPezzoCase resolve() const {
        int given = (!label.empty()) + (!input.empty()) + (p != 0 || !coeffs.empty());
        if (given != 1) throw Error("invalid-argument", "give exactly one of --case, --input or --p with --coeffs");
        if (!label.empty()) {
            known_case(label);  // rejects unknown labels before touching the filesystem
            return case_from_json(read_json(fixture_dir() + "/case_" + label + ".json"));
        }
        if (!input.empty()) {
            json j = read_json(input);
            return case_from_json(j.contains("case") ? j.at("case") : j);
        }
        if (p == 0 || coeffs.empty()) throw Error("invalid-argument", "--p and --coeffs go together");
        DelPezzoCase c;
        c.p = p;
        c.coefficients = parse_rationals(coeffs);
        c.validate();
        return c;
    }
};

json fact_json(const DimLedger& L, const FactKey& k) {
    const Fact& f = L.fact(k);
    std::vector<std::string> prem;
    for (const auto& x : f.premises) prem.push_back(x.str());
    return {{"fact", k.str()}, {"dim", f.dim.get_str()}, {"rule", f.rule}, {"premises", prem}};
}

json derivation_json(const DimLedger& L, const std::vector<FactKey>& goals) {
    json arr = json::array();
    std::set<FactKey> seen;
    for (const auto& g : goals) {
        if (!L.get(g)) continue;
        for (const auto& k : L.derivation(g)) {
            if (seen.insert(k).second) arr.push_back(fact_json(L, k));
        }
    }
    return arr;
}

void add_citations_from(const DimLedger& L, const std::vector<FactKey>& goals, std::vector<std::string>& out) {
    std::set<std::string> rules(out.begin(), out.end());
    for (const auto& g : goals) {
        if (!L.get(g)) continue;
        for (const auto& k : L.derivation(g)) rules.insert(L.fact(k).rule);
    }
    out.assign(rules.begin(), rules.end());
}

// ---------------------------------------------------------------- delpezzo

CommandResult cmd_verify(const DelPezzoCase& c) {
    CommandResult r;
    LdpReport rep = verify_ldp(c);
    json floors = json::object();
    for (unsigned long l = 0; l <= 3; ++l) floors[std::to_string(l)] = floor_p_degree(c, l).get_str();
    r.payload = {{"case", case_json(c)},
                 {"deg_K_plus_Delta", rep.deg_K_plus_Delta.str()},
                 {"ample", rep.ample},
                 {"floor_degree", floor_p_degree(c, 1).get_str()},
                 {"floor_degrees_by_l", floors},
                 {"reduced_components", c.reduced_components()}};
    r.citations = {"deg(K + Delta) = -3 + sum a_i", "deg floor(p^l D) = -3 p^l + sum floor(p^l a_i)"};
    std::ostringstream h;
    h << "p = " << c.p << ", deg(K+Delta) = " << rep.deg_K_plus_Delta.pretty() << (rep.ample ? " (anti-ample)" : "")
      << ", deg floor(pD) = " << floor_p_degree(c, 1).get_str() << "\n";
    r.human = h.str();
    return r;
}

CommandResult cmd_table1(const DelPezzoCase& c, int mmax, bool derivation) {
    CommandResult r;
    DimLedger L = ledger_run(c, mmax);
    auto entries = table1_entries(L, mmax);
    json rows = json::array();
    std::vector<FactKey> keys;
    bool all = true;
    std::ostringstream h;
    for (const auto& e : entries) {
        rows.push_back({{"fact", e.key.str()},
                        {"expected", e.expected.get_str()},
                        {"actual", e.actual ? json(e.actual->get_str()) : json(nullptr)},
                        {"ok", e.ok()}});
        keys.push_back(e.key);
        all = all && e.ok();
        h << (e.ok() ? "  ok   " : "  FAIL ") << e.key.str() << " = " << (e.actual ? e.actual->get_str() : "?")
          << " (expected " << e.expected.get_str() << ")\n";
    }
    r.payload = {{"case", case_json(c)}, {"mmax", mmax}, {"entries", rows}, {"all_ok", all},
                 {"facts_known", L.facts().size()}};
    if (derivation) {
        r.payload["derivations"] = derivation_json(L, keys);
        for (const auto& k : keys) {
            if (L.get(k)) h << L.explain(k);
        }
    }
    add_citations_from(L, keys, r.citations);
    if (!all) {
        r.status = "failed";
        r.exit_code = kCheckFailed;
    }
    r.human = h.str();
    return r;
}

CommandResult cmd_verdict(const DelPezzoCase& c, int mmax, bool derivation) {
    CommandResult r;
    DimLedger L = ledger_run(c, mmax);
    VerdictReport v = non_qfs_verdict(L, mmax);
    json chain = json::array();
    std::vector<FactKey> premises;
    std::ostringstream h;
    for (const auto& s : v.chain) {
        std::vector<std::string> prem;
        for (const auto& k : s.premises) {
            prem.push_back(k.str());
            premises.push_back(k);
        }
        chain.push_back({{"statement", s.statement}, {"rule", s.rule}, {"premises", prem}});
        r.citations.push_back(s.rule);
        h << "  " << s.statement << "\n      because " << s.rule << "\n";
    }
    r.payload = {{"case", case_json(c)},     {"mmax", mmax},        {"certified", v.certified},
                 {"inconclusive", v.inconclusive}, {"log_del_pezzo", verify_ldp(c).ample},
                 {"chain", chain},                {"missing", v.missing}};
    if (derivation) {
        r.payload["derivations"] = derivation_json(L, premises);
        std::set<FactKey> shown;
        for (const auto& k : premises) {
            if (shown.insert(k).second) h << L.explain(k);
        }
    }
    std::vector<std::string> facts_rules;
    add_citations_from(L, premises, facts_rules);
    r.citations.insert(r.citations.end(), facts_rules.begin(), facts_rules.end());
    if (v.certified) {
        h << "not m-quasi-F-split for every m <= " << mmax << "\n";
    } else {
        r.status = "inconclusive";
        r.exit_code = kCheckFailed;
        h << "inconclusive:";
        for (const auto& m : v.missing) h << " " << m << ";";
        h << "\n";
    }
    r.human = h.str();
    return r;
}

CommandResult cmd_search(unsigned long pmax, unsigned long mbound) {
    CommandResult r;
    auto hits = search_candidates(pmax, mbound);
    json arr = json::array();
    std::ostringstream h;
    for (const auto& s : hits) {
        DelPezzoCase c = s.as_case();
        arr.push_back({{"p", s.p}, {"m", s.m}, {"coefficients", rationals_json(c.coefficients)}, {"label", s.label}});
        h << "p = " << s.p << "  (" << s.m[0] << "," << s.m[1] << "," << s.m[2] << "," << s.m[3] << ")  " << s.label << "\n";
    }
    r.payload = {{"pmax", pmax}, {"mbound", mbound}, {"count", hits.size()}, {"hits", arr}};
    r.citations = {"sum 1/m_i > 1", "p - sum ceil(p/m_i) = -1"};
    r.human = h.str();
    return r;
}

// ---------------------------------------------------------------- acc

CommandResult cmd_acc_enumerate(const std::string& low, long den) {
    CommandResult r;
    AccResult a = curve_acc_enumerate(Rational::parse(low), den);
    json sols = json::array(), bad = json::array();
    for (const auto& s : a.solutions) sols.push_back(rationals_json(s));
    for (const auto& s : a.violations) bad.push_back(rationals_json(s));
    r.payload = {{"low", Rational::parse(low).str()}, {"grid_denominator", den}, {"values", rationals_json(a.values)},
                 {"solutions", sols}, {"violations", bad}, {"ok", a.ok()}};
    r.citations = {"sum of coefficients on P^1 equals 2"};
    std::ostringstream h;
    h << a.solutions.size() << " multisets sum to 2; " << a.violations.size() << " use a value in (" << low << ", 1)\n";
    r.human = h.str();
    if (!a.ok()) {
        r.status = "failed";
        r.exit_code = kCheckFailed;
    }
    return r;
}

CommandResult cmd_acc_vanishing(unsigned long p, const std::string& coeffs, unsigned long ell) {
    CommandResult r;
    auto cs = parse_rationals(coeffs);
    VanishingReport v = vanishing_42_check(cs, p, ell);
    r.payload = {{"p", p}, {"l", ell}, {"coefficients", rationals_json(cs)}, {"per_component_ok", v.per_component_ok},
                 {"p2_degree", v.p2_degree.get_str()}, {"h0_vanishes", v.p2_degree < 0}};
    r.citations = {"termwise floor bound 1 + floor(q(d-1)/d) <= 1 + q(d-1)/d - 1/d"};
    std::ostringstream h;
    h << "deg(K + Delta_red + floor(p^l D)) = " << v.p2_degree.get_str() << (v.all_ok() ? "" : "; termwise bound fails")
      << "\n";
    r.human = h.str();
    if (!v.all_ok()) {
        r.status = "failed";
        r.exit_code = kCheckFailed;
    }
    return r;
}

// ---------------------------------------------------------------- cusp / dual graphs

CommandResult cmd_cusp(long n, const std::string& input, const std::string& emit_graph, int max_steps) {
    CommandResult r;
    ResolutionOutcome out;
    if (!input.empty()) {
        GermState g = GermState::from_json(read_json(input));
        out = resolve(g, max_steps > 0 ? max_steps : static_cast<int>(g.intersection_budget()));
    } else {
        if (n < 1) throw Error("invalid-argument", "--n must be positive");
        GermState g = cusp_germ(n);
        out = resolve(g, max_steps > 0 ? max_steps : static_cast<int>(g.intersection_budget()));
    }
    r.payload = qfs::to_json(out);
    if (input.empty()) {
        DualGraph w = cusp_log_resolution(n);
        DiscrepancyResult d = solve_discrepancies(w);
        json coeffs = json::object();
        for (const auto& [id, c] : d.coefficients) coeffs[id] = c.str();
        std::vector<std::string> first;
        for (long i = 1; i <= n; ++i) first.push_back("E" + std::to_string(i));
        r.payload["log_resolution"] = w.to_json();
        r.payload["log_resolution_coefficients"] = coeffs;
        r.payload["det_E1_to_En"] = determinant(intersection_matrix(w, first)).get_str();
    }
    if (!emit_graph.empty()) {
        std::ofstream f(emit_graph);
        if (!f) throw Error("invalid-argument", "cannot write '" + emit_graph + "'");
        f << out.graph.to_json().dump(2) << "\n";
    }
    r.citations = {"blowup of a point: multiplicities, coefficients and intersections update"};
    std::ostringstream h;
    h << to_string(out.kind) << " after " << out.steps << " blowups";
    if (out.kind == OutcomeKind::SpecialPoint) h << ", n = " << out.n << ", type " << 2 * out.n + 1;
    h << "\n";
    r.human = h.str();
    return r;
}

DualGraph graph_input(const std::string& input) {
    if (input.empty()) throw Error("invalid-argument", "--input is required");
    return DualGraph::from_json(read_json(input));
}

// Exceptional curves E1..En in a chain, no boundary.
DualGraph chain_graph(const std::string& chain) {
    DualGraph g;
    std::vector<long> self = parse_longs(chain);
    for (std::size_t i = 0; i < self.size(); ++i) {
        g.add_vertex(Vertex{"E" + std::to_string(i + 1), self[i], 0, Rational(0), true});
        if (i > 0) g.set_edge("E" + std::to_string(i), "E" + std::to_string(i + 1), 1);
    }
    return g;
}

IntMatrix matrix_input(const std::string& chain, const std::string& input, const std::string& subset) {
    if (!chain.empty() && !input.empty()) throw Error("invalid-argument", "give either --chain or --input");
    if (!chain.empty()) return chain_matrix(parse_longs(chain));
    DualGraph g = graph_input(input);
    std::vector<std::string> ids = subset.empty() ? g.exceptional_ids() : split(subset);
    return intersection_matrix(g, ids);
}

json matrix_json(const IntMatrix& m) {
    json a = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& x : row) r.push_back(x.get_str());
        a.push_back(r);
    }
    return a;
}

// ---------------------------------------------------------------- cone

FractionalDivisorOnAn divisor_input(const std::string& coeffs, const std::string& input) {
    if (!input.empty()) {
        json j = read_json(input);
        try {
            std::vector<Rational> a;
            for (const auto& x : j.at("coefficients")) a.push_back(Rational::parse(x.get<std::string>()));
            return FractionalDivisorOnAn::from_coefficients(a);
        } catch (const json::exception& e) {
            throw Error("parse-error", std::string("bad divisor document: ") + e.what());
        }
    }
    if (coeffs.empty()) throw Error("invalid-argument", "give --coeffs or --input");
    return FractionalDivisorOnAn::from_coefficients(parse_rationals(coeffs));
}

// ---------------------------------------------------------------- witt

struct WittArgs {
    unsigned long p = 2;
    std::size_t n = 1;
    std::string a, b, degrees, relations;
    bool integers = false;
};

template <class R>
WittVec<typename R::Element> witt_vec(const WittRing<R>& W, const std::vector<typename R::Element>& e) {
    return W.make(e);
}

std::vector<std::string> entries_of(const std::string& s, std::size_t n) {
    auto v = split(s);
    if (v.size() != n) throw Error("mismatched-parameters", "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    return v;
}

CommandResult cmd_witt(const std::string& op, const WittArgs& w) {
    CommandResult r;
    r.citations = {"universal Witt polynomials from the ghost equations"};
    std::ostringstream h;
    if (w.integers || op == "ghost") {
        WittRing<IntegerRing> W(IntegerRing{}, w.p, w.n);
        auto lift = [&](const std::string& s) {
            std::vector<BigInt> e;
            for (const auto& t : entries_of(s, w.n)) e.push_back(parse_bigint(t));
            return W.make(e);
        };
        auto A = lift(w.a);
        std::vector<std::string> out;
        if (op == "ghost") {
            for (const auto& g : W.ghost(A)) out.push_back(g.get_str());
            r.payload = {{"p", w.p}, {"n", w.n}, {"a", entries_of(w.a, w.n)}, {"ghost", out}};
        } else if (op == "add" || op == "mul") {
            auto B = lift(w.b);
            out = W.format(op == "add" ? W.add(A, B) : W.mul(A, B));
            r.payload = {{"p", w.p}, {"n", w.n}, {"ring", "Z"}, {"result", out}};
        } else {
            throw Error("invalid-argument", "Frobenius needs a ring of characteristic p; drop --integers");
        }
        for (const auto& s : out) h << s << " ";
        h << "\n";
        r.human = h.str();
        return r;
    }

    std::vector<std::string> texts = entries_of(w.a, w.n);
    if (!w.b.empty()) {
        auto more = entries_of(w.b, w.n);
        texts.insert(texts.end(), more.begin(), more.end());
    }
    std::vector<std::string> names;
    std::vector<Rational> degs;
    if (!w.degrees.empty()) {
        for (const auto& kv : split(w.degrees)) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error("parse-error", "degree '" + kv + "' is not name=value");
            names.push_back(kv.substr(0, eq));
            degs.push_back(Rational::parse(kv.substr(eq + 1)));
        }
    }
    for (const auto& v : scan_variables(texts)) {
        bool known = false;
        for (const auto& nm : names) known = known || nm == v;
        if (!known) {
            names.push_back(v);
            degs.emplace_back(1);
        }
    }
    std::vector<Monomial> rels;
    if (!w.relations.empty()) {
        for (const auto& rel : split(w.relations)) {
            FpPoly m = parse_fp_poly(rel, w.p, names);
            if (m.terms().size() != 1) throw Error("invalid-argument", "relation '" + rel + "' is not a monomial");
            rels.push_back(m.terms().begin()->first);
        }
    }
    GradedPolyRing R(w.p, names, degs, rels);
    WittRing<GradedPolyRing> W(R, w.p, w.n);
    auto parse_vec = [&](const std::string& s) {
        std::vector<FpPoly> e;
        for (const auto& t : entries_of(s, w.n)) e.push_back(R.parse(t));
        return W.make(e);
    };
    auto A = parse_vec(w.a);
    auto degree_json = [&](const WittVec<FpPoly>& v) -> json {
        auto d = homogeneous_degree(W, v);
        if (!d) return nullptr;
        if (d->any) return "any";
        return d->e.str();
    };
    WittVec<FpPoly> result;
    if (op == "add" || op == "mul") {
        auto B = parse_vec(w.b);
        result = op == "add" ? W.add(A, B) : W.mul(A, B);
    } else if (op == "frob") {
        result = W.frobenius(A);
    } else if (op == "grade") {
        r.payload = {{"p", w.p}, {"n", w.n}, {"a", W.format(A)}, {"degree", degree_json(A)}};
        h << "degree " << degree_json(A).dump() << "\n";
        r.human = h.str();
        return r;
    } else {
        throw Error("invalid-argument", "unknown witt operation '" + op + "'");
    }
    r.payload = {{"p", w.p}, {"n", w.n}, {"ring", "F_p[" + std::to_string(names.size()) + " vars]"},
                 {"result", W.format(result)}, {"degree", degree_json(result)}};
    for (const auto& s : W.format(result)) h << "(" << s << ") ";
    h << "\n";
    r.human = h.str();
    return r;
}

// ---------------------------------------------------------------- reproduce-paper

CommandResult cmd_reproduce() {
    CommandResult r;
    json arr = json::array();
    std::ostringstream h;
    bool all = true;
    for (const auto& c : run_battery()) {
        arr.push_back({{"criterion", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail},
                       {"seconds", c.seconds}});
        all = all && c.passed;
        h << (c.passed ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << c.detail << "\n";
    }
    r.payload = {{"criteria", arr}, {"all_passed", all}};
    r.citations = {"acceptance battery"};
    if (!all) {
        r.status = "failed";
        r.exit_code = kCheckFailed;
    }
    r.human = h.str();
    return r;
}

CommandResult error_result(const std::string& code, const std::string& message, int exit_code) {
    CommandResult r;
    r.status = "error";
    r.payload = {{"code", code}, {"message", message}};
    r.exit_code = exit_code;
    r.human = "error (" + code + "): " + message + "\n";
    return r;
}

// Help of the deepest subcommand that was parsed.
std::string help_for(CLI::App& app) {
    CLI::App* level = &app;
    while (!level->get_subcommands().empty()) level = level->get_subcommands().front();
    return level->help();
}

int exit_for(const std::string& code) {
    return code == "internal" || code == "contradiction" ? kInternal : kUsage;
}

}  // namespace

CommandResult dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Exact checks for quasi-F-splitting computations", "qfs"};
    app.require_subcommand(1);
    app.fallthrough();
    bool human = false;
    app.add_flag("--human", human, "plain-text output instead of JSON");

    std::function<CommandResult()> action;

    // delpezzo
    auto* dp = app.add_subcommand("delpezzo", "log del Pezzo pairs on four lines of P^2");
    dp->require_subcommand(1);
    CaseArgs verify_args, table_args, verdict_args;
    int table_mmax = 10, verdict_mmax = 10;
    bool table_deriv = false, verdict_deriv = false;
    auto* dp_verify = dp->add_subcommand("verify", "degree arithmetic");
    verify_args.attach(dp_verify);
    dp_verify->callback([&] { action = [&] { return cmd_verify(verify_args.resolve()); }; });
    auto* dp_table = dp->add_subcommand("table1", "derive the cohomology table");
    table_args.attach(dp_table);
    dp_table->add_option("--mmax", table_mmax, "largest level m")->check(CLI::Range(1, 200));
    dp_table->add_flag("--emit-derivation", table_deriv, "include the fact chains");
    dp_table->callback([&] { action = [&] { return cmd_table1(table_args.resolve(), table_mmax, table_deriv); }; });
    auto* dp_verdict = dp->add_subcommand("verdict", "certify non-quasi-F-splitting up to --mmax");
    verdict_args.attach(dp_verdict);
    dp_verdict->add_option("--mmax", verdict_mmax, "largest level m")->check(CLI::Range(1, 200));
    dp_verdict->add_flag("--emit-derivation", verdict_deriv, "include the fact chains");
    dp_verdict->callback(
        [&] { action = [&] { return cmd_verdict(verdict_args.resolve(), verdict_mmax, verdict_deriv); }; });
    unsigned long pmax = 41, mbound = 64;
    auto* dp_search = dp->add_subcommand("search", "enumerate candidate tuples");
    dp_search->add_option("--pmax", pmax)->check(CLI::PositiveNumber);
    dp_search->add_option("--mbound", mbound)->check(CLI::PositiveNumber);
    dp_search->callback([&] { action = [&] { return cmd_search(pmax, mbound); }; });

    // acc
    auto* acc = app.add_subcommand("acc", "coefficient ACC checks");
    acc->require_subcommand(1);
    std::string acc_low = "5/6";
    long acc_den = 42;
    auto* acc_enum = acc->add_subcommand("enumerate", "multisets summing to 2");
    acc_enum->add_option("--low", acc_low, "start of the extra interval");
    acc_enum->add_option("--den", acc_den, "grid denominator");
    acc_enum->callback([&] { action = [&] { return cmd_acc_enumerate(acc_low, acc_den); }; });
    unsigned long van_p = 43, van_l = 1;
    std::string van_coeffs;
    auto* acc_van = acc->add_subcommand("vanishing", "termwise bound and P^2 degree");
    acc_van->add_option("--p", van_p)->required();
    acc_van->add_option("--coeffs", van_coeffs)->required();
    acc_van->add_option("--l", van_l, "Frobenius power l");
    acc_van->callback([&] { action = [&] { return cmd_acc_vanishing(van_p, van_coeffs, van_l); }; });

    // cusp-resolve
    long cusp_n = 0;
    int cusp_steps = 0;
    std::string cusp_input, cusp_emit;
    auto* cusp = app.add_subcommand("cusp-resolve", "blow up a cusp germ with coefficient 1/2");
    cusp->add_option("--n", cusp_n, "number of blowups to the special point");
    cusp->add_option("--input", cusp_input, "germ JSON instead of --n");
    cusp->add_option("--emit-graph", cusp_emit, "write the dual graph here");
    cusp->add_option("--max-steps", cusp_steps, "blowup budget (default: intersection budget)");
    cusp->callback([&] { action = [&] { return cmd_cusp(cusp_n, cusp_input, cusp_emit, cusp_steps); }; });

    // dualgraph
    auto* dg = app.add_subcommand("dualgraph", "intersection calculus");
    dg->require_subcommand(1);
    std::string dg_chain, dg_input, dg_subset;
    auto matrix_opts = [&](CLI::App* s) {
        s->add_option("--chain", dg_chain, "self-intersections of a chain, e.g. -2,-2,-2");
        s->add_option("--input", dg_input, "graph JSON");
        s->add_option("--subset", dg_subset, "vertex ids (default: exceptional vertices)");
    };
    auto* dg_det = dg->add_subcommand("det", "determinant of the intersection matrix");
    matrix_opts(dg_det);
    dg_det->allow_extras(false);
    dg_det->callback([&] {
        action = [&] {
            CommandResult r;
            IntMatrix m = matrix_input(dg_chain, dg_input, dg_subset);
            BigInt d = determinant(m);
            r.payload = {{"matrix", matrix_json(m)}, {"det", d.get_str()}};
            r.citations = {"fraction-free determinant"};
            r.human = d.get_str() + "\n";
            return r;
        };
    });
    auto* dg_neg = dg->add_subcommand("negdef", "negative definiteness");
    matrix_opts(dg_neg);
    dg_neg->callback([&] {
        action = [&] {
            CommandResult r;
            IntMatrix m = matrix_input(dg_chain, dg_input, dg_subset);
            bool nd = is_negative_definite(m);
            r.payload = {{"matrix", matrix_json(m)}, {"negative_definite", nd}};
            r.citations = {"leading principal minors"};
            r.human = std::string(nd ? "negative definite" : "not negative definite") + "\n";
            return r;
        };
    });
    auto* dg_disc = dg->add_subcommand("discrepancy", "solve for the exceptional coefficients");
    dg_disc->add_option("--input", dg_input, "graph JSON")->required();
    dg_disc->callback([&] {
        action = [&] {
            CommandResult r;
            DualGraph g = graph_input(dg_input);
            DiscrepancyResult d = solve_discrepancies(g);
            json c = json::object();
            std::ostringstream h;
            for (const auto& [id, q] : d.coefficients) {
                c[id] = q.str();
                h << id << " " << q.pretty() << "\n";
            }
            r.payload = {{"coefficients", c}, {"klt", d.klt}, {"lc", d.lc}};
            r.citations = {"adjunction: (K + Delta) . E = 0 on exceptional curves"};
            r.human = h.str();
            return r;
        };
    });
    auto* dg_index = dg->add_subcommand("index", "Q-factorial index");
    dg_index->add_option("--chain", dg_chain, "self-intersections of an exceptional chain");
    dg_index->add_option("--input", dg_input, "graph JSON");
    dg_index->callback([&] {
        action = [&] {
            CommandResult r;
            QFactorialIndex q = q_factorial_index(dg_chain.empty() ? graph_input(dg_input) : chain_graph(dg_chain));
            r.payload = {{"det", q.det.get_str()}, {"index", q.index.get_str()},
                         {"different_coefficient", different_coefficient(q.index).str()}};
            r.citations = {"index = |det| of the intersection matrix"};
            r.human = q.index.get_str() + "\n";
            return r;
        };
    });

    // cone
    auto* cone = app.add_subcommand("cone", "orbifold cones and toric data");
    cone->require_subcommand(1);
    std::string cone_coeffs, cone_input, cone_pairs, cone_space = "P1";
    long cone_d = 0, cone_ell = 0, cone_a = 0, cone_b = 1, cone_q = 1, cone_dmax = 10, cone_int = 0;
    auto* cone_rays_cmd = cone->add_subcommand("rays", "rays of the cone over A^n");
    cone_rays_cmd->add_option("--coeffs", cone_coeffs, "fractional coefficients ell_i/d_i");
    cone_rays_cmd->add_option("--input", cone_input, "divisor JSON {\"coefficients\": [...]}");
    cone_rays_cmd->callback([&] {
        action = [&] {
            CommandResult r;
            ToricConeData t = cone_rays(divisor_input(cone_coeffs, cone_input));
            json rays = json::array();
            std::ostringstream h;
            for (const auto& u : t.rays) {
                json ray = json::array();
                for (const auto& x : u) {
                    ray.push_back(x.get_str());
                    h << x.get_str() << " ";
                }
                rays.push_back(ray);
                h << "\n";
            }
            r.payload = {{"rank", t.rank}, {"rays", rays}};
            r.citations = {"rays d_i e_i + ell_i e_{n+1} and e_{n+1}"};
            r.human = h.str();
            return r;
        };
    });
    auto* cone_idx = cone->add_subcommand("index", "Q-factorial index of the cone over (d, ell)");
    cone_idx->add_option("--d", cone_d)->required();
    cone_idx->add_option("--ell", cone_ell)->required();
    cone_idx->callback([&] {
        action = [&] {
            CommandResult r;
            long idx = q_factorial_index_toric(cone_d, cone_ell);
            r.payload = {{"d", cone_d}, {"ell", cone_ell}, {"index", idx}};
            r.citations = {"Cartier test d | a1 - ell a2"};
            r.human = std::to_string(idx) + "\n";
            return r;
        };
    });
    auto* cone_diff = cone->add_subcommand("different", "different along the zero section");
    cone_diff->add_option("--pairs", cone_pairs, "d:ell,d:ell,...")->required();
    cone_diff->callback([&] {
        action = [&] {
            CommandResult r;
            std::vector<std::pair<long, long>> pairs;
            for (const auto& t : split(cone_pairs)) {
                auto parts = parse_longs(std::string(t).replace(t.find(':') == std::string::npos ? t.size() : t.find(':'), 1, ","));
                if (parts.size() != 2) throw Error("parse-error", "pair '" + t + "' is not d:ell");
                pairs.emplace_back(parts[0], parts[1]);
            }
            auto diff = different(pairs);
            r.payload = {{"different", rationals_json(diff)}};
            r.citations = {"different coefficient (d-1)/d at an index-d point"};
            for (const auto& q : diff) r.human += q.pretty() + " ";
            r.human += "\n";
            return r;
        };
    });
    auto* cone_wit = cone->add_subcommand("witness", "decomposition d = d_1 + .. + d_q for reflexive powers");
    cone_wit->add_option("--a", cone_a)->required();
    cone_wit->add_option("--b", cone_b)->required();
    cone_wit->add_option("--q", cone_q)->required();
    cone_wit->add_option("--d", cone_d)->required();
    cone_wit->callback([&] {
        action = [&] {
            CommandResult r;
            auto parts = reflexive_power_witness(cone_a, cone_b, cone_q, cone_d);
            r.payload = {{"a", cone_a}, {"b", cone_b}, {"q", cone_q}, {"d", cone_d}, {"parts", parts},
                         {"identity_holds", reflexive_power_identity(cone_a, cone_b, cone_q, cone_d, parts)}};
            r.citations = {"congruence (b-1) + a y = 0 mod b"};
            for (long x : parts) r.human += std::to_string(x) + " ";
            r.human += "\n";
            return r;
        };
    });
    auto* cone_hilb = cone->add_subcommand("hilbert", "dimensions of the section ring");
    cone_hilb->add_option("--space", cone_space, "P1 or P2");
    cone_hilb->add_option("--coeffs", cone_coeffs, "coefficients of degree-1 components")->required();
    cone_hilb->add_option("--integral-degree", cone_int, "degree of the integral part");
    cone_hilb->add_option("--dmax", cone_dmax);
    cone_hilb->add_option("--q", cone_q, "also report the q-th canonical module (q >= 1)");
    cone_hilb->callback([&] {
        action = [&] {
            CommandResult r;
            ProjectiveQDivisor D;
            D.space = parse_space(cone_space);
            D.integral_degree = cone_int;
            for (const auto& a : parse_rationals(cone_coeffs)) D.components.push_back({1, a});
            std::vector<std::string> dims, canon;
            for (const auto& x : section_ring_dims(D, cone_dmax)) dims.push_back(x.get_str());
            for (const auto& x : canonical_module_dims(D, cone_q, 0, cone_dmax)) canon.push_back(x.get_str());
            r.payload = {{"space", to_string(D.space)}, {"section_ring", dims}, {"canonical_module_q", cone_q},
                         {"canonical_module", canon}};
            r.citations = {"h^0(O(floor(dD)))", "h^0(O(floor(q(K + D') + dD)))"};
            for (const auto& s : dims) r.human += s + " ";
            r.human += "\n";
            return r;
        };
    });

    // witt
    auto* witt = app.add_subcommand("witt", "truncated Witt vectors");
    witt->require_subcommand(1);
    WittArgs wa;
    std::string witt_op;
    for (const char* op : {"add", "mul", "frob", "ghost", "grade"}) {
        auto* s = witt->add_subcommand(op, std::string("witt ") + op);
        s->add_option("--p", wa.p)->required();
        s->add_option("--n", wa.n)->required();
        s->add_option("--a", wa.a, "entries, comma separated polynomials")->required();
        if (std::string(op) == "add" || std::string(op) == "mul") s->add_option("--b", wa.b)->required();
        if (std::string(op) != "ghost") {
            s->add_option("--degrees", wa.degrees, "generator degrees, e.g. x=1/2,t=1");
            s->add_option("--relations", wa.relations, "monomials set to zero, e.g. x^3*t^2");
        }
        if (std::string(op) == "add" || std::string(op) == "mul") s->add_flag("--integers", wa.integers, "work over Z");
        std::string name = op;
        s->callback([&, name] { action = [&, name] { return cmd_witt(name, wa); }; });
    }

    auto* rep = app.add_subcommand("reproduce-paper", "run the full acceptance battery");
    rep->callback([&] { action = [&] { return cmd_reproduce(); }; });

    // Name an unknown first or second word instead of reporting a missing subcommand.
    CLI::App* level = &app;
    for (std::size_t i = 0; i < args.size() && i < 2; ++i) {
        if (args[i].empty() || args[i][0] == '-' || level->get_subcommands({}).empty()) break;
        CLI::App* next = level->get_subcommand_no_throw(args[i]);
        if (next == nullptr) {
            std::string where = level == &app ? std::string() : " for '" + level->get_name() + "'";
            CommandResult bad = error_result("usage", "unknown subcommand '" + args[i] + "'" + where, kUsage);
            bad.human += level->help();
            bad.payload["human_requested"] = std::find(args.begin(), args.end(), "--human") != args.end();
            return bad;
        }
        level = next;
    }

    CommandResult result;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        result.status = "ok";
        result.human = help_for(app);
        result.payload = {{"help", result.human}, {"human_requested", true}};
        return result;
    } catch (const CLI::CallForAllHelp&) {
        result.human = app.help("", CLI::AppFormatMode::All);
        result.payload = {{"help", result.human}, {"human_requested", true}};
        return result;
    } catch (const CLI::ParseError& e) {
        result = error_result("usage", e.what(), kUsage);
        result.human += help_for(app);
        result.payload["human_requested"] = human;
        return result;
    }
    if (!action) return error_result("usage", "no command given", kUsage);
    try {
        result = action();
    } catch (const Error& e) {
        result = error_result(e.code(), e.what(), exit_for(e.code()));
    } catch (const std::exception& e) {
        result = error_result("internal", e.what(), kInternal);
    }
    result.payload["human_requested"] = human;
    return result;
}

int run(const std::vector<std::string>& args) {
    CommandResult r = dispatch(args);
    bool human = r.payload.is_object() && r.payload.value("human_requested", false);
    if (r.payload.is_object()) r.payload.erase("human_requested");
    if (human) {
        (r.exit_code == kOk ? std::cout : std::cerr) << r.human;
    } else {
        std::cout << r.to_json().dump(2) << "\n";
    }
    return r.exit_code;
}

}  // namespace qfs::cli
