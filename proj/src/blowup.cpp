#include "qfs/blowup.hpp"

#include "qfs/error.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace qfs {

namespace {

const std::regex& exceptional_name() {
    static const std::regex re("E[0-9]+");
    return re;
}

}  // namespace

GermState GermState::from_branches(std::vector<GermCurve> branches,
                                   const std::vector<std::tuple<std::string, std::string, long>>& intersections) {
    GermState s;
    if (branches.empty()) throw Error("invalid-argument", "germ without branches");
    for (auto& b : branches) {
        if (std::regex_match(b.id, exceptional_name())) {
            throw Error("invalid-argument", "branch id '" + b.id + "' is reserved for exceptional curves");
        }
        for (const auto& c : s.curves_) {
            if (c.id == b.id) throw Error("duplicate-id", "branch '" + b.id + "' given twice");
        }
        if (b.coefficient <= 0 || b.coefficient >= 1) {
            throw Error("invalid-argument", "branch '" + b.id + "' coefficient outside (0,1)");
        }
        for (long m : b.multiplicities) {
            if (m < 1) throw Error("invalid-argument", "multiplicities must be positive");
        }
        b.exceptional = false;
        b.self_intersection = 0;
        s.curves_.push_back(std::move(b));
    }
    for (const auto& [a, b, mult] : intersections) {
        std::size_t i = s.index(a), j = s.index(b);
        if (i == j) throw Error("invalid-argument", "self-intersection given as a pair");
        long lower = s.curves_[i].multiplicity() * s.curves_[j].multiplicity();
        if (mult < lower) {
            throw Error("inconsistent-germ", "(" + a + "." + b + ") must be at least the product of multiplicities");
        }
        s.intersection_ref(i, j) = mult;
    }
    for (std::size_t i = 0; i < s.curves_.size(); ++i) {
        for (std::size_t j = i + 1; j < s.curves_.size(); ++j) {
            if (s.intersection_at(i, j) == 0) {
                throw Error("inconsistent-germ", "branches '" + s.curves_[i].id + "' and '" + s.curves_[j].id +
                                                     "' both pass through the focus but have no intersection");
            }
        }
    }
    std::vector<std::string> all;
    for (const auto& c : s.curves_) all.push_back(c.id);
    if (!s.point_is_snc(all)) s.focus_ = all;
    return s;
}

GermState GermState::from_json(const nlohmann::json& j) {
    std::vector<GermCurve> branches;
    std::vector<std::tuple<std::string, std::string, long>> pairs;
    try {
        for (const auto& b : j.at("branches")) {
            GermCurve c;
            c.id = b.at("id").get<std::string>();
            c.coefficient = Rational::parse(b.at("coeff").get<std::string>());
            if (b.contains("multiplicities")) c.multiplicities = b.at("multiplicities").get<std::vector<long>>();
            branches.push_back(std::move(c));
        }
        if (j.contains("intersections")) {
            for (const auto& e : j.at("intersections")) {
                pairs.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>(), e.at(2).get<long>());
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error("parse-error", std::string("malformed germ: ") + ex.what());
    }
    return from_branches(std::move(branches), pairs);
}

nlohmann::json GermState::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : curves_) {
        cs.push_back({{"id", c.id},
                      {"coeff", c.coefficient.str()},
                      {"multiplicities", c.multiplicities},
                      {"exceptional", c.exceptional},
                      {"self_int", c.self_intersection}});
    }
    nlohmann::json is = nlohmann::json::array();
    for (const auto& [key, v] : intersections_) {
        if (v > 0) is.push_back({curves_[key.first].id, curves_[key.second].id, v});
    }
    return {{"curves", cs}, {"intersections", is}, {"focus", focus_}, {"steps", steps()}};
}

std::size_t GermState::index(const std::string& id) const {
    for (std::size_t i = 0; i < curves_.size(); ++i) {
        if (curves_[i].id == id) return i;
    }
    throw Error("unknown-id", "unknown curve '" + id + "'");
}

const GermCurve& GermState::curve(const std::string& id) const { return curves_[index(id)]; }

long& GermState::intersection_ref(std::size_t a, std::size_t b) { return intersections_[std::minmax(a, b)]; }

long GermState::intersection_at(std::size_t a, std::size_t b) const {
    auto it = intersections_.find(std::minmax(a, b));
    return it == intersections_.end() ? 0 : it->second;
}

long GermState::local_intersection(const std::string& a, const std::string& b) const {
    return intersection_at(index(a), index(b));
}

std::vector<std::vector<std::string>> GermState::points() const {
    std::set<std::vector<std::size_t>> found;
    for (const auto& [key, v] : intersections_) {
        if (v <= 0) continue;
        std::vector<std::size_t> p{key.first, key.second};
        for (std::size_t c = 0; c < curves_.size(); ++c) {
            if (c == key.first || c == key.second) continue;
            if (intersection_at(c, key.first) > 0 && intersection_at(c, key.second) > 0) p.push_back(c);
        }
        std::sort(p.begin(), p.end());
        found.insert(p);
    }
    for (std::size_t c = 0; c < curves_.size(); ++c) {
        if (curves_[c].multiplicity() < 2) continue;
        bool alone = true;
        for (std::size_t d = 0; d < curves_.size() && alone; ++d) {
            if (d != c && intersection_at(c, d) > 0) alone = false;
        }
        if (alone) found.insert({c});
    }
    std::vector<std::vector<std::string>> out;
    for (const auto& p : found) {
        std::vector<std::string> ids;
        for (auto i : p) ids.push_back(curves_[i].id);
        out.push_back(std::move(ids));
    }
    return out;
}

bool GermState::point_is_snc(const std::vector<std::string>& point) const {
    if (point.size() > 2) return false;
    for (const auto& id : point) {
        if (curve(id).multiplicity() > 1) return false;
    }
    return point.size() < 2 || local_intersection(point[0], point[1]) == 1;
}

void GermState::choose_focus() {
    focus_.clear();
    for (auto& p : points()) {
        if (!point_is_snc(p)) {
            focus_ = std::move(p);
            return;
        }
    }
}

Rational GermState::next_coefficient() const {
    if (focus_.empty()) throw Error("nothing-to-blow-up", "nothing to blow up: configuration is log smooth");
    Rational s(-1);
    for (const auto& id : focus_) {
        const auto& c = curve(id);
        s += c.coefficient * Rational(c.multiplicity());
    }
    return s;
}

long GermState::intersection_budget() const {
    long b = 0;
    for (const auto& [key, v] : intersections_) b += v;
    for (const auto& c : curves_) {
        for (long m : c.multiplicities) {
            if (m > 1) b += m * m;
        }
    }
    return b;
}

DualGraph GermState::graph() const {
    DualGraph g;
    for (const auto& c : curves_) {
        g.add_vertex(Vertex{c.id, c.self_intersection, 0, c.coefficient, c.exceptional});
    }
    for (const auto& [key, v] : intersections_) {
        if (v > 0) g.set_edge(curves_[key.first].id, curves_[key.second].id, v);
    }
    return g;
}

GermState blowup_step(const GermState& s) {
    GermState t = s;
    Rational e = s.next_coefficient();

    std::vector<std::size_t> at;
    for (const auto& id : s.focus_) at.push_back(s.index(id));
    std::vector<long> mult;
    for (auto i : at) mult.push_back(s.curves_[i].multiplicity());

    for (std::size_t x = 0; x < at.size(); ++x) {
        for (std::size_t y = x + 1; y < at.size(); ++y) {
            long& v = t.intersection_ref(at[x], at[y]);
            v -= mult[x] * mult[y];
            if (v < 0) throw Error("inconsistent-germ", "local intersection became negative");
        }
    }

    GermCurve ex;
    ex.id = "E" + std::to_string(s.history_.size() + 1);
    ex.coefficient = e;
    ex.exceptional = true;
    ex.self_intersection = -1;
    t.curves_.push_back(ex);
    std::size_t ei = t.curves_.size() - 1;

    for (std::size_t x = 0; x < at.size(); ++x) {
        auto& c = t.curves_[at[x]];
        c.self_intersection -= mult[x] * mult[x];
        if (!c.multiplicities.empty()) c.multiplicities.erase(c.multiplicities.begin());
        t.intersection_ref(at[x], ei) = mult[x];
    }
    for (std::size_t x = 0; x < at.size(); ++x) {
        for (std::size_t y = x + 1; y < at.size(); ++y) {
            long v = t.intersection_at(at[x], at[y]);
            if (v > 0 && v < t.curves_[at[x]].multiplicity() * t.curves_[at[y]].multiplicity()) {
                throw Error("inconsistent-germ", "multiplicity sequences contradict the intersection numbers");
            }
        }
    }
    t.history_.push_back(ex.id);
    t.choose_focus();
    return t;
}

std::string to_string(OutcomeKind k) {
    return k == OutcomeKind::EffectiveLogResolution ? "EffectiveLogResolution" : "SpecialPoint";
}

nlohmann::json to_json(const ResolutionOutcome& r) {
    nlohmann::json j = {{"kind", to_string(r.kind)}, {"steps", r.steps}, {"graph", r.graph.to_json()}};
    if (r.kind == OutcomeKind::SpecialPoint) {
        j["n"] = r.n;
        j["type"] = 2 * r.n + 1;
    }
    return j;
}

namespace {

bool is_cusp_special(const GermState& s) {
    int inputs = 0;
    for (const auto& c : s.curves()) {
        if (!c.exceptional) ++inputs;
    }
    if (inputs != 1 || s.focus().size() != 2) return false;
    const auto& a = s.curve(s.focus()[0]);
    const auto& b = s.curve(s.focus()[1]);
    const GermCurve& c = a.exceptional ? b : a;
    const GermCurve& e = a.exceptional ? a : b;
    return !c.exceptional && e.exceptional && c.coefficient == Rational(1, 2) && e.coefficient == 0 &&
           c.multiplicity() == 1 && s.local_intersection(c.id, e.id) == 2;
}

void check_standard_input(const GermState& s) {
    for (const auto& c : s.curves()) {
        if (!c.exceptional && !is_standard(c.coefficient)) {
            throw Error("invalid-argument", "branch '" + c.id + "' has a non-standard coefficient");
        }
    }
}

}  // namespace

ResolutionOutcome resolve(const GermState& input, int max_steps) {
    check_standard_input(input);
    if (input.log_smooth()) throw Error("nothing-to-blow-up", "nothing to blow up: configuration is log smooth");
    GermState s = input;
    while (!s.log_smooth()) {
        if (s.steps() >= max_steps) throw Error("budget-exceeded", "no termination within budget");
        Rational e = s.next_coefficient();
        if (e >= 1) throw Error("klt-violated", "klt violated: multiplicity of the boundary at a centre is " + (e + 1).pretty());
        if (e < 0) {
            if (!is_cusp_special(s)) {
                throw Error("non-effective", "blowup would create a negative coefficient outside the cusp case");
            }
            ResolutionOutcome r;
            r.kind = OutcomeKind::SpecialPoint;
            r.graph = s.graph();
            r.n = s.steps();
            r.steps = s.steps();
            return r;
        }
        s = blowup_step(s);
    }
    ResolutionOutcome r;
    r.kind = OutcomeKind::EffectiveLogResolution;
    r.graph = s.graph();
    r.steps = s.steps();
    return r;
}

GermState log_resolution(const GermState& input, int max_steps) {
    GermState s = input;
    while (!s.log_smooth()) {
        if (s.steps() >= max_steps) throw Error("budget-exceeded", "no termination within budget");
        s = blowup_step(s);
    }
    return s;
}

GermState cusp_germ(long n, const Rational& coefficient) {
    if (n < 1) throw Error("invalid-argument", "cusp germ needs n >= 1");
    GermCurve c;
    c.id = "C";
    c.coefficient = coefficient;
    c.multiplicities.assign(static_cast<std::size_t>(n), 2);
    return GermState::from_branches({c}, {});
}

DualGraph cusp_special_graph(long n) {
    GermState g = cusp_germ(n);
    ResolutionOutcome r = resolve(g, static_cast<int>(g.intersection_budget()));
    if (r.kind != OutcomeKind::SpecialPoint || r.n != n) {
        throw Error("internal", "cusp germ did not stop at a special point");
    }
    return r.graph;
}

DualGraph cusp_log_resolution(long n) {
    GermState g = cusp_germ(n);
    return log_resolution(g, static_cast<int>(g.intersection_budget())).graph();
}

}  // namespace qfs
