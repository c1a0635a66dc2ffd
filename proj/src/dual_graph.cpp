#include "qfs/dual_graph.hpp"

#include "qfs/error.hpp"

namespace qfs {

void DualGraph::add_vertex(Vertex v) {
    if (contains(v.id)) throw Error("duplicate-id", "vertex '" + v.id + "' already present");
    if (v.genus < 0) throw Error("invalid-argument", "negative genus on '" + v.id + "'");
    vertices_.push_back(std::move(v));
}

std::optional<std::size_t> DualGraph::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].id == id) return i;
    }
    return std::nullopt;
}

std::size_t DualGraph::require(const std::string& id) const {
    auto i = index_of(id);
    if (!i) throw Error("unknown-id", "unknown vertex id '" + id + "'");
    return *i;
}

const Vertex& DualGraph::vertex(const std::string& id) const { return vertices_[require(id)]; }
Vertex& DualGraph::vertex(const std::string& id) { return vertices_[require(id)]; }

void DualGraph::set_edge(const std::string& a, const std::string& b, long mult) {
    std::size_t i = require(a), j = require(b);
    if (i == j) throw Error("invalid-argument", "self-edge on '" + a + "'");
    if (mult < 0) throw Error("invalid-argument", "negative edge multiplicity");
    auto key = std::minmax(i, j);
    if (mult == 0) {
        edges_.erase(key);
    } else {
        edges_[key] = mult;
    }
}

void DualGraph::add_edge(const std::string& a, const std::string& b, long mult) {
    set_edge(a, b, edge(a, b) + mult);
}

long DualGraph::edge(const std::string& a, const std::string& b) const {
    std::size_t i = require(a), j = require(b);
    if (i == j) return 0;
    auto it = edges_.find(std::minmax(i, j));
    return it == edges_.end() ? 0 : it->second;
}

std::vector<std::tuple<std::string, std::string, long>> DualGraph::edges() const {
    std::vector<std::tuple<std::string, std::string, long>> out;
    for (const auto& [key, mult] : edges_) {
        out.emplace_back(vertices_[key.first].id, vertices_[key.second].id, mult);
    }
    return out;
}

std::vector<std::string> DualGraph::exceptional_ids() const {
    std::vector<std::string> out;
    for (const auto& v : vertices_) {
        if (v.exceptional) out.push_back(v.id);
    }
    return out;
}

nlohmann::json DualGraph::to_json() const {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : vertices_) {
        vs.push_back({{"id", v.id},
                      {"self_int", v.self_intersection},
                      {"genus", v.genus},
                      {"coeff", v.coefficient.str()},
                      {"exceptional", v.exceptional}});
    }
    nlohmann::json es = nlohmann::json::array();
    for (const auto& [a, b, mult] : edges()) es.push_back({a, b, mult});
    return {{"vertices", vs}, {"edges", es}};
}

DualGraph DualGraph::from_json(const nlohmann::json& j) {
    DualGraph g;
    try {
        for (const auto& v : j.at("vertices")) {
            Vertex x;
            x.id = v.at("id").get<std::string>();
            x.self_intersection = v.at("self_int").get<long>();
            x.genus = v.value("genus", 0);
            if (v.contains("coeff")) {
                const auto& c = v.at("coeff");
                x.coefficient = c.is_string() ? Rational::parse(c.get<std::string>()) : Rational(c.get<long>());
            }
            x.exceptional = v.value("exceptional", false);
            g.add_vertex(std::move(x));
        }
        if (j.contains("edges")) {
            for (const auto& e : j.at("edges")) {
                g.add_edge(e.at(0).get<std::string>(), e.at(1).get<std::string>(), e.at(2).get<long>());
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error("parse-error", std::string("malformed dual graph: ") + ex.what());
    }
    return g;
}

IntMatrix intersection_matrix(const DualGraph& g, const std::vector<std::string>& subset) {
    IntMatrix m(subset.size(), std::vector<BigInt>(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i) {
        m[i][i] = g.vertex(subset[i]).self_intersection;
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
            m[i][j] = m[j][i] = g.edge(subset[i], subset[j]);
        }
    }
    return m;
}

IntMatrix chain_matrix(const std::vector<long>& self_intersections) {
    std::size_t n = self_intersections.size();
    IntMatrix m(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = self_intersections[i];
        if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = 1;
    }
    return m;
}

BigInt determinant(const IntMatrix& input) {
    std::size_t n = input.size();
    for (const auto& row : input) {
        if (row.size() != n) throw Error("invalid-argument", "determinant of a non-square matrix");
    }
    if (n == 0) return 1;
    IntMatrix a = input;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

bool is_negative_definite(const IntMatrix& m) {
    std::size_t n = m.size();
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix minor(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = -m[i][j];
        }
        if (determinant(minor) <= 0) return false;
    }
    return true;
}

namespace {

// K.E = -E^2 - 2 + 2g by adjunction.
Rational canonical_degree(const Vertex& v) { return Rational(-v.self_intersection - 2 + 2L * v.genus); }

Rational boundary_degree(const DualGraph& g, const std::string& on) {
    Rational s;
    for (const auto& v : g.vertices()) {
        if (v.exceptional || v.id == on || v.coefficient == 0) continue;
        s += v.coefficient * Rational(g.edge(v.id, on));
    }
    return s;
}

std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) throw Error("degenerate-configuration", "degenerate configuration: singular intersection matrix");
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace

Rational log_canonical_degree(const DualGraph& g, const std::vector<std::pair<std::string, Rational>>& exceptional_coefficients,
                              const std::string& on) {
    Rational s = canonical_degree(g.vertex(on)) + boundary_degree(g, on);
    for (const auto& [id, c] : exceptional_coefficients) {
        long e = id == on ? g.vertex(on).self_intersection : g.edge(id, on);
        s += c * Rational(e);
    }
    return s;
}

DiscrepancyResult solve_discrepancies(const DualGraph& g) {
    auto ids = g.exceptional_ids();
    IntMatrix m = intersection_matrix(g, ids);
    std::vector<std::vector<Rational>> a(ids.size(), std::vector<Rational>(ids.size()));
    std::vector<Rational> rhs(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = 0; j < ids.size(); ++j) a[i][j] = Rational(m[i][j]);
        rhs[i] = -(canonical_degree(g.vertex(ids[i])) + boundary_degree(g, ids[i]));
    }
    auto x = solve_rational(std::move(a), std::move(rhs));

    DiscrepancyResult r;
    r.klt = r.lc = true;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        r.coefficients.emplace_back(ids[i], x[i]);
        if (x[i] >= 1) r.klt = false;
        if (x[i] > 1) r.lc = false;
    }
    for (const auto& id : ids) {
        if (log_canonical_degree(g, r.coefficients, id) != 0) {
            throw Error("internal", "discrepancy residual check failed on '" + id + "'");
        }
    }
    return r;
}

QFactorialIndex q_factorial_index(const DualGraph& g) {
    IntMatrix m = intersection_matrix(g, g.exceptional_ids());
    if (!is_negative_definite(m)) {
        throw Error("not-negative-definite", "exceptional intersection matrix is not negative definite");
    }
    QFactorialIndex r;
    r.det = determinant(m);
    r.index = abs(r.det);
    return r;
}

Rational different_coefficient(const BigInt& dq) {
    if (dq < 1) throw Error("invalid-argument", "index must be positive");
    return Rational(dq - 1, dq);
}

Rational arithmetic_genus(const Rational& kc, const Rational& c2) { return (kc + c2 + Rational(2)) / Rational(2); }

LiftabilityGate special_point_liftability_gate(long a, long p) {
    if (a < 3 || a % 2 == 0) throw Error("invalid-argument", "type must be an odd integer >= 3");
    if (!is_prime(p)) throw Error("invalid-argument", "p must be a prime");
    LiftabilityGate r;
    r.n = (a - 1) / 2;
    r.pa_lower_bound = r.n;
    r.exceeds_18 = r.n > 18;
    r.det_divisible_by_p = a % p == 0;
    return r;
}

}  // namespace qfs
