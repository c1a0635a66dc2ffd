/**
 * @file dual_graph.hpp
 * @brief Dual graphs of curve configurations on a surface and the linear
 *        algebra around their intersection matrices.
 */
#pragma once

#include "qfs/rational.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qfs {

struct Vertex {
    std::string id;
    long self_intersection = 0;
    int genus = 0;
    Rational coefficient;  // coefficient in the boundary; 0 if none
    bool exceptional = false;
};

class DualGraph {
public:
    /// Throws on a duplicate id.
    void add_vertex(Vertex v);
    /// Sets the intersection multiplicity of two distinct vertices.
    void set_edge(const std::string& a, const std::string& b, long mult);
    /// Adds to the intersection multiplicity of two distinct vertices.
    void add_edge(const std::string& a, const std::string& b, long mult);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const Vertex& vertex(const std::string& id) const;
    Vertex& vertex(const std::string& id);
    std::optional<std::size_t> index_of(const std::string& id) const;
    bool contains(const std::string& id) const { return index_of(id).has_value(); }

    long edge(const std::string& a, const std::string& b) const;
    /// Edges with positive multiplicity, each unordered pair once, in vertex order.
    std::vector<std::tuple<std::string, std::string, long>> edges() const;

    std::vector<std::string> exceptional_ids() const;

    nlohmann::json to_json() const;
    static DualGraph from_json(const nlohmann::json& j);

private:
    std::size_t require(const std::string& id) const;

    std::vector<Vertex> vertices_;
    std::map<std::pair<std::size_t, std::size_t>, long> edges_;
};

using IntMatrix = std::vector<std::vector<BigInt>>;

/// (E_i . E_j) over the subset, in the order given.
IntMatrix intersection_matrix(const DualGraph& g, const std::vector<std::string>& subset);
/// Tridiagonal chain matrix with the given diagonal and 1 off the diagonal.
IntMatrix chain_matrix(const std::vector<long>& self_intersections);

/// Fraction-free (Bareiss) determinant; the empty matrix has determinant 1.
BigInt determinant(const IntMatrix& m);
/// True iff every leading principal minor of -m is positive.
bool is_negative_definite(const IntMatrix& m);

struct DiscrepancyResult {
    std::vector<std::pair<std::string, Rational>> coefficients;  // exceptional vertices in graph order
    bool klt = false;  // every coefficient < 1
    bool lc = false;   // every coefficient <= 1
};

/// Coefficients c_i making K + boundary + sum c_i E_i trivial on every exceptional E_i.
DiscrepancyResult solve_discrepancies(const DualGraph& g);

/// (K + boundary + sum c_i E_i) . E for exceptional E, as used by the residual check.
Rational log_canonical_degree(const DualGraph& g, const std::vector<std::pair<std::string, Rational>>& exceptional_coefficients,
                              const std::string& on);

struct QFactorialIndex {
    BigInt det;    // det of (E_i . E_j)
    BigInt index;  // |det|
};

/// Index of the exceptional subgraph; throws unless it is negative definite.
QFactorialIndex q_factorial_index(const DualGraph& g);

Rational different_coefficient(const BigInt& dq);

/// ((K.C + C^2) + 2) / 2.
Rational arithmetic_genus(const Rational& kc, const Rational& c2);

struct LiftabilityGate {
    long n = 0;
    long pa_lower_bound = 0;
    bool exceeds_18 = false;
    bool det_divisible_by_p = false;
};

LiftabilityGate special_point_liftability_gate(long a, long p);

}  // namespace qfs
