/**
 * @file blowup.hpp
 * @brief Point blowups of curve germs on a smooth surface, tracked through
 *        multiplicity sequences and local intersection numbers only.
 *
 * Every curve in the configuration (input branch or exceptional curve) is
 * locally irreducible, so two curves meet in at most one point and curves
 * that pairwise meet share a common point. A point is therefore the clique
 * {a, b, ...} of curves with positive pairwise local intersection.
 */
#pragma once

#include "qfs/dual_graph.hpp"
#include "qfs/rational.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace qfs {

struct GermCurve {
    std::string id;
    Rational coefficient;
    // Multiplicities at the successive points blown up on this curve; 1 afterwards.
    std::vector<long> multiplicities;
    bool exceptional = false;
    // For exceptional curves the self-intersection; for input branches the
    // change relative to the input.
    long self_intersection = 0;

    long multiplicity() const { return multiplicities.empty() ? 1 : multiplicities.front(); }
};

class GermState {
public:
    /// Input branches all pass through the focus.
    static GermState from_branches(std::vector<GermCurve> branches,
                                   const std::vector<std::tuple<std::string, std::string, long>>& intersections);
    static GermState from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    const std::vector<GermCurve>& curves() const { return curves_; }
    const GermCurve& curve(const std::string& id) const;
    long local_intersection(const std::string& a, const std::string& b) const;

    /// Curves through the current focus; empty when the configuration is log smooth.
    const std::vector<std::string>& focus() const { return focus_; }
    bool log_smooth() const { return focus_.empty(); }

    /// Exceptional curve ids in order of creation.
    const std::vector<std::string>& exceptional_history() const { return history_; }
    int steps() const { return static_cast<int>(history_.size()); }

    /// Coefficient the next blowup would give its exceptional curve: mult_x(Delta) - 1.
    Rational next_coefficient() const;

    /// Points of the current configuration (each a sorted list of curve ids).
    std::vector<std::vector<std::string>> points() const;
    bool point_is_snc(const std::vector<std::string>& point) const;

    /// Sum of pairwise local intersections plus m^2 over the singular multiplicities.
    long intersection_budget() const;

    DualGraph graph() const;

private:
    friend GermState blowup_step(const GermState& s);

    std::size_t index(const std::string& id) const;
    long& intersection_ref(std::size_t a, std::size_t b);
    long intersection_at(std::size_t a, std::size_t b) const;
    void choose_focus();

    std::vector<GermCurve> curves_;
    std::map<std::pair<std::size_t, std::size_t>, long> intersections_;
    std::vector<std::string> focus_;
    std::vector<std::string> history_;
};

/// Blows up the focus. Throws "nothing-to-blow-up" on a log smooth configuration.
GermState blowup_step(const GermState& s);

enum class OutcomeKind { EffectiveLogResolution, SpecialPoint };

struct ResolutionOutcome {
    OutcomeKind kind = OutcomeKind::EffectiveLogResolution;
    DualGraph graph;
    long n = 0;  // only for SpecialPoint; the type is 2n + 1
    int steps = 0;
};

std::string to_string(OutcomeKind k);
nlohmann::json to_json(const ResolutionOutcome& r);

/// Blows up until log smooth, stopping at a cusp special point.
ResolutionOutcome resolve(const GermState& s, int max_steps);

/// Blows up until log smooth regardless of the signs of the new coefficients.
GermState log_resolution(const GermState& s, int max_steps);

/// Germ of 1/2 C where C has multiplicity 2 at n successive points (y^2 = x^(2n+1)).
GermState cusp_germ(long n, const Rational& coefficient = Rational(1, 2));

/// Intermediate graph after n blowups: C tangent to E_n, all coefficients 0.
DualGraph cusp_special_graph(long n);

/// Minimal log resolution of the cusp germ: E_1..E_{n+2} and C_W.
DualGraph cusp_log_resolution(long n);

}  // namespace qfs
