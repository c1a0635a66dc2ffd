/**
 * @file ledger.hpp
 * @brief Cohomology-dimension ledger on P^2 for the pairs of delpezzo.hpp.
 *
 * Sheaves are symbols; dimensions h^i are facts with derivations. Facts are
 * propagated through instantiated short exact sequences (via their long
 * exact cohomology sequences), isomorphisms, closed-form base facts and one
 * admitted splitting axiom, then a scripted five-lemma step.
 */
#pragma once

#include "qfs/delpezzo.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qfs {

enum class Family {
    O,          // O(t)
    O3,         // O(n)^{+3}, integer twists only
    Lines,      // direct sum of O_L(n) over the lines of Delta_red, integer twists only
    Omega1,     // Omega^1(t)
    Omega1Log,  // Omega^1(log Delta_red)(t)
    Omega2Log,  // Omega^2(log Delta_red)(t)
    B,          // B_m Omega^i_log(t)
    Z,          // Z_m Omega^i_log(t), m >= 1
    Q,          // Q_{X,D,m}
    Cokernel,   // unnamed quotient of an inclusion
};

/// Either the symbolic p^k D (D = K + Delta) or an integer degree.
struct Twist {
    bool symbolic = false;
    long k = 0;
    BigInt degree;

    static Twist sym(long k) { return {true, k, BigInt(0)}; }
    static Twist deg(const BigInt& n) { return {false, 0, n}; }

    friend bool operator==(const Twist& a, const Twist& b) {
        return a.symbolic == b.symbolic && a.k == b.k && a.degree == b.degree;
    }
    friend bool operator<(const Twist& a, const Twist& b);
};

struct SheafSym {
    Family family = Family::O;
    int level = 0;        // m for B, Z, Q
    int form_degree = 1;  // i for B, Z
    Twist twist;
    int fpush = 0;        // number of F_* applied
    std::string tag;      // distinguishes cokernels

    std::string str() const;
    friend bool operator==(const SheafSym& a, const SheafSym& b);
    friend bool operator<(const SheafSym& a, const SheafSym& b);
};

SheafSym sheaf_O(const Twist& t, int fpush = 0);
SheafSym sheaf_Omega1(const Twist& t);
SheafSym sheaf_Omega1Log(const Twist& t, int fpush = 0);
SheafSym sheaf_Omega2Log(const Twist& t, int fpush = 0);
SheafSym sheaf_B(int m, int i, long k, int fpush = 0);
/// Z_0 Omega^1_log is Omega^1_log itself.
SheafSym sheaf_Z(int m, int i, long k, int fpush = 0);
SheafSym sheaf_Q(int m);

struct FactKey {
    SheafSym sheaf;
    int i = 0;
    std::string str() const;
    friend bool operator<(const FactKey& a, const FactKey& b);
    friend bool operator==(const FactKey& a, const FactKey& b) { return a.i == b.i && a.sheaf == b.sheaf; }
};

struct Fact {
    BigInt dim;
    std::string rule;
    std::vector<FactKey> premises;
};

/// A short exact sequence 0 -> a -> b -> c -> 0 with its name. Cuts mark maps
/// of the long exact sequence known to be injective: a cut at slot j means the
/// map into slot j is zero (slots 0..8 are h^0(a), h^0(b), h^0(c), h^1(a), ...).
struct ShortExact {
    std::string name;
    SheafSym a, b, c;
    std::vector<int> cuts;
    std::string cut_reason;
};

/// A statement about a map, e.g. injectivity of a connecting map.
struct MapFact {
    std::string statement;
    std::string rule;
    std::vector<FactKey> premises;
};

class DimLedger {
public:
    explicit DimLedger(DelPezzoCase c);

    const DelPezzoCase& pair() const { return case_; }

    /// Registers a sheaf; integer-twist line-bundle families get closed-form facts.
    void ensure(const SheafSym& s);
    void add_sequence(ShortExact ses);
    /// Same cohomology in every degree.
    void add_isomorphism(const SheafSym& a, const SheafSym& b, const std::string& reason);
    /// Throws "contradiction" if a different value is already known.
    bool assert_fact(const FactKey& k, const BigInt& dim, const std::string& rule, std::vector<FactKey> premises);

    /// Fixed point of all rules. Returns the number of new facts.
    std::size_t propagate();
    /// Re-checks every fully known run of every long exact sequence.
    void audit() const;

    std::optional<BigInt> get(const FactKey& k) const;
    std::optional<BigInt> h(const SheafSym& s, int i) const { return get({s, i}); }
    const Fact& fact(const FactKey& k) const;
    const std::map<FactKey, Fact>& facts() const { return facts_; }
    const std::vector<ShortExact>& sequences() const { return sequences_; }

    void add_map_fact(const std::string& key, MapFact f) { maps_[key] = std::move(f); }
    const MapFact* map_fact(const std::string& key) const;
    const std::map<std::string, MapFact>& map_facts() const { return maps_; }

    /// Every fact needed for k, premises before conclusions, each listed once.
    std::vector<FactKey> derivation(const FactKey& k) const;
    /// Indented human-readable derivation tree.
    std::string explain(const FactKey& k) const;

private:
    bool propagate_sequence(const ShortExact& s);
    bool propagate_isomorphism(const SheafSym& a, const SheafSym& b, const std::string& reason);

    DelPezzoCase case_;
    std::map<FactKey, Fact> facts_;
    std::vector<SheafSym> sheaves_;
    std::vector<ShortExact> sequences_;
    struct Iso {
        SheafSym a, b;
        std::string reason;
    };
    std::vector<Iso> isos_;
    std::map<std::string, MapFact> maps_;
};

/// Facts for O(n), Omega^1(n), Omega^1_log(n), Omega^2_log(n) from the closed
/// forms, the Euler sequence and the residue sequence.
std::map<FactKey, Fact> base_dims(const DelPezzoCase& c, const BigInt& twist_degree);

/// Whether {p^r Delta} is supported on at most three of the lines, which makes
/// (P^2, {p^r Delta}) globally F-regular (toric boundary with coefficients < 1).
bool fractional_part_toric(const DelPezzoCase& c, unsigned long r);

/// Instantiates all sequences with twists up to p^(m_max+1) D, propagates,
/// runs the five-lemma induction and audits.
DimLedger ledger_run(const DelPezzoCase& c, int m_max);

struct VerdictStep {
    std::string statement;
    std::string rule;
    std::vector<FactKey> premises;
};

struct VerdictReport {
    bool inconclusive = false;
    bool certified = false;  // not m-quasi-F-split for every m <= m_max
    int m_max = 0;
    std::vector<VerdictStep> chain;
    std::vector<std::string> missing;
};

VerdictReport non_qfs_verdict(const DimLedger& ledger, int m_max);
VerdictReport non_qfs_verdict(const DelPezzoCase& c, int m_max);

struct TableEntry {
    FactKey key;
    BigInt expected;
    std::optional<BigInt> actual;
    bool ok() const { return actual && *actual == expected; }
};

/// The dimension table for 1 <= m <= m_max and 0 <= n <= m_max.
std::vector<TableEntry> table1_entries(const DimLedger& ledger, int m_max);

}  // namespace qfs
