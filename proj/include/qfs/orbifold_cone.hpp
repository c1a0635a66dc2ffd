/**
 * @file orbifold_cone.hpp
 * @brief Toric data of orbifold cones over fractional divisors on A^n, the
 *        reflexive-power congruence trick and Demazure-style dimension series.
 */
#pragma once

#include "qfs/rational.hpp"

#include <optional>
#include <vector>

namespace qfs {

struct FractionalComponent {
    long ell = 0;  // numerator, 0 <= ell < d
    long d = 1;    // denominator, coprime to ell
};

/// D = sum (ell_i / d_i) H_i on A^n, one component per coordinate hyperplane.
struct FractionalDivisorOnAn {
    std::vector<FractionalComponent> components;

    long n() const { return static_cast<long>(components.size()); }
    Rational coefficient(std::size_t i) const;
    /// Throws unless 0 <= ell < d and gcd(ell, d) = 1 on every component.
    void validate() const;
    static FractionalDivisorOnAn from_coefficients(const std::vector<Rational>& a);
};

using IntVector = std::vector<BigInt>;

struct ToricConeData {
    long rank = 0;
    std::vector<IntVector> rays;
};

/// Rays u_i = d_i e_i + ell_i e_{n+1} and e_{n+1}.
ToricConeData cone_rays(const FractionalDivisorOnAn& D);

/// gcd of the entries.
BigInt content(const IntVector& v);

/// v_d = (-floor(d a_i), d); checks v_d = sum frac(d a_i) e_i + (d/d0) v_{d0}.
bool tau_decomposition_check(const FractionalDivisorOnAn& D, long d, long d0);

/// d | (a1 - ell a2): the divisor a1 D_1 + a2 D_2 is Cartier on W.
bool cartier_test(const BigInt& a1, const BigInt& a2, long d, long ell);

/// Least N >= 1 with N (a1 D_1 + a2 D_2) Cartier for every residue pair.
long q_factorial_index_toric(long d, long ell);

/// (d_i - 1)/d_i per component, input pairs (d_i, ell_i).
std::vector<Rational> different(const std::vector<std::pair<long, long>>& D);

/// d_1..d_q summing to d with sum floor((b-1)/b + d_i a/b) = floor(q(b-1)/b + d a/b).
std::vector<long> reflexive_power_witness(long a, long b, long q, long d);
bool reflexive_power_identity(long a, long b, long q, long d, const std::vector<long>& parts);

struct ProjectiveComponent {
    long degree = 1;  // degree of the prime divisor
    Rational coefficient;
};

struct ProjectiveQDivisor {
    Space space = Space::P1;
    long integral_degree = 0;  // degree of an integral part carried separately
    std::vector<ProjectiveComponent> components;

    /// deg floor(t D).
    BigInt floor_degree(const Rational& t) const;
};

/// h^0(O(floor(dD))) for d = 0..d_max.
std::vector<BigInt> section_ring_dims(const ProjectiveQDivisor& X, long d_max);

/// D' with coefficient (d_i - 1)/d_i where d_i is the denominator of the i-th coefficient.
ProjectiveQDivisor branch_divisor(const ProjectiveQDivisor& D);

/// h^0(O(floor(q(K + D') + d D))) for d in [d_lo, d_hi].
std::vector<BigInt> canonical_module_dims(const ProjectiveQDivisor& D, long q, long d_lo, long d_hi);

}  // namespace qfs
