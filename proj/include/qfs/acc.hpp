/**
 * @file acc.hpp
 * @brief Finite checks behind the coefficient bounds: the curve ACC
 *        enumeration and the termwise inequality of the p > 41 vanishing.
 */
#pragma once

#include "qfs/rational.hpp"

#include <vector>

namespace qfs {

struct AccResult {
    std::vector<Rational> values;                 // the candidate coefficient set, ascending
    std::vector<std::vector<Rational>> solutions;  // multisets (ascending) summing to 2
    std::vector<std::vector<Rational>> violations; // solutions with an entry in (low, 1)
    bool ok() const { return violations.empty(); }
};

/// All multisets from {(m-1)/m : 2 <= m <= den} and {k/den : low <= k/den < 1}
/// with sum exactly 2. A solution violates the bound if some entry lies in (low, 1).
AccResult curve_acc_enumerate(const Rational& low, long grid_denominator);

struct VanishingReport {
    std::vector<bool> per_component_ok;
    BigInt p2_degree;  // deg(K + Delta_red + floor(p^l (K + Delta))) on P^2
    bool all_ok() const;
};

/// For (d-1)/d with 2 <= d <= 42 checks 1 + floor(p^l (d-1)/d) <= 1 + p^l (d-1)/d - 1/d;
/// larger d only need the bound without the 1/d, and d = 1 is not a component.
VanishingReport vanishing_42_check(const std::vector<Rational>& coeffs, unsigned long p, unsigned long ell);

}  // namespace qfs
