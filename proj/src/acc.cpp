#include "qfs/acc.hpp"

#include "qfs/error.hpp"

#include <algorithm>
#include <functional>

namespace qfs {

AccResult curve_acc_enumerate(const Rational& low, long grid_denominator) {
    if (grid_denominator < 6) throw Error("invalid-argument", "grid denominator must be at least 6");
    if (low.sign() <= 0 || low >= Rational(1)) throw Error("invalid-argument", "interval start must lie in (0, 1)");
    AccResult res;
    for (long m = 2; m <= grid_denominator; ++m) res.values.push_back(standard_coefficient(BigInt(m)));
    for (long k = 0; k < grid_denominator; ++k) {
        Rational v{BigInt(k), BigInt(grid_denominator)};
        if (v >= low) res.values.push_back(v);
    }
    std::sort(res.values.begin(), res.values.end());
    res.values.erase(std::unique(res.values.begin(), res.values.end()), res.values.end());

    const Rational target(2);
    std::vector<Rational> pick;
    // Entries are non-decreasing; the smallest value bounds how many more fit.
    std::function<void(std::size_t, const Rational&)> extend = [&](std::size_t from, const Rational& sum) {
        if (sum == target) {
            res.solutions.push_back(pick);
            return;
        }
        for (std::size_t i = from; i < res.values.size(); ++i) {
            Rational next = sum + res.values[i];
            if (next > target) break;
            pick.push_back(res.values[i]);
            extend(i, next);
            pick.pop_back();
        }
    };
    extend(0, Rational(0));

    for (const auto& s : res.solutions) {
        bool bad = std::any_of(s.begin(), s.end(), [&](const Rational& v) { return v > low && v < Rational(1); });
        if (bad) res.violations.push_back(s);
    }
    return res;
}

bool VanishingReport::all_ok() const {
    return std::all_of(per_component_ok.begin(), per_component_ok.end(), [](bool b) { return b; });
}

VanishingReport vanishing_42_check(const std::vector<Rational>& coeffs, unsigned long p, unsigned long ell) {
    if (!is_prime(BigInt(p))) throw Error("composite-p", std::to_string(p) + " is not prime");
    if (ell < 1) throw Error("invalid-argument", "l must be positive");
    Rational q(ipow(BigInt(p), ell));
    VanishingReport rep;
    BigInt deg = -3 * q.num() - 3;
    for (const auto& a : coeffs) {
        auto d = is_standard(a);
        if (!d) throw Error("invalid-argument", a.pretty() + " is not a standard coefficient");
        Rational scaled = q * a;
        BigInt fl = floor_part(scaled);
        bool ok = true;
        if (*d >= 2 && *d <= 42) {
            ok = Rational(BigInt(1 + fl)) <= Rational(1) + scaled - Rational(BigInt(1), *d);
        } else if (*d > 42) {
            ok = Rational(BigInt(1 + fl)) <= Rational(1) + scaled;
        }
        rep.per_component_ok.push_back(ok);
        if (*d >= 2) deg += 1;
        deg += fl;
    }
    rep.p2_degree = deg;
    return rep;
}

}  // namespace qfs
