#include "qfs/orbifold_cone.hpp"

#include "qfs/error.hpp"

#include <numeric>

namespace qfs {

Rational FractionalDivisorOnAn::coefficient(std::size_t i) const {
    return Rational(components.at(i).ell, components.at(i).d);
}

void FractionalDivisorOnAn::validate() const {
    for (const auto& c : components) {
        if (c.d < 1 || c.ell < 0 || c.ell >= c.d || std::gcd(c.ell, c.d) != 1) {
            throw Error("invalid-argument", "component " + std::to_string(c.ell) + "/" + std::to_string(c.d) +
                                                " must satisfy 0 <= ell < d, gcd(ell, d) = 1");
        }
    }
}

FractionalDivisorOnAn FractionalDivisorOnAn::from_coefficients(const std::vector<Rational>& a) {
    FractionalDivisorOnAn D;
    for (const auto& q : a) {
        if (!q.num().fits_slong_p() || !q.den().fits_slong_p()) throw Error("invalid-argument", "coefficient too large");
        D.components.push_back({q.num().get_si(), q.den().get_si()});
    }
    D.validate();
    return D;
}

BigInt content(const IntVector& v) {
    BigInt g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

ToricConeData cone_rays(const FractionalDivisorOnAn& D) {
    D.validate();
    std::size_t n = D.components.size();
    ToricConeData t;
    t.rank = static_cast<long>(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        IntVector u(n + 1, BigInt(0));
        u[i] = D.components[i].d;
        u[n] = D.components[i].ell;
        t.rays.push_back(std::move(u));
    }
    IntVector e(n + 1, BigInt(0));
    e[n] = 1;
    t.rays.push_back(std::move(e));
    return t;
}

bool tau_decomposition_check(const FractionalDivisorOnAn& D, long d, long d0) {
    D.validate();
    if (d < 0) throw Error("invalid-argument", "degree must be nonnegative");
    if (d0 < 1) throw Error("invalid-argument", "d0 must be positive");
    std::size_t n = D.components.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(Rational(d0) * D.coefficient(i)).is_integer()) {
            throw Error("invalid-argument", "d0 = " + std::to_string(d0) + " is not a common denominator");
        }
    }
    Rational scale{BigInt(d), BigInt(d0)};
    for (std::size_t i = 0; i < n; ++i) {
        Rational da = Rational(d) * D.coefficient(i);
        Rational lhs(-floor_part(da));
        Rational v0(-floor_part(Rational(d0) * D.coefficient(i)));
        Rational rhs = frac_part(da) + scale * v0;
        if (lhs != rhs) return false;
    }
    return Rational(d) == scale * Rational(d0);
}

bool cartier_test(const BigInt& a1, const BigInt& a2, long d, long ell) {
    if (d < 1) throw Error("invalid-argument", "d must be positive");
    BigInt t = a1 - ell * a2;
    return mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(d)) != 0;
}

long q_factorial_index_toric(long d, long ell) {
    if (d < 1 || std::gcd(d, ell) != 1) throw Error("invalid-argument", "need d >= 1 and gcd(d, ell) = 1");
    for (long N = 1;; ++N) {
        bool all = true;
        for (long a1 = 0; a1 < d && all; ++a1) {
            for (long a2 = 0; a2 < d && all; ++a2) {
                all = cartier_test(BigInt(N * a1), BigInt(N * a2), d, ell);
            }
        }
        if (all) return N;
    }
}

std::vector<Rational> different(const std::vector<std::pair<long, long>>& D) {
    std::vector<Rational> out;
    for (const auto& [d, ell] : D) {
        if (d < 1 || std::gcd(d, ell) != 1) throw Error("invalid-argument", "need d >= 1 and gcd(d, ell) = 1");
        out.emplace_back(BigInt(d - 1), BigInt(d));
    }
    return out;
}

bool reflexive_power_identity(long a, long b, long q, long d, const std::vector<long>& parts) {
    if (static_cast<long>(parts.size()) != q) return false;
    long sum = 0;
    BigInt lhs = 0;
    Rational base{BigInt(b - 1), BigInt(b)};
    for (long di : parts) {
        sum += di;
        lhs += floor_part(base + Rational(BigInt(di) * a, BigInt(b)));
    }
    BigInt rhs = floor_part(Rational(q) * base + Rational(BigInt(d) * a, BigInt(b)));
    return sum == d && lhs == rhs;
}

std::vector<long> reflexive_power_witness(long a, long b, long q, long d) {
    if (b < 1 || q < 1) throw Error("invalid-argument", "need b >= 1 and q >= 1");
    if (std::gcd(a, b) != 1) throw Error("invalid-argument", "need gcd(a, b) = 1");
    // y with (b - 1) + a y = 0 mod b makes every later summand an exact integer.
    long y = 0;
    while (((b - 1) + a * y) % b != 0) ++y;
    std::vector<long> parts(static_cast<std::size_t>(q), y);
    parts[0] = d - (q - 1) * y;
    if (!reflexive_power_identity(a, b, q, d, parts)) {
        throw Error("internal", "congruence witness failed the floor identity");
    }
    return parts;
}

BigInt ProjectiveQDivisor::floor_degree(const Rational& t) const {
    BigInt deg = floor_part(t * Rational(integral_degree));
    for (const auto& c : components) deg += floor_part(t * c.coefficient) * c.degree;
    return deg;
}

std::vector<BigInt> section_ring_dims(const ProjectiveQDivisor& X, long d_max) {
    if (d_max < 0) throw Error("invalid-argument", "d_max must be nonnegative");
    std::vector<BigInt> out;
    for (long d = 0; d <= d_max; ++d) out.push_back(h_line_bundle(X.space, X.floor_degree(Rational(d)), 0));
    return out;
}

ProjectiveQDivisor branch_divisor(const ProjectiveQDivisor& D) {
    ProjectiveQDivisor out;
    out.space = D.space;
    for (const auto& c : D.components) {
        out.components.push_back({c.degree, Rational(c.coefficient.den() - 1, c.coefficient.den())});
    }
    return out;
}

std::vector<BigInt> canonical_module_dims(const ProjectiveQDivisor& D, long q, long d_lo, long d_hi) {
    if (q < 1) throw Error("invalid-argument", "q must be positive");
    long k = D.space == Space::P1 ? -2 : -3;
    ProjectiveQDivisor Dp = branch_divisor(D);
    std::vector<BigInt> out;
    for (long d = d_lo; d <= d_hi; ++d) {
        BigInt deg = BigInt(q * k) + floor_part(Rational(d) * Rational(D.integral_degree));
        for (std::size_t i = 0; i < D.components.size(); ++i) {
            Rational c = Rational(q) * Dp.components[i].coefficient + Rational(d) * D.components[i].coefficient;
            deg += floor_part(c) * D.components[i].degree;
        }
        out.push_back(h_line_bundle(D.space, deg, 0));
    }
    return out;
}

}  // namespace qfs
