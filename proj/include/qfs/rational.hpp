/**
 * @file rational.hpp
 * @brief Exact rationals over GMP integers, floor calculus for Q-divisor
 *        coefficients and line-bundle cohomology on P^1 and P^2.
 */
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qfs {

using BigInt = mpz_class;

std::string to_string(const BigInt& v);
BigInt parse_bigint(std::string_view text);
BigInt ipow(const BigInt& base, unsigned long exp);
bool is_prime(const BigInt& n);

/// Reduced fraction with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long v) : num_(v), den_(1) {}  // NOLINT(implicit)
    Rational(const BigInt& v) : num_(v), den_(1) {}  // NOLINT(implicit)
    Rational(BigInt num, BigInt den);

    /// Accepts "a", "-a", "a/b".
    static Rational parse(std::string_view text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    int sign() const { return sgn(num_); }

    /// "num/den" always, even for integers (the JSON wire format).
    std::string str() const;
    /// "num" for integers, "num/den" otherwise.
    std::string pretty() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    void normalize();

    BigInt num_;
    BigInt den_;
};

/// Greatest integer <= q.
BigInt floor_part(const Rational& q);
/// Least integer >= q.
BigInt ceil_part(const Rational& q);
/// q - floor(q), always in [0, 1).
Rational frac_part(const Rational& q);

/// m with q = (m-1)/m, if any.
std::optional<BigInt> is_standard(const Rational& q);
/// (m-1)/m.
Rational standard_coefficient(const BigInt& m);

enum class Space { P1, P2 };

std::string to_string(Space s);
Space parse_space(std::string_view text);

/// h^i(O(degree)) on P^1 or P^2.
BigInt h_line_bundle(Space space, const BigInt& degree, int cohom_degree);

}  // namespace qfs

template <>
struct std::hash<qfs::Rational> {
    std::size_t operator()(const qfs::Rational& q) const noexcept;
};
