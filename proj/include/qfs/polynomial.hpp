/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials: integer polynomials for the Witt
 *        universal polynomials, F_p polynomials for the graded samples.
 */
#pragma once

#include "qfs/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qfs {

using Monomial = std::vector<std::uint32_t>;

/// Integer polynomial in a fixed number of variables.
class IntPoly {
public:
    explicit IntPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static IntPoly variable(std::size_t nvars, std::size_t i);
    static IntPoly constant(std::size_t nvars, const BigInt& c);

    std::size_t nvars() const { return nvars_; }
    const std::map<Monomial, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    BigInt coefficient(const Monomial& m) const;

    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    IntPoly operator*(const IntPoly& o) const;
    IntPoly scaled(const BigInt& c) const;
    IntPoly pow(unsigned long e) const;
    /// Exact division of every coefficient; throws if some coefficient is not divisible.
    IntPoly divided_exact(const BigInt& c) const;

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.terms_ == b.terms_; }

    std::string str(const std::vector<std::string>& names) const;

private:
    void add_term(const Monomial& m, const BigInt& c);

    std::size_t nvars_;
    std::map<Monomial, BigInt> terms_;
};

/// Element of F_p[v_1..v_k]; coefficients kept in [0, p).
class FpPoly {
public:
    FpPoly() = default;
    FpPoly(std::uint64_t p, std::size_t nvars) : p_(p), nvars_(nvars) {}

    static FpPoly constant(std::uint64_t p, std::size_t nvars, const BigInt& c);
    static FpPoly variable(std::uint64_t p, std::size_t nvars, std::size_t i);

    std::uint64_t p() const { return p_; }
    std::size_t nvars() const { return nvars_; }
    const std::map<Monomial, std::uint64_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-() const;
    FpPoly operator*(const FpPoly& o) const;
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.terms_ == b.terms_; }

    std::string str(const std::vector<std::string>& names) const;

private:
    void add_term(const Monomial& m, std::uint64_t c);

    std::uint64_t p_ = 2;
    std::size_t nvars_ = 0;
    std::map<Monomial, std::uint64_t> terms_;
};

/// Distinct variable names in the order they first occur.
std::vector<std::string> scan_variables(const std::vector<std::string>& texts);

/// Parses sums of products such as "x^2*t + 3*x - 1".
FpPoly parse_fp_poly(const std::string& text, std::uint64_t p, const std::vector<std::string>& names);

}  // namespace qfs
