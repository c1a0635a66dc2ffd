/**
 * @file witt.hpp
 * @brief Truncated p-typical Witt vectors over a pluggable coefficient ring.
 *
 * The universal sum and product polynomials are solved from the ghost
 * equations over Z once per (p, n) and then compiled for each coefficient
 * ring. Variables are ordered x_0..x_{n-1}, y_0..y_{n-1}.
 */
#pragma once

#include "qfs/error.hpp"
#include "qfs/polynomial.hpp"
#include "qfs/rational.hpp"

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qfs {

struct WittPolyCache {
    unsigned long p = 2;
    std::size_t n = 1;
    std::vector<IntPoly> sum;      // S_0..S_{n-1}
    std::vector<IntPoly> product;  // P_0..P_{n-1}

    std::vector<std::string> variable_names() const;
};

/// Memoized and safe to call from several threads. Throws "composite-p".
std::shared_ptr<const WittPolyCache> build_cache(unsigned long p, std::size_t n);

/// w_m = sum_i p^i x_i^(p^(m-i)) in the x-variables of a 2n-variable ring.
IntPoly ghost_polynomial(unsigned long p, std::size_t n, std::size_t m, std::size_t offset);

template <class R>
concept CoefficientRing = requires(const R& r, const typename R::Element& a, const BigInt& k) {
    { r.zero() } -> std::convertible_to<typename R::Element>;
    { r.from_integer(k) } -> std::convertible_to<typename R::Element>;
    { r.add(a, a) } -> std::convertible_to<typename R::Element>;
    { r.mul(a, a) } -> std::convertible_to<typename R::Element>;
    { r.neg(a) } -> std::convertible_to<typename R::Element>;
    { r.equal(a, a) } -> std::convertible_to<bool>;
    { r.is_zero(a) } -> std::convertible_to<bool>;
    { r.characteristic() } -> std::convertible_to<unsigned long>;
    { r.format(a) } -> std::convertible_to<std::string>;
};

template <class R>
concept GradedCoefficientRing = CoefficientRing<R> && requires(const R& r, const typename R::Element& a) {
    { r.degree(a) } -> std::same_as<std::optional<Rational>>;
};

template <CoefficientRing R>
typename R::Element ring_pow(const R& r, typename R::Element a, unsigned long e) {
    typename R::Element result = r.from_integer(1);
    while (e > 0) {
        if (e & 1UL) result = r.mul(result, a);
        e >>= 1;
        if (e > 0) a = r.mul(a, a);
    }
    return result;
}

/// Z, used for integer lifts and ghost components.
struct IntegerRing {
    using Element = BigInt;
    Element zero() const { return 0; }
    Element from_integer(const BigInt& k) const { return k; }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    bool equal(const Element& a, const Element& b) const { return a == b; }
    bool is_zero(const Element& a) const { return a == 0; }
    unsigned long characteristic() const { return 0; }
    std::string format(const Element& a) const { return a.get_str(); }
};

struct PrimeField {
    using Element = std::uint64_t;
    explicit PrimeField(std::uint64_t prime);
    std::uint64_t p;
    Element zero() const { return 0; }
    Element from_integer(const BigInt& k) const;
    Element add(Element a, Element b) const { return (a + b) % p; }
    Element mul(Element a, Element b) const { return (a * b) % p; }
    Element neg(Element a) const { return (p - a) % p; }
    bool equal(Element a, Element b) const { return a == b; }
    bool is_zero(Element a) const { return a == 0; }
    unsigned long characteristic() const { return p; }
    std::string format(Element a) const { return std::to_string(a); }
    std::vector<Element> elements() const;
};

/// F_p[v_1..v_k] / (monomial relations), graded by rational generator degrees.
class GradedPolyRing {
public:
    using Element = FpPoly;

    GradedPolyRing(std::uint64_t p, std::vector<std::string> names, std::vector<Rational> degrees,
                   std::vector<Monomial> monomial_relations = {});

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Rational>& degrees() const { return degrees_; }
    Element variable(const std::string& name) const;
    Element parse(const std::string& text) const;

    Element zero() const { return FpPoly(p_, names_.size()); }
    Element from_integer(const BigInt& k) const { return FpPoly::constant(p_, names_.size(), k); }
    Element add(const Element& a, const Element& b) const { return reduce(a + b); }
    Element mul(const Element& a, const Element& b) const { return reduce(a * b); }
    Element neg(const Element& a) const { return -a; }
    bool equal(const Element& a, const Element& b) const { return a == b; }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    unsigned long characteristic() const { return p_; }
    std::string format(const Element& a) const { return a.str(names_); }

    Rational monomial_degree(const Monomial& m) const;
    /// Degree of a nonzero homogeneous element; nullopt for zero or mixed degrees.
    std::optional<Rational> degree(const Element& a) const;

private:
    Element reduce(Element a) const;

    std::uint64_t p_;
    std::vector<std::string> names_;
    std::vector<Rational> degrees_;
    std::vector<Monomial> relations_;
};

/// Integer polynomial with coefficients mapped into R, evaluated by nested Horner.
template <CoefficientRing R>
class CompiledPoly {
public:
    using E = typename R::Element;

    CompiledPoly(const R& ring, const IntPoly& f) : nvars_(f.nvars()) {
        for (const auto& [m, c] : f.terms()) {
            E e = ring.from_integer(c);
            if (!ring.is_zero(e)) terms_.emplace_back(m, std::move(e));
        }
        max_exp_.assign(nvars_, 0);
        for (const auto& [m, c] : terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) max_exp_[i] = std::max(max_exp_[i], m[i]);
        }
    }

    E operator()(const R& ring, const std::vector<E>& values) const {
        if (terms_.empty()) return ring.zero();
        std::vector<std::vector<E>> powers(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            powers[i].reserve(max_exp_[i] + 1);
            powers[i].push_back(ring.from_integer(1));
            for (std::uint32_t e = 1; e <= max_exp_[i]; ++e) powers[i].push_back(ring.mul(powers[i].back(), values[i]));
        }
        return eval(ring, powers, 0, 0, terms_.size());
    }

private:
    // Terms are in lexicographic exponent order, so equal prefixes are contiguous.
    E eval(const R& ring, const std::vector<std::vector<E>>& powers, std::size_t level, std::size_t lo,
           std::size_t hi) const {
        if (level == nvars_) return terms_[lo].second;
        E acc = ring.zero();
        std::size_t i = lo;
        while (i < hi) {
            std::uint32_t e = terms_[i].first[level];
            std::size_t j = i;
            while (j < hi && terms_[j].first[level] == e) ++j;
            E sub = eval(ring, powers, level + 1, i, j);
            acc = ring.add(acc, e == 0 ? sub : ring.mul(sub, powers[level][e]));
            i = j;
        }
        return acc;
    }

    std::size_t nvars_;
    std::vector<std::pair<Monomial, E>> terms_;
    std::vector<std::uint32_t> max_exp_;
};

template <class E>
struct WittVec {
    unsigned long p = 2;
    std::vector<E> entries;

    std::size_t n() const { return entries.size(); }
};

template <CoefficientRing R>
class WittRing {
public:
    using E = typename R::Element;
    using Vec = WittVec<E>;

    WittRing(R ring, unsigned long p, std::size_t n) : ring_(std::move(ring)), p_(p), n_(n) {
        if (n < 1) throw Error("invalid-argument", "Witt length must be at least 1");
        unsigned long c = ring_.characteristic();
        if (c != 0 && c != p) throw Error("mismatched-parameters", "coefficient ring characteristic differs from p");
        cache_ = build_cache(p, n);
        for (std::size_t m = 0; m < n; ++m) {
            sum_.emplace_back(ring_, cache_->sum[m]);
            product_.emplace_back(ring_, cache_->product[m]);
        }
    }

    const R& coefficients() const { return ring_; }
    unsigned long p() const { return p_; }
    std::size_t n() const { return n_; }
    const WittPolyCache& cache() const { return *cache_; }

    Vec make(std::vector<E> entries) const {
        if (entries.size() != n_) throw Error("mismatched-parameters", "Witt vector of the wrong length");
        return Vec{p_, std::move(entries)};
    }
    Vec zero() const { return Vec{p_, std::vector<E>(n_, ring_.zero())}; }
    Vec one() const { return teichmuller(ring_.from_integer(1)); }
    Vec teichmuller(const E& x) const {
        Vec v = zero();
        v.entries[0] = x;
        return v;
    }

    Vec add(const Vec& a, const Vec& b) const { return apply(sum_, a, b); }
    Vec mul(const Vec& a, const Vec& b) const { return apply(product_, a, b); }

    /// k * a by double-and-add on Witt addition, k >= 0.
    Vec scalar(unsigned long k, Vec a) const {
        check(a);
        Vec r = zero();
        while (k > 0) {
            if (k & 1UL) r = add(r, a);
            k >>= 1;
            if (k > 0) a = add(a, a);
        }
        return r;
    }

    /// Entrywise p-th power; the Witt Frobenius on F_p-algebras.
    Vec frobenius(const Vec& a) const {
        check(a);
        if (ring_.characteristic() != p_) {
            throw Error("invalid-argument", "entrywise Frobenius needs a ring of characteristic p");
        }
        Vec r = a;
        for (auto& e : r.entries) e = ring_pow(ring_, e, p_);
        return r;
    }

    /// (0, a_0, ..., a_{n-2}).
    Vec verschiebung(const Vec& a) const {
        check(a);
        Vec r = zero();
        for (std::size_t i = 0; i + 1 < n_; ++i) r.entries[i + 1] = a.entries[i];
        return r;
    }

    /// (0, a_0, ..., a_{n-1}), a vector of length n + 1.
    Vec verschiebung_extend(const Vec& a) const {
        check(a);
        Vec r{p_, {ring_.zero()}};
        for (const auto& e : a.entries) r.entries.push_back(e);
        return r;
    }

    /// First m entries.
    Vec restrict(const Vec& a, std::size_t m) const {
        check(a);
        if (m < 1 || m > n_) throw Error("invalid-argument", "restriction length out of range");
        return Vec{p_, std::vector<E>(a.entries.begin(), a.entries.begin() + static_cast<long>(m))};
    }

    std::vector<E> ghost(const Vec& a) const {
        check(a);
        std::vector<E> w;
        for (std::size_t m = 0; m < n_; ++m) {
            E s = ring_.zero();
            BigInt pi = 1;
            for (std::size_t i = 0; i <= m; ++i) {
                E t = ring_pow(ring_, a.entries[i], static_cast<unsigned long>(ipow(BigInt(p_), m - i).get_ui()));
                s = ring_.add(s, ring_.mul(ring_.from_integer(pi), t));
                pi *= p_;
            }
            w.push_back(s);
        }
        return w;
    }

    bool equal(const Vec& a, const Vec& b) const {
        check(a);
        check(b);
        for (std::size_t i = 0; i < n_; ++i) {
            if (!ring_.equal(a.entries[i], b.entries[i])) return false;
        }
        return true;
    }

    std::vector<std::string> format(const Vec& a) const {
        std::vector<std::string> out;
        for (const auto& e : a.entries) out.push_back(ring_.format(e));
        return out;
    }

private:
    void check(const Vec& a) const {
        if (a.p != p_ || a.entries.size() != n_) {
            throw Error("mismatched-parameters", "Witt vector parameters differ from the ring");
        }
    }

    Vec apply(const std::vector<CompiledPoly<R>>& polys, const Vec& a, const Vec& b) const {
        check(a);
        check(b);
        std::vector<E> values = a.entries;
        values.insert(values.end(), b.entries.begin(), b.entries.end());
        Vec r = zero();
        for (std::size_t m = 0; m < n_; ++m) r.entries[m] = polys[m](ring_, values);
        return r;
    }

    R ring_;
    unsigned long p_;
    std::size_t n_;
    std::shared_ptr<const WittPolyCache> cache_;
    std::vector<CompiledPoly<R>> sum_;
    std::vector<CompiledPoly<R>> product_;
};

/// Homogeneity certificate: entry i has degree p^i e. The zero vector is homogeneous of every degree.
struct WittDegree {
    bool any = false;
    Rational e;
};

template <GradedCoefficientRing R>
std::optional<WittDegree> homogeneous_degree(const WittRing<R>& W, const WittVec<typename R::Element>& a) {
    const R& ring = W.coefficients();
    std::optional<Rational> e;
    BigInt pi = 1;
    for (std::size_t i = 0; i < a.entries.size(); ++i, pi *= W.p()) {
        if (ring.is_zero(a.entries[i])) continue;
        auto d = ring.degree(a.entries[i]);
        if (!d) return std::nullopt;
        Rational ei = *d / Rational(pi);
        if (e && *e != ei) return std::nullopt;
        e = ei;
    }
    if (!e) return WittDegree{true, Rational(0)};
    return WittDegree{false, *e};
}

}  // namespace qfs
