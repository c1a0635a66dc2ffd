#include "qfs/error.hpp"
#include "qfs/witt.hpp"

#include <doctest.h>

#include <random>

using namespace qfs;

namespace {

Rational q(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

Monomial mono(std::initializer_list<std::uint32_t> e) { return Monomial(e); }

// w_m = sum_i p^i a_i^(p^(m-i)), evaluated directly.
std::vector<BigInt> ghost_direct(unsigned long p, const std::vector<BigInt>& a) {
    std::vector<BigInt> w;
    for (std::size_t m = 0; m < a.size(); ++m) {
        BigInt s = 0;
        for (std::size_t i = 0; i <= m; ++i) {
            BigInt e;
            mpz_pow_ui(e.get_mpz_t(), a[i].get_mpz_t(), mpz_get_ui(ipow(BigInt(p), m - i).get_mpz_t()));
            s += ipow(BigInt(p), i) * e;
        }
        w.push_back(s);
    }
    return w;
}

// W_n(F_p) is Z/p^n via (a_0, .., a_{n-1}) -> sum p^i omega(a_i), omega the Teichmuller lift.
long to_zpn(unsigned long p, const std::vector<std::uint64_t>& a) {
    std::size_t n = a.size();
    BigInt mod = ipow(BigInt(p), n);
    BigInt total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt w;
        BigInt base(static_cast<unsigned long>(a[i]));
        BigInt e = ipow(BigInt(p), n - 1);
        mpz_powm(w.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
        total += ipow(BigInt(p), i) * w;
    }
    total %= mod;
    return total.get_si();
}

std::vector<std::vector<std::uint64_t>> all_vectors(unsigned long p, std::size_t n) {
    std::vector<std::vector<std::uint64_t>> out{{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& v : out)
            for (std::uint64_t x = 0; x < p; ++x) {
                auto w = v;
                w.push_back(x);
                next.push_back(w);
            }
        out = next;
    }
    return out;
}

}  // namespace

TEST_CASE("universal polynomials") {
    auto c22 = build_cache(2, 2);
    // x0 x1 y0 y1
    const IntPoly& s1 = c22->sum[1];
    CHECK(s1.terms().size() == 3);
    CHECK(s1.coefficient(mono({0, 1, 0, 0})) == 1);
    CHECK(s1.coefficient(mono({0, 0, 0, 1})) == 1);
    CHECK(s1.coefficient(mono({1, 0, 1, 0})) == -1);

    auto c32 = build_cache(3, 2);
    const IntPoly& t1 = c32->sum[1];
    CHECK(t1.terms().size() == 4);
    CHECK(t1.coefficient(mono({0, 1, 0, 0})) == 1);
    CHECK(t1.coefficient(mono({0, 0, 0, 1})) == 1);
    CHECK(t1.coefficient(mono({2, 0, 1, 0})) == -1);
    CHECK(t1.coefficient(mono({1, 0, 2, 0})) == -1);

    for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
        auto c = build_cache(p, 1);
        CHECK(c->sum[0].terms().size() == 2);
        CHECK(c->sum[0].coefficient(mono({1, 0})) == 1);
        CHECK(c->sum[0].coefficient(mono({0, 1})) == 1);
        CHECK(c->product[0].terms().size() == 1);
        CHECK(c->product[0].coefficient(mono({1, 1})) == 1);
    }
    CHECK_THROWS_AS(build_cache(4, 2), Error);
    CHECK_THROWS_AS(build_cache(1, 2), Error);
    CHECK(build_cache(2, 3).get() == build_cache(2, 3).get());
}

TEST_CASE("ghost components of small integer vectors") {
    WittRing<IntegerRing> W(IntegerRing{}, 2, 3);
    // w_2(1, 1, 0) = 1 + 2 + 0.
    CHECK(W.ghost(W.make({BigInt(1), BigInt(1), BigInt(0)})) == std::vector<BigInt>{1, 3, 3});
    CHECK(W.ghost(W.make({BigInt(1), BigInt(1), BigInt(1)})) == std::vector<BigInt>{1, 3, 7});
    CHECK(W.ghost(W.make({BigInt(1), BigInt(1), BigInt(0)})) == ghost_direct(2, {1, 1, 0}));
}

TEST_CASE("ghost homomorphism on random integer lifts") {
    std::mt19937_64 rng(20240901);
    std::uniform_int_distribution<long> entry(-6, 6);
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        for (std::size_t n = 1; n <= 4; ++n) {
            WittRing<IntegerRing> W(IntegerRing{}, p, n);
            int bad = 0;
            for (int t = 0; t < 1000; ++t) {
                std::vector<BigInt> a, b;
                for (std::size_t i = 0; i < n; ++i) {
                    a.push_back(BigInt(entry(rng)));
                    b.push_back(BigInt(entry(rng)));
                }
                auto ga = ghost_direct(p, a), gb = ghost_direct(p, b);
                auto s = ghost_direct(p, W.add(W.make(a), W.make(b)).entries);
                auto m = ghost_direct(p, W.mul(W.make(a), W.make(b)).entries);
                for (std::size_t i = 0; i < n; ++i) {
                    if (s[i] != ga[i] + gb[i] || m[i] != ga[i] * gb[i]) ++bad;
                }
            }
            CHECK_MESSAGE(bad == 0, "p = " << p << ", n = " << n);
        }
    }
}

TEST_CASE("W_n(F_p) is isomorphic to Z/p^n through Teichmuller digits") {
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        for (std::size_t n = 1; n <= (p == 5 ? 2u : 3u); ++n) {
            WittRing<PrimeField> W(PrimeField(p), p, n);
            long mod = ipow(BigInt(p), n).get_si();
            auto all = all_vectors(p, n);
            std::vector<bool> seen(static_cast<std::size_t>(mod), false);
            for (const auto& a : all) seen[static_cast<std::size_t>(to_zpn(p, a))] = true;
            for (bool s : seen) CHECK(s);
            for (const auto& a : all)
                for (const auto& b : all) {
                    long x = to_zpn(p, a), y = to_zpn(p, b);
                    CHECK(to_zpn(p, W.add(W.make(a), W.make(b)).entries) == (x + y) % mod);
                    CHECK(to_zpn(p, W.mul(W.make(a), W.make(b)).entries) == (x * y) % mod);
                }
        }
    }
}

TEST_CASE("ring axioms on W_n(F_p), exhaustive") {
    for (unsigned long p : {2UL, 3UL}) {
        for (std::size_t n = 1; n <= 3; ++n) {
            WittRing<PrimeField> W(PrimeField(p), p, n);
            std::vector<WittVec<std::uint64_t>> el;
            for (const auto& v : all_vectors(p, n)) el.push_back(W.make(v));
            long failures = 0;
            for (const auto& a : el) {
                if (!W.equal(W.add(a, W.zero()), a) || !W.equal(W.mul(a, W.one()), a)) ++failures;
                for (const auto& b : el) {
                    if (!W.equal(W.add(a, b), W.add(b, a)) || !W.equal(W.mul(a, b), W.mul(b, a))) ++failures;
                    for (const auto& c : el) {
                        if (!W.equal(W.add(W.add(a, b), c), W.add(a, W.add(b, c)))) ++failures;
                        if (!W.equal(W.mul(W.mul(a, b), c), W.mul(a, W.mul(b, c)))) ++failures;
                        if (!W.equal(W.mul(a, W.add(b, c)), W.add(W.mul(a, b), W.mul(a, c)))) ++failures;
                    }
                }
                // Additive inverse exists.
                bool has_inverse = false;
                for (const auto& b : el) has_inverse = has_inverse || W.equal(W.add(a, b), W.zero());
                if (!has_inverse) ++failures;
            }
            CHECK_MESSAGE(failures == 0, "p = " << p << ", n = " << n);
            // 1 has additive order p^n.
            unsigned long order = ipow(BigInt(p), n).get_ui();
            CHECK(W.equal(W.scalar(order, W.one()), W.zero()));
            CHECK_FALSE(W.equal(W.scalar(order / p, W.one()), W.zero()));
        }
    }
}

TEST_CASE("small examples in characteristic p") {
    WittRing<PrimeField> W2(PrimeField(2), 2, 2);
    CHECK(W2.add(W2.make({1, 0}), W2.make({1, 0})).entries == std::vector<std::uint64_t>{0, 1});
    auto a = W2.make({1, 1});
    CHECK(W2.equal(W2.add(a, W2.zero()), a));

    GradedPolyRing R(3, {"x", "y"}, {Rational(1), Rational(1)});
    WittRing<GradedPolyRing> W(R, 3, 3);
    auto x = R.variable("x"), y = R.variable("y");
    CHECK(W.equal(W.mul(W.teichmuller(x), W.teichmuller(y)), W.teichmuller(R.mul(x, y))));

    GradedPolyRing R2(2, {"x"}, {Rational(1)});
    WittRing<GradedPolyRing> V2(R2, 2, 2);
    auto f = V2.frobenius(V2.make({R2.parse("1"), R2.parse("x")}));
    CHECK(V2.format(f) == std::vector<std::string>{"1", "x^2"});

    WittRing<IntegerRing> Z(IntegerRing{}, 2, 2);
    CHECK_THROWS_AS(Z.frobenius(Z.one()), Error);
    CHECK_THROWS_AS(W2.add(W2.make({1, 0}), WittVec<std::uint64_t>{2, {1, 0, 0}}), Error);
    CHECK_THROWS_AS(W2.make({1}), Error);
    CHECK_THROWS_AS(WittRing<PrimeField>(PrimeField(3), 2, 2), Error);
}

TEST_CASE("V, F and products of Verschiebung lifts") {
    for (unsigned long p : {2UL, 3UL}) {
        const std::size_t n = p == 2 ? 4 : 3;
        GradedPolyRing R(p, {"a", "b"}, {Rational(1), Rational(1)});
        WittRing<GradedPolyRing> W(R, p, n);
        auto ta = W.teichmuller(R.variable("a")), tb = W.teichmuller(R.variable("b"));
        auto Vpow = [&](WittVec<FpPoly> v, std::size_t k) {
            for (std::size_t i = 0; i < k; ++i) v = W.verschiebung(v);
            return v;
        };
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t mp = 0; mp + m < n; ++mp) {
                auto lhs = W.mul(Vpow(ta, m), Vpow(tb, mp));
                auto ea = ring_pow(R, R.variable("a"), ipow(BigInt(p), mp).get_ui());
                auto eb = ring_pow(R, R.variable("b"), ipow(BigInt(p), m).get_ui());
                auto rhs = Vpow(W.teichmuller(R.mul(ea, eb)), m + mp);
                CHECK(W.equal(lhs, rhs));
            }
        // F V = p on random elements.
        std::mt19937_64 rng(p);
        std::uniform_int_distribution<int> c(0, static_cast<int>(p) - 1), e(0, 2);
        for (int t = 0; t < 10; ++t) {
            std::vector<FpPoly> entries;
            for (std::size_t i = 0; i < n; ++i) {
                FpPoly f = R.zero();
                for (int k = 0; k < 3; ++k) {
                    FpPoly term = R.from_integer(BigInt(c(rng)));
                    term = R.mul(term, ring_pow(R, R.variable("a"), static_cast<unsigned long>(e(rng))));
                    term = R.mul(term, ring_pow(R, R.variable("b"), static_cast<unsigned long>(e(rng))));
                    f = R.add(f, term);
                }
                entries.push_back(f);
            }
            auto v = W.make(entries);
            CHECK(W.equal(W.frobenius(W.verschiebung(v)), W.scalar(p, v)));
            CHECK(W.equal(W.verschiebung(W.frobenius(v)), W.scalar(p, v)));
            CHECK(W.restrict(v, 2).entries.size() == 2);
            auto ext = W.verschiebung_extend(v);
            CHECK(ext.entries.size() == n + 1);
            WittRing<GradedPolyRing> W5(R, p, n + 1);
            CHECK(W.equal(W.make(W5.restrict(ext, n).entries), W.verschiebung(v)));
        }
    }
}

TEST_CASE("restriction is a ring homomorphism") {
    WittRing<PrimeField> W3(PrimeField(3), 3, 3);
    WittRing<PrimeField> W2(PrimeField(3), 3, 2);
    for (const auto& a : all_vectors(3, 3))
        for (const auto& b : all_vectors(3, 3)) {
            auto x = W3.make(a), y = W3.make(b);
            CHECK(W2.equal(W3.restrict(W3.add(x, y), 2), W2.add(W3.restrict(x, 2), W3.restrict(y, 2))));
            CHECK(W2.equal(W3.restrict(W3.mul(x, y), 2), W2.mul(W3.restrict(x, 2), W3.restrict(y, 2))));
        }
    CHECK_THROWS_AS(W3.restrict(W3.one(), 0), Error);
    CHECK_THROWS_AS(W3.restrict(W3.one(), 4), Error);
}

TEST_CASE("homogeneous degree examples") {
    GradedPolyRing R(2, {"t"}, {Rational(1)});
    WittRing<GradedPolyRing> W(R, 2, 3);
    auto d = homogeneous_degree(W, W.make({R.parse("t"), R.parse("t^2"), R.zero()}));
    REQUIRE(d);
    CHECK_FALSE(d->any);
    CHECK(d->e == Rational(1));
    d = homogeneous_degree(W, W.make({R.parse("1"), R.zero(), R.zero()}));
    REQUIRE(d);
    CHECK(d->e == Rational(0));
    CHECK_FALSE(homogeneous_degree(W, W.make({R.parse("t"), R.parse("t"), R.zero()})));
    d = homogeneous_degree(W, W.zero());
    REQUIRE(d);
    CHECK(d->any);
    CHECK_FALSE(homogeneous_degree(W, W.make({R.parse("t + 1"), R.zero(), R.zero()})));
}

TEST_CASE("grading closure on monomial samples over F_p[x, t]") {
    for (bool with_relation : {false, true}) {
        for (unsigned long p : {2UL, 3UL}) {
            std::vector<Monomial> rel;
            if (with_relation) rel.push_back(mono({3, 2}));
            GradedPolyRing R(p, {"x", "t"}, {q(1, 2), Rational(1)}, rel);
            const std::size_t n = 3;
            WittRing<GradedPolyRing> W(R, p, n);
            std::mt19937_64 rng(17 + p);
            std::uniform_int_distribution<int> half(0, 4), coef(1, static_cast<int>(p) - 1), pick(0, 1);
            // A homogeneous vector of degree e/2: entry i is a sum of monomials of degree p^i e / 2.
            auto sample = [&](int e) {
                std::vector<FpPoly> entries;
                for (std::size_t i = 0; i < n; ++i) {
                    long target = static_cast<long>(ipow(BigInt(p), i).get_si()) * e;  // in units of 1/2
                    FpPoly f = R.zero();
                    for (long b = 0; 2 * b <= target; ++b) {
                        if (!pick(rng)) continue;
                        long a = target - 2 * b;
                        FpPoly m = R.mul(ring_pow(R, R.variable("x"), static_cast<unsigned long>(a)),
                                         ring_pow(R, R.variable("t"), static_cast<unsigned long>(b)));
                        f = R.add(f, R.mul(R.from_integer(BigInt(coef(rng))), m));
                    }
                    entries.push_back(f);
                }
                return W.make(entries);
            };
            auto degree_is = [&](const WittVec<FpPoly>& v, const Rational& e) {
                auto d = homogeneous_degree(W, v);
                return d && (d->any || d->e == e);
            };
            for (int t = 0; t < 20; ++t) {
                int e1 = half(rng), e2 = half(rng);
                auto a = sample(e1), a2 = sample(e1), b = sample(e2);
                Rational r1 = q(e1, 2), r2 = q(e2, 2);
                REQUIRE(degree_is(a, r1));
                CHECK(degree_is(W.add(a, a2), r1));
                CHECK(degree_is(W.mul(a, b), r1 + r2));
                CHECK(degree_is(W.frobenius(a), r1 * Rational(static_cast<long>(p))));
                CHECK(degree_is(W.verschiebung(a), r1 / Rational(static_cast<long>(p))));
                auto ra = W.restrict(a, 2);
                WittRing<GradedPolyRing> Wr(R, p, 2);
                auto d = homogeneous_degree(Wr, ra);
                CHECK((d && (d->any || d->e == r1)));
                WittRing<GradedPolyRing> We(R, p, n + 1);
                auto de = homogeneous_degree(We, W.verschiebung_extend(a));
                CHECK((de && (de->any || de->e == r1 / Rational(static_cast<long>(p)))));
            }
        }
    }
}
