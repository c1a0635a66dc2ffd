#include "qfs/rational.hpp"

#include "qfs/error.hpp"

#include <functional>

namespace qfs {

std::string to_string(const BigInt& v) { return v.get_str(); }

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error("parse-error", "empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw Error("parse-error", "bad integer '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw Error("parse-error", "bad integer '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s, 10);
}

BigInt ipow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw Error("division-by-zero", "rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = gcd(num_, den_);
    if (g != 1) {
        mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(text));
    BigInt d = parse_bigint(text.substr(slash + 1));
    if (d == 0) throw Error("parse-error", "zero denominator in '" + std::string(text) + "'");
    return Rational(parse_bigint(text.substr(0, slash)), d);
}

std::string Rational::str() const { return num_.get_str() + "/" + den_.get_str(); }

std::string Rational::pretty() const {
    return den_ == 1 ? num_.get_str() : str();
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw Error("division-by-zero", "division by zero rational");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigInt floor_part(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    return r;
}

BigInt ceil_part(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    return r;
}

Rational frac_part(const Rational& q) { return q - Rational(floor_part(q)); }

std::optional<BigInt> is_standard(const Rational& q) {
    // (m-1)/m is already reduced, so the stored numerator is den - 1.
    if (q.num() >= 0 && q.num() + 1 == q.den()) return q.den();
    return std::nullopt;
}

Rational standard_coefficient(const BigInt& m) {
    if (m < 1) throw Error("invalid-argument", "standard coefficient needs m >= 1");
    return Rational(m - 1, m);
}

std::string to_string(Space s) { return s == Space::P1 ? "P1" : "P2"; }

Space parse_space(std::string_view text) {
    if (text == "P1") return Space::P1;
    if (text == "P2") return Space::P2;
    throw Error("parse-error", "unknown space '" + std::string(text) + "'");
}

namespace {

BigInt h0_p1(const BigInt& d) { return d >= 0 ? BigInt(d + 1) : BigInt(0); }

BigInt h0_p2(const BigInt& d) {
    if (d < 0) return 0;
    BigInt r = (d + 1) * (d + 2);
    return r / 2;
}

}  // namespace

BigInt h_line_bundle(Space space, const BigInt& degree, int cohom_degree) {
    if (cohom_degree < 0 || cohom_degree > 2) {
        throw Error("invalid-argument",
                    "cohomological degree " + std::to_string(cohom_degree) + " outside {0,1,2}");
    }
    if (space == Space::P1) {
        switch (cohom_degree) {
            case 0: return h0_p1(degree);
            case 1: return h0_p1(-2 - degree);
            default: return 0;
        }
    }
    switch (cohom_degree) {
        case 0: return h0_p2(degree);
        case 1: return 0;
        default: return h0_p2(-3 - degree);
    }
}

}  // namespace qfs

std::size_t std::hash<qfs::Rational>::operator()(const qfs::Rational& q) const noexcept {
    std::size_t h1 = std::hash<std::string>{}(q.num().get_str(16));
    std::size_t h2 = std::hash<std::string>{}(q.den().get_str(16));
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}
