#include "qfs/witt.hpp"

#include <map>
#include <mutex>

namespace qfs {

std::vector<std::string> WittPolyCache::variable_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) names.push_back("y" + std::to_string(i));
    return names;
}

IntPoly ghost_polynomial(unsigned long p, std::size_t n, std::size_t m, std::size_t offset) {
    IntPoly w(2 * n);
    BigInt pi = 1;
    for (std::size_t i = 0; i <= m; ++i) {
        unsigned long e = ipow(BigInt(p), m - i).get_ui();
        w += IntPoly::variable(2 * n, offset + i).pow(e).scaled(pi);
        pi *= p;
    }
    return w;
}

namespace {

// Solves sum_{i<=m} p^i Q_i^(p^(m-i)) = target for Q_m, dividing exactly by p^m.
IntPoly solve_ghost(unsigned long p, std::size_t m, const std::vector<IntPoly>& lower, IntPoly target) {
    BigInt pi = 1;
    for (std::size_t i = 0; i < m; ++i) {
        unsigned long e = ipow(BigInt(p), m - i).get_ui();
        target -= lower[i].pow(e).scaled(pi);
        pi *= p;
    }
    return target.divided_exact(pi);
}

std::shared_ptr<const WittPolyCache> compute_cache(unsigned long p, std::size_t n) {
    auto c = std::make_shared<WittPolyCache>();
    c->p = p;
    c->n = n;
    for (std::size_t m = 0; m < n; ++m) {
        IntPoly wx = ghost_polynomial(p, n, m, 0);
        IntPoly wy = ghost_polynomial(p, n, m, n);
        c->sum.push_back(solve_ghost(p, m, c->sum, wx + wy));
        c->product.push_back(solve_ghost(p, m, c->product, wx * wy));
    }
    return c;
}

}  // namespace

std::shared_ptr<const WittPolyCache> build_cache(unsigned long p, std::size_t n) {
    if (!is_prime(BigInt(p))) throw Error("composite-p", std::to_string(p) + " is not prime");
    if (n < 1) throw Error("invalid-argument", "Witt length must be at least 1");
    static std::mutex mu;
    static std::map<std::pair<unsigned long, std::size_t>, std::shared_ptr<const WittPolyCache>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({p, n});
        if (it != memo.end()) return it->second;
    }
    auto c = compute_cache(p, n);
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(std::make_pair(p, n), c).first->second;
}

PrimeField::PrimeField(std::uint64_t prime) : p(prime) {
    if (prime >= (1ULL << 31) || !is_prime(BigInt(static_cast<unsigned long>(prime)))) {
        throw Error("composite-p", std::to_string(prime) + " is not a supported prime");
    }
}

PrimeField::Element PrimeField::from_integer(const BigInt& k) const {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), k.get_mpz_t(), p);
    return r.get_ui();
}

std::vector<PrimeField::Element> PrimeField::elements() const {
    std::vector<Element> out;
    for (std::uint64_t a = 0; a < p; ++a) out.push_back(a);
    return out;
}

GradedPolyRing::GradedPolyRing(std::uint64_t p, std::vector<std::string> names, std::vector<Rational> degrees,
                               std::vector<Monomial> monomial_relations)
    : p_(p), names_(std::move(names)), degrees_(std::move(degrees)), relations_(std::move(monomial_relations)) {
    if (!is_prime(BigInt(static_cast<unsigned long>(p))) || p >= (1ULL << 31)) {
        throw Error("composite-p", std::to_string(p) + " is not a supported prime");
    }
    if (names_.size() != degrees_.size()) throw Error("invalid-argument", "one degree per generator");
    for (const auto& r : relations_) {
        if (r.size() != names_.size()) throw Error("invalid-argument", "relation has the wrong number of exponents");
    }
}

GradedPolyRing::Element GradedPolyRing::variable(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return reduce(FpPoly::variable(p_, names_.size(), i));
    }
    throw Error("unknown-id", "unknown generator '" + name + "'");
}

GradedPolyRing::Element GradedPolyRing::parse(const std::string& text) const {
    return reduce(parse_fp_poly(text, p_, names_));
}

GradedPolyRing::Element GradedPolyRing::reduce(Element a) const {
    if (relations_.empty()) return a;
    FpPoly r(p_, names_.size());
    for (const auto& [m, c] : a.terms()) {
        bool killed = false;
        for (const auto& rel : relations_) {
            bool divides = true;
            for (std::size_t i = 0; i < m.size() && divides; ++i) divides = rel[i] <= m[i];
            killed = killed || divides;
        }
        if (!killed) {
            FpPoly t(p_, names_.size());
            t = FpPoly::constant(p_, names_.size(), BigInt(static_cast<unsigned long>(c)));
            FpPoly mono = FpPoly::constant(p_, names_.size(), 1);
            for (std::size_t i = 0; i < m.size(); ++i) {
                for (std::uint32_t k = 0; k < m[i]; ++k) mono = mono * FpPoly::variable(p_, names_.size(), i);
            }
            r = r + t * mono;
        }
    }
    return r;
}

Rational GradedPolyRing::monomial_degree(const Monomial& m) const {
    Rational d;
    for (std::size_t i = 0; i < m.size(); ++i) d += degrees_[i] * Rational(static_cast<long>(m[i]));
    return d;
}

std::optional<Rational> GradedPolyRing::degree(const Element& a) const {
    std::optional<Rational> d;
    for (const auto& [m, c] : a.terms()) {
        Rational dm = monomial_degree(m);
        if (d && *d != dm) return std::nullopt;
        d = dm;
    }
    return d;
}

}  // namespace qfs
