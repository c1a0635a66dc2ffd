#include "qfs/delpezzo.hpp"

#include "qfs/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace qfs {

void DelPezzoCase::validate() const {
    if (p < 2 || !is_prime(BigInt(p))) throw Error("composite-p", std::to_string(p) + " is not prime");
    if (coefficients.size() != 4) throw Error("invalid-argument", "expected four coefficients, one per line");
    for (const auto& a : coefficients) {
        if (!is_standard(a)) throw Error("invalid-argument", a.pretty() + " is not a standard coefficient");
    }
}

long DelPezzoCase::reduced_components() const {
    long r = 0;
    for (const auto& a : coefficients) r += a.sign() != 0 ? 1 : 0;
    return r;
}

std::vector<unsigned long> DelPezzoCase::denominators() const {
    std::vector<unsigned long> out;
    for (const auto& a : coefficients) out.push_back(a.den().get_ui());
    return out;
}

namespace {

DelPezzoCase make_case(const char* label, unsigned long p, std::initializer_list<unsigned long> ms) {
    DelPezzoCase c;
    c.p = p;
    c.label = label;
    for (auto m : ms) c.coefficients.push_back(standard_coefficient(BigInt(m)));
    return c;
}

}  // namespace

const std::vector<DelPezzoCase>& known_cases() {
    static const std::vector<DelPezzoCase> cases = {
        make_case("i", 11, {3, 3, 4, 11}),  make_case("ii", 17, {2, 3, 9, 17}), make_case("iii", 19, {2, 4, 5, 19}),
        make_case("iv", 23, {2, 3, 8, 23}), make_case("v", 41, {2, 3, 7, 41}),
    };
    return cases;
}

const DelPezzoCase& known_case(const std::string& label) {
    for (const auto& c : known_cases()) {
        if (c.label == label) return c;
    }
    throw Error("unknown-id", "no shipped case '" + label + "' (expected i, ii, iii, iv or v)");
}

LdpReport verify_ldp(const DelPezzoCase& c) {
    c.validate();
    Rational deg(-3);
    for (const auto& a : c.coefficients) deg += a;
    return {deg, deg.sign() < 0};
}

BigInt floor_p_degree(const DelPezzoCase& c, unsigned long ell) {
    c.validate();
    BigInt q = ipow(BigInt(c.p), ell);
    BigInt deg = -3 * q;
    for (const auto& a : c.coefficients) deg += floor_part(Rational(q) * a);
    return deg;
}

DelPezzoCase SearchHit::as_case() const {
    DelPezzoCase c;
    c.p = p;
    for (auto mi : m) c.coefficients.push_back(standard_coefficient(BigInt(mi)));
    for (const auto& k : known_cases()) {
        if (k.p == p && k.coefficients == c.coefficients) c.label = k.label;
    }
    return c;
}

unsigned default_threads() {
    if (const char* env = std::getenv("QFS_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

std::string hit_label(unsigned long p, const std::array<unsigned long, 4>& m) {
    for (const auto& k : known_cases()) {
        std::array<unsigned long, 4> km{};
        auto ds = k.denominators();
        std::copy(ds.begin(), ds.end(), km.begin());
        std::sort(km.begin(), km.end());
        if (k.p == p && km == m) return "listed";
    }
    if (p == 7 || p == 13 || p == 29 || p == 31 || p == 37) return "candidate-verdict-unknown";
    return "candidate";
}

// With a_i = (m_i - 1)/m_i: deg(K + Delta) < 0 iff sum 1/m_i > 1, and
// floor(p a_i) = p - ceil(p / m_i), so deg floor(pD) = p - sum ceil(p / m_i).
std::vector<SearchHit> search_prime(unsigned long p, unsigned long m_bound) {
    std::vector<SearchHit> out;
    auto ceil_div = [p](unsigned long m) { return (p + m - 1) / m; };
    for (unsigned long a = 2; a <= m_bound; ++a) {
        for (unsigned long b = a; b <= m_bound; ++b) {
            for (unsigned long c = b; c <= m_bound; ++c) {
                unsigned long partial = ceil_div(a) + ceil_div(b) + ceil_div(c);
                if (partial > p + 1) continue;
                for (unsigned long d = c; d <= m_bound; ++d) {
                    if (partial + ceil_div(d) != p + 1) continue;
                    unsigned __int128 prod = static_cast<unsigned __int128>(a) * b * c * d;
                    unsigned __int128 sum = static_cast<unsigned __int128>(b) * c * d + a * c * d + a * b * d + a * b * c;
                    if (sum <= prod) continue;
                    SearchHit h;
                    h.p = p;
                    h.m = {a, b, c, d};
                    h.label = hit_label(p, h.m);
                    out.push_back(h);
                }
            }
        }
    }
    return out;
}

}  // namespace

std::vector<SearchHit> search_candidates(unsigned long p_max, unsigned long m_bound, unsigned threads) {
    if (p_max < 1 || m_bound < 1) throw Error("invalid-argument", "bounds must be positive");
    std::vector<unsigned long> primes;
    for (unsigned long p = 2; p <= p_max; ++p) {
        if (is_prime(BigInt(p))) primes.push_back(p);
    }
    if (threads == 0) threads = default_threads();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(primes.size())));

    // One slot per prime; each worker fills its own slots, so the merge order is fixed.
    std::vector<std::vector<SearchHit>> per_prime(primes.size());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < primes.size(); i += threads) per_prime[i] = search_prime(primes[i], m_bound);
        });
    }
    for (auto& th : pool) th.join();

    std::vector<SearchHit> out;
    for (auto& v : per_prime) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace qfs
