#include "qfs/polynomial.hpp"

#include "qfs/error.hpp"

#include <cctype>
#include <unordered_map>

namespace qfs {

namespace {

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto e : m) {
            h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

Monomial product(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
    return m;
}

std::string monomial_str(const Monomial& m, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += i < names.size() ? names[i] : "v" + std::to_string(i);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

template <class Terms>
std::string terms_str(const Terms& terms, const std::vector<std::string>& names) {
    if (terms.empty()) return "0";
    std::string s;
    // Highest total degree first reads naturally.
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        BigInt c(it->second);
        std::string mono = monomial_str(it->first, names);
        bool neg = c < 0;
        BigInt a = abs(c);
        std::string piece;
        if (mono.empty()) {
            piece = a.get_str();
        } else if (a == 1) {
            piece = mono;
        } else {
            piece = a.get_str() + "*" + mono;
        }
        if (s.empty()) {
            s = neg ? "-" + piece : piece;
        } else {
            s += neg ? " - " : " + ";
            s += piece;
        }
    }
    return s;
}

}  // namespace

IntPoly IntPoly::variable(std::size_t nvars, std::size_t i) {
    IntPoly p(nvars);
    Monomial m(nvars, 0);
    m.at(i) = 1;
    p.terms_[m] = 1;
    return p;
}

IntPoly IntPoly::constant(std::size_t nvars, const BigInt& c) {
    IntPoly p(nvars);
    if (c != 0) p.terms_[Monomial(nvars, 0)] = c;
    return p;
}

BigInt IntPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void IntPoly::add_term(const Monomial& m, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    std::unordered_map<Monomial, BigInt, MonomialHash> acc;
    acc.reserve(terms_.size() * o.terms_.size() / 4 + 16);
    BigInt t;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            mpz_mul(t.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
            acc[product(ma, mb)] += t;
        }
    }
    IntPoly r(nvars_);
    for (auto& [m, c] : acc) {
        if (c != 0) r.terms_.emplace(m, std::move(c));
    }
    return r;
}

IntPoly IntPoly::scaled(const BigInt& c) const {
    IntPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

IntPoly IntPoly::pow(unsigned long e) const {
    IntPoly result = constant(nvars_, 1);
    IntPoly base = *this;
    while (e > 0) {
        if (e & 1UL) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

IntPoly IntPoly::divided_exact(const BigInt& c) const {
    IntPoly r(nvars_);
    for (const auto& [m, v] : terms_) {
        if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t())) {
            throw Error("internal", "coefficient " + v.get_str() + " not divisible by " + c.get_str());
        }
        BigInt q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
        r.terms_.emplace(m, std::move(q));
    }
    return r;
}

std::string IntPoly::str(const std::vector<std::string>& names) const { return terms_str(terms_, names); }

FpPoly FpPoly::constant(std::uint64_t p, std::size_t nvars, const BigInt& c) {
    FpPoly f(p, nvars);
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    if (r != 0) f.terms_[Monomial(nvars, 0)] = r.get_ui();
    return f;
}

FpPoly FpPoly::variable(std::uint64_t p, std::size_t nvars, std::size_t i) {
    FpPoly f(p, nvars);
    Monomial m(nvars, 0);
    m.at(i) = 1;
    f.terms_[m] = 1 % p;
    if (f.terms_[m] == 0) f.terms_.clear();
    return f;
}

void FpPoly::add_term(const Monomial& m, std::uint64_t c) {
    c %= p_;
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second = (it->second + c) % p_;
        if (it->second == 0) terms_.erase(it);
    }
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    FpPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

FpPoly FpPoly::operator-() const {
    FpPoly r(p_, nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, (p_ - c) % p_);
    return r;
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    FpPoly r(p_, nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) r.add_term(product(ma, mb), (ca * cb) % p_);
    }
    return r;
}

std::string FpPoly::str(const std::vector<std::string>& names) const {
    std::map<Monomial, BigInt> t;
    for (const auto& [m, c] : terms_) t.emplace(m, BigInt(static_cast<unsigned long>(c)));
    return terms_str(t, names);
}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& text, std::uint64_t p, const std::vector<std::string>& names)
        : s_(text), p_(p), names_(names) {}

    FpPoly parse() {
        FpPoly acc(p_, names_.size());
        skip();
        if (pos_ == s_.size()) fail("empty polynomial");
        bool first = true;
        while (pos_ < s_.size()) {
            bool neg = false;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                neg = s_[pos_] == '-';
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            FpPoly t = term();
            acc = acc + (neg ? -t : t);
            first = false;
            skip();
        }
        return acc;
    }

private:
    FpPoly term() {
        FpPoly t = factor();
        skip();
        while (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            skip();
            t = t * factor();
            skip();
        }
        return t;
    }

    FpPoly factor() {
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            return FpPoly::constant(p_, names_.size(), BigInt(digits(), 10));
        }
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            std::size_t idx = names_.size();
            for (std::size_t i = 0; i < names_.size(); ++i) {
                if (names_[i] == name) idx = i;
            }
            if (idx == names_.size()) fail("unknown variable '" + name + "'");
            FpPoly v = FpPoly::variable(p_, names_.size(), idx);
            skip();
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                skip();
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
                unsigned long e = std::stoul(digits());
                FpPoly r = FpPoly::constant(p_, names_.size(), 1);
                for (unsigned long i = 0; i < e; ++i) r = r * v;
                return r;
            }
            return v;
        }
        fail("expected a number or a variable");
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("parse-error", what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    const std::string& s_;
    std::uint64_t p_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> scan_variables(const std::vector<std::string>& texts) {
    std::vector<std::string> names;
    for (const auto& s : texts) {
        std::size_t i = 0;
        while (i < s.size()) {
            if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
                std::size_t start = i;
                while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
                std::string name = s.substr(start, i - start);
                bool seen = false;
                for (const auto& n : names) seen = seen || n == name;
                if (!seen) names.push_back(name);
            } else {
                ++i;
            }
        }
    }
    return names;
}

FpPoly parse_fp_poly(const std::string& text, std::uint64_t p, const std::vector<std::string>& names) {
    return PolyParser(text, p, names).parse();
}

}  // namespace qfs
