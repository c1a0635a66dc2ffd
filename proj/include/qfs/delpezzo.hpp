/**
 * @file delpezzo.hpp
 * @brief Pairs (P^2, sum a_i L_i) on four general lines with standard
 *        coefficients: degree arithmetic and the candidate search.
 */
#pragma once

#include "qfs/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace qfs {

struct DelPezzoCase {
    unsigned long p = 2;
    std::vector<Rational> coefficients;  // one per line, each (m-1)/m
    std::string label;                   // empty unless this is a shipped case

    /// Throws "composite-p" or "invalid-argument".
    void validate() const;
    /// Number of lines with nonzero coefficient.
    long reduced_components() const;
    /// The m_i of (m_i - 1)/m_i, in input order.
    std::vector<unsigned long> denominators() const;
};

/// The shipped examples, labelled "i" .. "v".
const std::vector<DelPezzoCase>& known_cases();
/// Throws "unknown-id" for anything but "i" .. "v".
const DelPezzoCase& known_case(const std::string& label);

struct LdpReport {
    Rational deg_K_plus_Delta;
    bool ample = false;
};

LdpReport verify_ldp(const DelPezzoCase& c);

/// deg floor(p^l (K + Delta)) = -3 p^l + sum floor(p^l a_i); l = 0 gives deg floor(D).
BigInt floor_p_degree(const DelPezzoCase& c, unsigned long ell);

struct SearchHit {
    unsigned long p = 0;
    std::array<unsigned long, 4> m{};  // sorted ascending
    std::string label;                 // "listed", "candidate-verdict-unknown" or "candidate"
    DelPezzoCase as_case() const;
};

/// Primes p <= p_max and sorted 4-tuples 2 <= m_1 <= .. <= m_4 <= m_bound with
/// deg(K + Delta) < 0 and deg floor(p (K + Delta)) = -1. Sorted by (p, m).
/// Parallel over primes; QFS_THREADS caps the worker count.
std::vector<SearchHit> search_candidates(unsigned long p_max, unsigned long m_bound, unsigned threads = 0);

/// Worker count from QFS_THREADS, else hardware concurrency.
unsigned default_threads();

}  // namespace qfs
