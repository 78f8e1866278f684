#pragma once

// Zero patterns, left patterns, complement rows, the constructive induction
// step behind the delay lower bounds, the per-design pattern census, and the
// reference bound formulas.
//
// Bit convention: pattern bit c is 1 exactly when the row is NONZERO in
// column c. (The opposite convention is common elsewhere; everything in this
// library uses this one.)

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cod/bcod.hpp"
#include "cod/design.hpp"
#include "cod/standard_form.hpp"

namespace cod {

struct ZeroPattern {
    uint64_t bits = 0;  // bit c == column c nonzero
    int length = 0;

    bool test(int c) const { return (bits >> c) & 1u; }
    int weight() const { return std::popcount(bits); }

    ZeroPattern complemented() const {
        uint64_t mask = (length == 64) ? ~0ull : ((1ull << length) - 1);
        return ZeroPattern{~bits & mask, length};
    }

    std::string str() const {
        std::string s(static_cast<size_t>(length), '0');
        for (int c = 0; c < length; ++c)
            if (test(c)) s[static_cast<size_t>(c)] = '1';
        return s;
    }

    friend bool operator==(const ZeroPattern&, const ZeroPattern&) = default;
};

struct LeftPattern {
    uint64_t bits = 0;
    int length = 0;

    bool test(int c) const { return (bits >> c) & 1u; }
    int weight() const { return std::popcount(bits); }

    std::string str() const {
        std::string s(static_cast<size_t>(length), '0');
        for (int c = 0; c < length; ++c)
            if (test(c)) s[static_cast<size_t>(c)] = '1';
        return s;
    }

    friend bool operator==(const LeftPattern&, const LeftPattern&) = default;
};

inline ZeroPattern zero_pattern(const Design& d, int r) {
    if (r < 0 || r >= d.p) throw std::out_of_range("row index out of range");
    if (d.n > 64) throw std::invalid_argument("patterns support up to 64 columns");
    ZeroPattern zp{0, d.n};
    for (int c = 0; c < d.n; ++c)
        if (!d.at(r, c).is_zero()) zp.bits |= 1ull << c;
    return zp;
}

inline LeftPattern left_pattern(const Design& d, int r) {
    if (d.n % 2 != 0) throw std::invalid_argument("left pattern requires an even number of columns");
    ZeroPattern zp = zero_pattern(d, r);
    int m = d.n / 2;
    return LeftPattern{zp.bits & ((1ull << m) - 1), m};
}

inline int left_weight(const Design& d, int r) { return left_pattern(d, r).weight(); }

namespace detail {

inline std::vector<int> row_variables(const Design& d, int r) {
    std::vector<int> vars;
    for (int c = 0; c < d.n; ++c)
        if (!d.at(r, c).is_zero()) vars.push_back(d.at(r, c).var);
    std::sort(vars.begin(), vars.end());
    return vars;
}

}  // namespace detail

// The unique partner row with complementary zero pattern, opposite
// conjugation, and the same variable set. Zero or multiple candidates both
// mean the input is not a valid balanced design.
inline int find_complement(const Design& d, int r) {
    ZeroPattern want = zero_pattern(d, r).complemented();
    RowClass cls = row_class(d, r);
    if (cls != RowClass::NonConjugated && cls != RowClass::Conjugated)
        throw std::invalid_argument("find_complement: row is empty or mixes conjugations");
    std::vector<int> vars = detail::row_variables(d, r);

    int found = -1;
    for (int rc = 0; rc < d.p; ++rc) {
        if (rc == r) continue;
        if (!(zero_pattern(d, rc) == want)) continue;
        RowClass cls2 = row_class(d, rc);
        if (cls2 == RowClass::Mixed || cls2 == RowClass::Empty || cls2 == cls) continue;
        if (detail::row_variables(d, rc) != vars) continue;
        if (found != -1)
            throw std::runtime_error("row " + std::to_string(r + 1) +
                                     " has multiple complement rows; design is not a valid BCOD");
        found = rc;
    }
    if (found == -1)
        throw std::runtime_error("row " + std::to_string(r + 1) +
                                 " has no complement row; design is not a valid BCOD");
    return found;
}

// Constructive step: from a standard-form row r with left pattern alpha and
// alpha(i) = alpha(j) = 0, produces a row with left pattern
// alpha ^ e_i ^ e_j of the same conjugation. Reads the variable at column
// m+i of r and returns the row carrying that variable, same conjugation, in
// column j.
inline int induce_step(const Design& d, int r, int i, int j) {
    if (r < 0 || r >= d.p) throw std::out_of_range("row index out of range");
    if (!is_standard_form(d))  // also rejects non-balanced designs
        throw std::invalid_argument("induce_step: design is not in standard form");
    const int m = d.n / 2;
    if (i < 0 || i >= m || j < 0 || j >= m || i == j)
        throw std::invalid_argument("induce_step: need distinct columns in [0, m)");
    LeftPattern alpha = left_pattern(d, r);
    if (alpha.weight() > m - 2) throw std::invalid_argument("induce_step: left weight exceeds m-2");
    if (alpha.test(i) || alpha.test(j))
        throw std::invalid_argument("induce_step: alpha(i) and alpha(j) must be 0");

    const Entry& carrier = d.at(r, m + i);
    if (carrier.is_zero())
        throw std::runtime_error("induce_step: column m+i is zero; design is not a valid standard form");
    for (int r2 = 0; r2 < d.p; ++r2) {
        const Entry& e = d.at(r2, j);
        if (e.var == carrier.var && e.conj == carrier.conj) return r2;
    }
    throw std::runtime_error("induce_step: no carrier row found; design is not a valid standard form");
}

// Exact row counts per (left pattern, conjugation class).
struct Census {
    int m = 0;
    int total = 0;
    std::map<std::pair<uint64_t, bool>, int> counts;  // (bits, conjugated) -> rows

    int count(uint64_t bits, bool conjugated) const {
        auto it = counts.find({bits, conjugated});
        return it == counts.end() ? 0 : it->second;
    }
};

inline Census census(const Design& d) {
    if (d.n % 2 != 0) throw std::invalid_argument("census requires an even number of columns");
    Census c;
    c.m = d.n / 2;
    for (int r = 0; r < d.p; ++r) {
        RowClass cls = row_class(d, r);
        if (cls == RowClass::Mixed || cls == RowClass::Empty)
            throw std::runtime_error("census: row " + std::to_string(r + 1) +
                                     " is not conjugation separated");
        ++c.counts[{left_pattern(d, r).bits, cls == RowClass::Conjugated}];
        ++c.total;
    }
    return c;
}

// Checks the combinatorial consequences behind the delay lower bound
// 2k >= 2^m: for m odd every left pattern must occur; for m even every
// odd-weight left pattern must occur in both conjugation classes.
struct DelayBoundReport {
    bool ok = false;
    int p = 0;
    int m = 0;
    uint64_t required_rows = 0;  // 2^m
    bool even_case = false;
    std::vector<std::string> missing;
};

inline DelayBoundReport verify_delay_bound(const Design& d) {
    if (!is_bcod(d).ok) throw std::invalid_argument("verify_delay_bound: design is not a BCOD");
    DelayBoundReport rep;
    rep.p = d.p;
    rep.m = d.n / 2;
    rep.required_rows = 1ull << rep.m;
    rep.even_case = rep.m % 2 == 0;
    Census c = census(d);

    if (!rep.even_case) {
        for (uint64_t bits = 0; bits < (1ull << rep.m); ++bits)
            if (c.count(bits, false) + c.count(bits, true) == 0)
                rep.missing.push_back("left pattern " + LeftPattern{bits, rep.m}.str() + " absent");
    } else {
        for (uint64_t bits = 0; bits < (1ull << rep.m); ++bits) {
            if (std::popcount(bits) % 2 == 0) continue;
            for (bool conj : {false, true})
                if (c.count(bits, conj) == 0)
                    rep.missing.push_back("left pattern " + LeftPattern{bits, rep.m}.str() + " absent in " +
                                          (conj ? "conjugated" : "plain") + " class");
        }
    }
    rep.ok = rep.missing.empty();
    return rep;
}

// Hurwitz-Radon exponent: the delay of a full-rate real orthogonal design
// with n columns is nu(n) = 2^delta(n).
inline int delta(int n) {
    if (n < 1) throw std::invalid_argument("delta: n must be >= 1");
    int t = (n - 1) / 8;
    int c = n - 8 * t;  // 1..8
    if (c == 1) return 4 * t;
    if (c == 2) return 4 * t + 1;
    if (c <= 4) return 4 * t + 2;
    return 4 * t + 3;
}

inline uint64_t nu(int n) {
    int e = delta(n);
    if (e >= 64) throw std::overflow_error("nu: result does not fit in 64 bits");
    return 1ull << e;
}

namespace detail {

inline uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    uint64_t res = 1;
    for (int i = 1; i <= k; ++i) {
        // exact at every step: res * (n-k+i) is divisible by i
        uint64_t num = res * static_cast<uint64_t>(n - k + i);
        if (res != 0 && num / res != static_cast<uint64_t>(n - k + i))
            throw std::overflow_error("binomial overflows 64 bits");
        res = num / static_cast<uint64_t>(i);
    }
    return res;
}

}  // namespace detail

// Minimal delay of a maximum-rate COD with n antennas: binom(2m, m+1) with
// m = ceil(n/2), doubled when n == 2 (mod 4).
inline uint64_t max_rate_delay_bound(int n) {
    if (n < 2) throw std::invalid_argument("max_rate_delay_bound: n must be >= 2");
    if (n > 64) throw std::invalid_argument("max_rate_delay_bound: n too large");
    int m = (n + 1) / 2;
    uint64_t base = detail::binomial(2 * m, m + 1);
    return (n % 4 == 2) ? 2 * base : base;
}

}  // namespace cod
