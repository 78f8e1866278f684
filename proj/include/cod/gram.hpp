#pragma once

// Exact symbolic computation of G^H G. Entries of the Gram matrix are kept
// as cancelled multisets of quadratic monomials s * z_a^(c1) z_b^(c2), so
// orthogonality becomes a syntactic comparison: a design is a COD exactly
// when every off-diagonal entry cancels to nothing and every diagonal entry
// is |z_1|^2 + ... + |z_k|^2.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "cod/design.hpp"

namespace cod {

// One conjugate-or-not variable reference inside a monomial. Ordering is
// (index, conjugated) with the conjugated copy sorting first; this is the
// fixed canonical order the whole library relies on.
struct Factor {
    int var = 0;
    bool conj = false;

    std::pair<int, int> key() const { return {var, conj ? 0 : 1}; }
    friend bool operator==(const Factor&, const Factor&) = default;
};

inline bool operator<(const Factor& a, const Factor& b) { return a.key() < b.key(); }

// A signed product of two factors, normalized so a <= b.
struct QuadTerm {
    int sign = +1;
    Factor a;
    Factor b;

    friend bool operator==(const QuadTerm&, const QuadTerm&) = default;
};

inline QuadTerm make_term(int sign, Factor x, Factor y) {
    if (y < x) std::swap(x, y);
    return QuadTerm{sign, x, y};
}

inline bool term_less(const QuadTerm& s, const QuadTerm& t) {
    auto ks = std::make_tuple(s.a.key(), s.b.key(), s.sign < 0 ? 1 : 0);
    auto kt = std::make_tuple(t.a.key(), t.b.key(), t.sign < 0 ? 1 : 0);
    return ks < kt;
}

inline std::string term_to_string(const QuadTerm& t) {
    std::string s = t.sign < 0 ? "- " : "+ ";
    s += Entry{t.a.var, 1, t.a.conj}.token();
    s += ' ';
    s += Entry{t.b.var, 1, t.b.conj}.token();
    return s;
}

// Cancelled multiset of QuadTerms. Equal terms of opposite sign annihilate
// pairwise; surviving multiplicity is kept as repeated terms.
struct GramEntry {
    std::vector<QuadTerm> terms;  // canonical: sorted, fully cancelled

    static GramEntry from_terms(std::vector<QuadTerm> raw) {
        std::sort(raw.begin(), raw.end(), term_less);
        GramEntry g;
        size_t i = 0;
        while (i < raw.size()) {
            size_t j = i;
            int net = 0;
            while (j < raw.size() && raw[j].a == raw[i].a && raw[j].b == raw[i].b) {
                net += raw[j].sign;
                ++j;
            }
            for (int c = 0; c < (net < 0 ? -net : net); ++c)
                g.terms.push_back(QuadTerm{net < 0 ? -1 : +1, raw[i].a, raw[i].b});
            i = j;
        }
        return g;
    }

    bool is_zero() const { return terms.empty(); }

    std::string to_string() const {
        if (terms.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) s += ", ";
            s += term_to_string(terms[i]);
        }
        return s;
    }

    friend bool operator==(const GramEntry&, const GramEntry&) = default;
};

using GramMatrix = std::vector<std::vector<GramEntry>>;

// The quadratic term contributed to Gram cell (a, b) by one row holding
// entry ea in column a and eb in column b: conj(ea) * eb.
inline QuadTerm cross_term(const Entry& ea, const Entry& eb) {
    return make_term(ea.sign * eb.sign, Factor{ea.var, !ea.conj}, Factor{eb.var, eb.conj});
}

// Entry (a, b) of G^H G as the cancelled formal sum over rows.
inline GramMatrix gram(const Design& d) {
    GramMatrix g(static_cast<size_t>(d.n), std::vector<GramEntry>(static_cast<size_t>(d.n)));
    for (int a = 0; a < d.n; ++a)
        for (int b = 0; b < d.n; ++b) {
            std::vector<QuadTerm> raw;
            for (int r = 0; r < d.p; ++r) {
                const Entry& ea = d.at(r, a);
                const Entry& eb = d.at(r, b);
                if (ea.is_zero() || eb.is_zero()) continue;
                raw.push_back(cross_term(ea, eb));
            }
            g[static_cast<size_t>(a)][static_cast<size_t>(b)] = GramEntry::from_terms(std::move(raw));
        }
    return g;
}

// A defect found by is_cod. col_a == col_b marks a diagonal defect.
struct CodIssue {
    int col_a = 0;
    int col_b = 0;
    std::string detail;
};

struct CodReport {
    bool ok = false;
    std::vector<CodIssue> violations;
    std::vector<std::string> warnings;  // zero rows, repeated variables in a row
};

// Checks G^H G == I_n (|z1|^2 + ... + |zk|^2), reporting every offending
// column pair and every diagonal defect. All-zero rows and rows repeating a
// variable pass or fail on the Gram test alone but are flagged as warnings.
inline CodReport is_cod(const Design& d) {
    validate_design(d);
    CodReport rep;

    for (int r = 0; r < d.p; ++r) {
        if (row_class(d, r) == RowClass::Empty)
            rep.warnings.push_back("row " + std::to_string(r + 1) + " is all zeros");
        std::vector<int> seen;
        for (int c = 0; c < d.n; ++c) {
            int v = d.at(r, c).var;
            if (v == 0) continue;
            if (std::find(seen.begin(), seen.end(), v) != seen.end())
                rep.warnings.push_back("row " + std::to_string(r + 1) + " uses z" + std::to_string(v) +
                                       " more than once");
            seen.push_back(v);
        }
    }

    GramMatrix g = gram(d);
    for (int a = 0; a < d.n; ++a) {
        for (int b = 0; b < d.n; ++b) {
            const GramEntry& e = g[static_cast<size_t>(a)][static_cast<size_t>(b)];
            if (a != b) {
                if (!e.is_zero() && a < b)
                    rep.violations.push_back({a, b, "uncancelled terms: " + e.to_string()});
                continue;
            }
            // Diagonal: expect each |z_j|^2 = + z_j^* z_j exactly once.
            std::vector<int> count(static_cast<size_t>(d.k) + 1, 0);
            bool foreign = false;
            for (const QuadTerm& t : e.terms) {
                if (t.a.var == t.b.var && t.a.conj && !t.b.conj && t.sign > 0)
                    ++count[t.a.var];
                else
                    foreign = true;
            }
            if (foreign)
                rep.violations.push_back({a, a, "unexpected diagonal terms: " + e.to_string()});
            for (int j = 1; j <= d.k; ++j) {
                if (count[j] == 0)
                    rep.violations.push_back({a, a, "missing |z" + std::to_string(j) + "|^2"});
                else if (count[j] > 1)
                    rep.violations.push_back({a, a, "duplicated |z" + std::to_string(j) + "|^2 (count " +
                                                        std::to_string(count[j]) + ")"});
            }
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace cod
