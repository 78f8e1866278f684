#pragma once

// Shared fixtures and test-only oracles.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "cod/cod.hpp"

namespace fixtures {

// The 4x4 balanced fixture used throughout: B_1 form with M_1 = [[0,z2],[-z2,0]].
inline const char* d2_text =
    "4 4 2\n"
    "z1 0 0 z2\n"
    "0 z1 -z2 0\n"
    "0 z2* z1* 0\n"
    "-z2* 0 0 z1*";

inline const char* base_text = "2 2 1\nz1 0\n0 z1*";
inline const char* alamouti_text = "2 2 2\nz1 z2\n-z2* z1*";
// Sign-flipped Alamouti: the cross terms add instead of cancelling.
inline const char* flipped_alamouti_text = "2 2 2\nz1 z2\nz2* z1*";
// COD built from a Trivial 2x2 only; z1* never occurs, so it is not balanced.
inline const char* t_design_text = "2 2 1\nz1 0\n0 z1";

inline cod::Design d2() { return cod::parse_design(d2_text); }
inline cod::Design base() { return cod::parse_design(base_text); }
inline cod::Design alamouti() { return cod::parse_design(alamouti_text); }
inline cod::Design flipped_alamouti() { return cod::parse_design(flipped_alamouti_text); }
inline cod::Design t_design() { return cod::parse_design(t_design_text); }

// Two disjoint copies of the 4x4 fixture stacked block-diagonally
// (variables 1,2 and 3,4; 8 rows, 8 columns). Decomposes into two atoms.
inline cod::Design stacked_two_d2() {
    cod::Design one = d2();
    cod::Design d = cod::make_design(8, 8, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            d.at(r, c) = one.at(r, c);
            cod::Entry e = one.at(r, c);
            if (!e.is_zero()) e.var += 2;
            d.at(r + 4, c + 4) = e;
        }
    return d;
}

// ---------------------------------------------------------------------------
// Independent oracle: evaluate G^H G exactly over Gaussian integers. If the
// symbolic checker says a design is orthogonal, the identity must hold at
// every substitution; random points catch a broken checker with overwhelming
// probability.

struct ComplexInt {
    long long re = 0, im = 0;

    ComplexInt conj() const { return {re, -im}; }
    friend ComplexInt operator+(ComplexInt a, ComplexInt b) { return {a.re + b.re, a.im + b.im}; }
    friend ComplexInt operator*(ComplexInt a, ComplexInt b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const ComplexInt&, const ComplexInt&) = default;
};

inline bool cod_axiom_numeric(const cod::Design& d, std::mt19937& rng) {
    std::uniform_int_distribution<long long> coef(-9, 9);
    std::vector<ComplexInt> val(static_cast<size_t>(d.k) + 1);
    for (int j = 1; j <= d.k; ++j) val[static_cast<size_t>(j)] = {coef(rng), coef(rng)};

    auto eval = [&](const cod::Entry& e) -> ComplexInt {
        if (e.is_zero()) return {0, 0};
        ComplexInt v = val[static_cast<size_t>(e.var)];
        if (e.conj) v = v.conj();
        if (e.sign < 0) v = {-v.re, -v.im};
        return v;
    };

    ComplexInt norm{0, 0};
    for (int j = 1; j <= d.k; ++j) norm = norm + val[static_cast<size_t>(j)] * val[static_cast<size_t>(j)].conj();

    for (int a = 0; a < d.n; ++a)
        for (int b = 0; b < d.n; ++b) {
            ComplexInt sum{0, 0};
            for (int r = 0; r < d.p; ++r) sum = sum + eval(d.at(r, a)).conj() * eval(d.at(r, b));
            if (!(sum == (a == b ? norm : ComplexInt{0, 0}))) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Random equivalence operations.

inline cod::EquivOp random_op(const cod::Design& d, std::mt19937& rng, bool allow_var_conj) {
    std::uniform_int_distribution<int> kind(0, allow_var_conj ? 5 : 4);
    auto shuffled = [&](int size) {
        cod::Permutation p = cod::identity_permutation(size);
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    };
    std::uniform_int_distribution<int> row(0, d.p - 1), col(0, d.n - 1), var(1, d.k);
    switch (kind(rng)) {
        case 0: return cod::RowPerm{shuffled(d.p)};
        case 1: return cod::ColPerm{shuffled(d.n)};
        case 2: return cod::RowNeg{row(rng)};
        case 3: return cod::ColNeg{col(rng)};
        case 4: return cod::VarNeg{var(rng)};
        default: return cod::VarConj{var(rng)};
    }
}

inline std::vector<cod::EquivOp> random_ops(const cod::Design& d, std::mt19937& rng, int count,
                                            bool allow_var_conj) {
    std::vector<cod::EquivOp> ops;
    for (int i = 0; i < count; ++i) ops.push_back(random_op(d, rng, allow_var_conj));
    return ops;
}

}  // namespace fixtures
