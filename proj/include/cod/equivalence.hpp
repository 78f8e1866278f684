#pragma once

// The six equivalence operations on designs, as first-class reversible
// values: row/column permutation, row/column negation, and per-variable
// conjugation/negation. None of them can create or destroy orthogonality.
//
// Permutations use gather semantics: the transformed design's row i is the
// input's row map[i]. The script format printed by format_op is 1-based.

#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cod/design.hpp"

namespace cod {

using Permutation = std::vector<int>;  // 0-based gather map

struct RowPerm {
    Permutation map;
};
struct ColPerm {
    Permutation map;
};
struct RowNeg {
    int row = 0;
};
struct ColNeg {
    int col = 0;
};
struct VarConj {
    int var = 0;
};
struct VarNeg {
    int var = 0;
};

using EquivOp = std::variant<RowPerm, ColPerm, RowNeg, ColNeg, VarConj, VarNeg>;

namespace detail {

inline void check_permutation(const Permutation& perm, int size, const char* what) {
    if (static_cast<int>(perm.size()) != size)
        throw std::invalid_argument(std::string(what) + ": permutation size mismatch");
    std::vector<char> seen(static_cast<size_t>(size), 0);
    for (int v : perm) {
        if (v < 0 || v >= size || seen[static_cast<size_t>(v)])
            throw std::invalid_argument(std::string(what) + ": not a permutation");
        seen[static_cast<size_t>(v)] = 1;
    }
}

inline Permutation inverse_permutation(const Permutation& perm) {
    Permutation inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) inv[static_cast<size_t>(perm[i])] = static_cast<int>(i);
    return inv;
}

}  // namespace detail

inline Permutation identity_permutation(int size) {
    Permutation p(static_cast<size_t>(size));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline ColPerm column_swap(int a, int b, int n) {
    Permutation p = identity_permutation(n);
    std::swap(p[static_cast<size_t>(a)], p[static_cast<size_t>(b)]);
    return ColPerm{std::move(p)};
}

inline Design apply_op(const Design& d, const EquivOp& op) {
    Design out = d;
    if (const auto* rp = std::get_if<RowPerm>(&op)) {
        detail::check_permutation(rp->map, d.p, "row permutation");
        for (int r = 0; r < d.p; ++r)
            for (int c = 0; c < d.n; ++c) out.at(r, c) = d.at(rp->map[static_cast<size_t>(r)], c);
    } else if (const auto* cp = std::get_if<ColPerm>(&op)) {
        detail::check_permutation(cp->map, d.n, "column permutation");
        for (int r = 0; r < d.p; ++r)
            for (int c = 0; c < d.n; ++c) out.at(r, c) = d.at(r, cp->map[static_cast<size_t>(c)]);
    } else if (const auto* rn = std::get_if<RowNeg>(&op)) {
        if (rn->row < 0 || rn->row >= d.p) throw std::out_of_range("row negation: index out of range");
        for (int c = 0; c < d.n; ++c) out.at(rn->row, c) = d.at(rn->row, c).negated();
    } else if (const auto* cn = std::get_if<ColNeg>(&op)) {
        if (cn->col < 0 || cn->col >= d.n) throw std::out_of_range("column negation: index out of range");
        for (int r = 0; r < d.p; ++r) out.at(r, cn->col) = d.at(r, cn->col).negated();
    } else if (const auto* vc = std::get_if<VarConj>(&op)) {
        if (vc->var < 1 || vc->var > d.k) throw std::out_of_range("variable conjugation: index out of range");
        for (Entry& e : out.cells)
            if (e.var == vc->var) e = e.conjugated();
    } else if (const auto* vn = std::get_if<VarNeg>(&op)) {
        if (vn->var < 1 || vn->var > d.k) throw std::out_of_range("variable negation: index out of range");
        for (Entry& e : out.cells)
            if (e.var == vn->var) e = e.negated();
    }
    return out;
}

inline EquivOp inverse(const EquivOp& op) {
    if (const auto* rp = std::get_if<RowPerm>(&op)) return RowPerm{detail::inverse_permutation(rp->map)};
    if (const auto* cp = std::get_if<ColPerm>(&op)) return ColPerm{detail::inverse_permutation(cp->map)};
    return op;  // negations and conjugations are involutions
}

inline Design apply_ops(const Design& d, std::span<const EquivOp> ops) {
    Design cur = d;
    for (const EquivOp& op : ops) cur = apply_op(cur, op);
    return cur;
}

inline Design apply_ops(const Design& d, const std::vector<EquivOp>& ops) {
    return apply_ops(d, std::span<const EquivOp>(ops));
}

// True when op is a column transposition of the form (i, m+i).
inline bool is_column_pair_swap(const ColPerm& cp, int m) {
    int n = static_cast<int>(cp.map.size());
    if (n != 2 * m) return false;
    int moved = -1;
    for (int c = 0; c < n; ++c) {
        if (cp.map[static_cast<size_t>(c)] == c) continue;
        if (c >= m) break;  // first displaced index must lie in [0, m)
        moved = c;
        break;
    }
    if (moved < 0) return false;
    Permutation expect = identity_permutation(n);
    std::swap(expect[static_cast<size_t>(moved)], expect[static_cast<size_t>(moved + m)]);
    return cp.map == expect;
}

// A sequence is column-restricted when every column permutation in it is a
// transposition of columns i and m+i for some i.
inline bool is_column_restricted(std::span<const EquivOp> ops, int m) {
    for (const EquivOp& op : ops)
        if (const auto* cp = std::get_if<ColPerm>(&op))
            if (!is_column_pair_swap(*cp, m)) return false;
    return true;
}

inline bool is_column_restricted(const std::vector<EquivOp>& ops, int m) {
    return is_column_restricted(std::span<const EquivOp>(ops), m);
}

// One op per line, 1-based: "rowperm 2 1 3 4", "colperm ...", "rowneg 3",
// "colneg 2", "varconj 1", "varneg 2".
inline std::string format_op(const EquivOp& op) {
    auto perm_str = [](const char* name, const Permutation& perm) {
        std::string s = name;
        for (int v : perm) {
            s += ' ';
            s += std::to_string(v + 1);
        }
        return s;
    };
    if (const auto* rp = std::get_if<RowPerm>(&op)) return perm_str("rowperm", rp->map);
    if (const auto* cp = std::get_if<ColPerm>(&op)) return perm_str("colperm", cp->map);
    if (const auto* rn = std::get_if<RowNeg>(&op)) return "rowneg " + std::to_string(rn->row + 1);
    if (const auto* cn = std::get_if<ColNeg>(&op)) return "colneg " + std::to_string(cn->col + 1);
    if (const auto* vc = std::get_if<VarConj>(&op)) return "varconj " + std::to_string(vc->var);
    const auto& vn = std::get<VarNeg>(op);
    return "varneg " + std::to_string(vn.var);
}

}  // namespace cod
