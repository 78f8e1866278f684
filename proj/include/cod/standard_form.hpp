#pragma once

// Standard form and the constructive column-restricted reduction.
//
// A balanced design is in standard form when it is already in B_i form for
// some variable i without any column permutation. From a standard form,
// every variable's B_j form is reachable using only column transpositions
// of the shape (s, m+s): locate z_j at position (s, t) of the current block's
// M matrix, swap columns (s, m+s) and (t, m+t), then renormalize rows. The
// walk from the current block variable to the requested one follows the
// variable-adjacency graph, breadth-first, smallest index first.

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cod/atomic.hpp"
#include "cod/bcod.hpp"
#include "cod/bj_form.hpp"
#include "cod/design.hpp"
#include "cod/equivalence.hpp"

namespace cod {

// Smallest variable whose B_j form is present without any column
// permutation: columns already tiled, full m+m split, M_j skew up to the
// sign gauge (row and column negations are still allowed in a standard
// form). Throws when d is not balanced.
inline std::optional<int> is_standard_form(const Design& d) {
    if (!is_bcod(d).ok) throw std::invalid_argument("is_standard_form: design is not a BCOD");
    const int m = d.n / 2;
    for (int j = 1; j <= d.k; ++j) {
        std::optional<BjReport> rep = find_bj_rows(d, j);
        if (rep && rep->n1 == m && rep->n2 == m && rep->skew_up_to_negation) return j;
    }
    return std::nullopt;
}

struct Reduction {
    std::vector<EquivOp> ops;
    Design design;
};

namespace detail {

// Normalizes a literal B_j block to the displayed shape: row negations make
// both diagonals +z_j/+z_j*, paired column+row negations make M_j literally
// skew, and a final row permutation puts the block into canonical position:
// top rows first (sorted by diagonal column), then bottom rows, then the
// rest in original order.
inline void normalize_bj_block(Design& d, int j, std::vector<EquivOp>& ops) {
    std::optional<BjReport> rep = find_bj_rows(d, j);
    if (!rep) throw std::logic_error("normalize_bj_block: B_j structure vanished");

    for (size_t i = 0; i < rep->top_rows.size(); ++i)
        if (rep->top_signs[i] < 0) {
            EquivOp op = RowNeg{rep->top_rows[i]};
            d = apply_op(d, op);
            ops.push_back(op);
        }
    for (size_t i = 0; i < rep->bottom_rows.size(); ++i)
        if (rep->bottom_signs[i] < 0) {
            EquivOp op = RowNeg{rep->bottom_rows[i]};
            d = apply_op(d, op);
            ops.push_back(op);
        }

    // Flipping design column n1+t together with bottom row t rescales M_j
    // column t and nothing else in the block.
    if (!rep->skew && rep->skew_up_to_negation)
        for (int t : rep->gauge_col_flips) {
            for (EquivOp op : {EquivOp{ColNeg{rep->n1 + t}}, EquivOp{RowNeg{rep->bottom_rows[static_cast<size_t>(t)]}}}) {
                d = apply_op(d, op);
                ops.push_back(op);
            }
        }

    Permutation target;
    std::vector<char> in_block(static_cast<size_t>(d.p), 0);
    for (int r : rep->top_rows) {
        target.push_back(r);
        in_block[static_cast<size_t>(r)] = 1;
    }
    for (int r : rep->bottom_rows) {
        target.push_back(r);
        in_block[static_cast<size_t>(r)] = 1;
    }
    for (int r = 0; r < d.p; ++r)
        if (!in_block[static_cast<size_t>(r)]) target.push_back(r);
    if (target != identity_permutation(d.p)) {
        EquivOp op = RowPerm{target};
        d = apply_op(d, op);
        ops.push_back(op);
    }
}

}  // namespace detail

// Transforms a standard-form balanced design into B_j form using
// column-restricted operations only (Theorem-2-style constructive walk).
inline Reduction to_bj_form(const Design& d, int j) {
    if (j < 1 || j > d.k) throw std::out_of_range("variable index out of range");
    std::optional<int> witness = is_standard_form(d);  // throws when not a BCOD
    if (!witness) throw std::invalid_argument("to_bj_form: design is not in standard form");

    const int m = d.n / 2;
    Reduction red{{}, d};

    auto in_bj_form = [&](int var) {
        std::optional<BjReport> rep = find_bj_rows(red.design, var);
        return rep && rep->n1 == m && rep->n2 == m && rep->skew_up_to_negation;
    };

    if (in_bj_form(j)) {
        detail::normalize_bj_block(red.design, j, red.ops);
        return red;
    }

    // Walk the adjacency graph from the witness to j.
    VarGraph graph = adjacency_graph(d);
    std::vector<int> parent(static_cast<size_t>(d.k) + 1, 0);
    std::deque<int> queue{*witness};
    parent[static_cast<size_t>(*witness)] = *witness;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int t = 1; t <= d.k; ++t)
            if (graph.edge(v, t) && parent[static_cast<size_t>(t)] == 0) {
                parent[static_cast<size_t>(t)] = v;
                queue.push_back(t);
            }
    }
    if (parent[static_cast<size_t>(j)] == 0)
        throw std::runtime_error("to_bj_form: variable z" + std::to_string(j) +
                                 " is unreachable; design is not atomic");
    std::vector<int> path{j};
    while (path.back() != *witness) path.push_back(parent[static_cast<size_t>(path.back())]);
    std::reverse(path.begin(), path.end());

    detail::normalize_bj_block(red.design, *witness, red.ops);
    for (size_t step = 0; step + 1 < path.size(); ++step) {
        int cur = path[step], next = path[step + 1];
        std::optional<BjReport> rep = find_bj_rows(red.design, cur);
        if (!rep || rep->n1 != m || rep->n2 != m)
            throw std::logic_error("to_bj_form: lost the current block while walking");

        int s = -1, t = -1;
        for (int a = 0; a < m && s < 0; ++a)
            for (int b = 0; b < m; ++b)
                if (rep->mj[static_cast<size_t>(a)][static_cast<size_t>(b)].var == next) {
                    s = a;
                    t = b;
                    break;
                }
        if (s < 0) throw std::logic_error("to_bj_form: adjacency edge without an M_j occurrence");

        for (int c : {s, t}) {
            EquivOp op = column_swap(c, m + c, d.n);
            red.design = apply_op(red.design, op);
            red.ops.push_back(op);
        }
        detail::normalize_bj_block(red.design, next, red.ops);
    }

    std::optional<BjReport> final_rep = find_bj_rows(red.design, j);
    if (!final_rep || final_rep->n1 != m || !final_rep->skew || !is_column_restricted(red.ops, m))
        throw std::logic_error("to_bj_form: postcondition failed");
    return red;
}

// Brings any balanced design into standard form. Only a single column
// permutation (the Diagonal-2x2 pairing of variable 1) is ever needed; no
// instance conjugation is used, so every balance condition is preserved.
inline Reduction standardize(const Design& d) {
    std::optional<int> witness = is_standard_form(d);  // throws when not a BCOD
    if (witness) return Reduction{{}, d};
    std::optional<ColPerm> align = align_bj_columns(d, 1);
    if (!align) throw std::logic_error("standardize: balanced design without a z1 pairing");
    EquivOp op = EquivOp{*align};
    Reduction red{{op}, apply_op(d, op)};
    if (!is_standard_form(red.design)) throw std::logic_error("standardize: postcondition failed");
    return red;
}

}  // namespace cod
