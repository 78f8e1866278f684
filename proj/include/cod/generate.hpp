#pragma once

// Construction of balanced designs achieving delay 2^m for n = 2m.
//
// construct_bcod pins a standard-form skeleton and completes it by
// exhaustive backtracking; the checkers, not the construction, are the
// source of truth, so every output is re-validated against is_bcod,
// is_atomic and verify_delay_bound before it is returned. Two skeletons are
// tried in order:
//   A. the full B_1 block: z1 diagonals plus a skew M_1 whose upper cells
//      take fresh variables z2, z3, ... with positive sign (any balanced
//      design can be brought to this shape by equivalence operations and
//      relabelling whenever its M_1 has pairwise distinct variables);
//   B. only the z1 diagonals pinned (fully general fallback).
// The result is deterministic across runs: the searcher's candidate order
// is fixed and the first completion wins.

#include <stdexcept>

#include "cod/atomic.hpp"
#include "cod/bcod.hpp"
#include "cod/design.hpp"
#include "cod/patterns.hpp"
#include "cod/search.hpp"

namespace cod {

inline constexpr int max_construct_m = 4;

// The [2, 2, 1] design  z1 0 / 0 z1* : the smallest balanced design.
inline Design base_bcod() {
    Design d = make_design(2, 2, 1);
    d.at(0, 0) = Entry{1, +1, false};
    d.at(1, 1) = Entry{1, +1, true};
    return d;
}

namespace detail {

// Rows past the skeleton are arranged as adjacent complement pairs with the
// plain member first (always reachable by a row permutation).
inline void pair_completion_rows(GridSpec& spec, int from) {
    spec.mate_of.assign(static_cast<size_t>(spec.p), -1);
    spec.force_plain.assign(static_cast<size_t>(spec.p), 0);
    for (int r = from; r < spec.p; ++r) {
        if ((r - from) % 2 == 1)
            spec.mate_of[static_cast<size_t>(r)] = r - 1;
        else
            spec.force_plain[static_cast<size_t>(r)] = 1;
    }
}

inline GridSpec construct_spec_full_block(int m) {
    const int p = 1 << m, n = 2 * m, k = 1 << (m - 1);
    GridSpec spec;
    spec.p = p;
    spec.n = n;
    spec.k = k;
    spec.cells.assign(static_cast<size_t>(p) * n, Entry::zero());
    spec.fixed.assign(static_cast<size_t>(p) * n, 0);

    std::vector<std::vector<Entry>> mj(static_cast<size_t>(m), std::vector<Entry>(static_cast<size_t>(m)));
    int next_var = 2;
    for (int s = 0; s < m; ++s)
        for (int t = s + 1; t < m; ++t) {
            mj[static_cast<size_t>(s)][static_cast<size_t>(t)] = Entry{next_var, +1, false};
            mj[static_cast<size_t>(t)][static_cast<size_t>(s)] = Entry{next_var, -1, false};
            ++next_var;
        }

    auto cell = [&](int r, int c) -> Entry& { return spec.cells[static_cast<size_t>(r) * n + c]; };
    for (int i = 0; i < m; ++i) {
        cell(i, i) = Entry{1, +1, false};
        for (int t = 0; t < m; ++t) cell(i, m + t) = mj[static_cast<size_t>(i)][static_cast<size_t>(t)];
        cell(m + i, m + i) = Entry{1, +1, true};
        for (int t = 0; t < m; ++t) {
            Entry e = mj[static_cast<size_t>(t)][static_cast<size_t>(i)];  // -conj(M[t][i])
            cell(m + i, t) = e.conjugated().negated();
        }
    }
    for (int r = 0; r < 2 * m; ++r)
        for (int c = 0; c < n; ++c) spec.fixed[static_cast<size_t>(r) * n + c] = 1;
    pair_completion_rows(spec, 2 * m);
    return spec;
}

inline GridSpec construct_spec_diagonal_only(int m) {
    const int p = 1 << m, n = 2 * m, k = 1 << (m - 1);
    GridSpec spec;
    spec.p = p;
    spec.n = n;
    spec.k = k;
    spec.cells.assign(static_cast<size_t>(p) * n, Entry::zero());
    spec.fixed.assign(static_cast<size_t>(p) * n, 0);
    for (int i = 0; i < m; ++i) {
        spec.cells[static_cast<size_t>(i) * n + i] = Entry{1, +1, false};
        spec.fixed[static_cast<size_t>(i) * n + i] = 1;
        spec.cells[static_cast<size_t>(m + i) * n + (m + i)] = Entry{1, +1, true};
        spec.fixed[static_cast<size_t>(m + i) * n + (m + i)] = 1;
    }
    pair_completion_rows(spec, 2 * m);
    // In standard form, bottom row i is forced to be the complement of top
    // row i: the dense M block leaves no other row with the right pattern.
    for (int i = 0; i < m; ++i) spec.mate_of[static_cast<size_t>(m + i)] = i;
    return spec;
}

}  // namespace detail

// A [2^m, 2m, 2^(m-1)] balanced design in standard form, validated by the
// checkers. Deterministic across runs.
inline Design construct_bcod(int m) {
    if (m < 1 || m > max_construct_m)
        throw std::invalid_argument("construct_bcod: m out of supported range [1, " +
                                    std::to_string(max_construct_m) + "]");
    if (m == 1) return base_bcod();

    detail::GridSpec spec = detail::construct_spec_full_block(m);
    spec.node_budget = 100'000'000;
    detail::GridOutcome out = detail::solve_grid(spec);
    if (!out.found) {
        detail::GridSpec fallback = detail::construct_spec_diagonal_only(m);
        fallback.node_budget = 4'000'000'000ull;
        out = detail::solve_grid(fallback);
    }
    if (!out.found) throw std::logic_error("construct_bcod: no completion found");

    const Design& d = out.design;
    if (d.p != (1 << m) || d.n != 2 * m || d.k != (1 << (m - 1)) || !is_bcod(d).ok || !is_atomic(d) ||
        !verify_delay_bound(d).ok)
        throw std::logic_error("construct_bcod: completion failed validation");
    return d;
}

}  // namespace cod
