#pragma once

// B_j block detection. For a variable j the B_j form is the block structure
//
//     ( z_j I_{n1}   M_j        )
//     ( -M_j^H       z_j* I_{n2})
//
// find_bj_rows detects it literally: the plain occurrences of z_j must tile
// columns 0..n1-1 one per column, the conjugated ones columns n1..n-1. Row
// order and row signs are implicit (reported, not applied); M_j is read as
// it would appear after the implicit row negations that make the diagonal
// +z_j.
//
// align_bj_columns computes the column permutation that makes the literal
// detection succeed for designs whose z_j columns are scattered: each plain
// occurrence is paired with the unique conjugated occurrence forming a
// Diagonal 2x2 with it, and the pairs are mapped to columns (i, m+i).

#include <algorithm>
#include <optional>
#include <vector>

#include "cod/design.hpp"
#include "cod/equivalence.hpp"

namespace cod {

struct BjReport {
    int var = 0;
    int n1 = 0;
    int n2 = 0;
    std::vector<int> top_rows;      // top_rows[i] holds +-z_j in column i
    std::vector<int> bottom_rows;   // bottom_rows[i] holds +-z_j* in column n1+i
    std::vector<int> top_signs;     // signs found on the z_j diagonal
    std::vector<int> bottom_signs;  // signs found on the z_j* diagonal
    std::vector<std::vector<Entry>> mj;  // n1 x n2, top rows normalized to +z_j
    bool skew = false;              // M_j^T == -M_j literally
    // M_j^T == -M_j after rescaling rows/columns of M_j by signs. Row and
    // column negations of the design rescale M_j exactly this way while
    // preserving balance, so the balance conditions quotient by this gauge.
    bool skew_up_to_negation = false;
    // column sign flips of M_j realizing the gauge (valid when
    // skew_up_to_negation holds); flipping those columns makes M_j skew
    std::vector<int> gauge_col_flips;
};

inline std::optional<BjReport> find_bj_rows(const Design& d, int j) {
    if (j < 1 || j > d.k) throw std::out_of_range("variable index out of range");
    std::vector<Occurrence> occ = variable_occurrences(d, j);

    // One occurrence per column and per row, or the rows cannot tile.
    std::vector<char> col_seen(static_cast<size_t>(d.n), 0), row_seen(static_cast<size_t>(d.p), 0);
    for (const Occurrence& o : occ) {
        if (col_seen[static_cast<size_t>(o.col)] || row_seen[static_cast<size_t>(o.row)]) return std::nullopt;
        col_seen[static_cast<size_t>(o.col)] = 1;
        row_seen[static_cast<size_t>(o.row)] = 1;
    }

    int n1 = 0;
    for (const Occurrence& o : occ)
        if (!o.conj) ++n1;
    int n2 = static_cast<int>(occ.size()) - n1;
    if (n1 + n2 != d.n) return std::nullopt;

    BjReport rep;
    rep.var = j;
    rep.n1 = n1;
    rep.n2 = n2;
    rep.top_rows.assign(static_cast<size_t>(n1), -1);
    rep.top_signs.assign(static_cast<size_t>(n1), 0);
    rep.bottom_rows.assign(static_cast<size_t>(n2), -1);
    rep.bottom_signs.assign(static_cast<size_t>(n2), 0);
    for (const Occurrence& o : occ) {
        if (!o.conj) {
            if (o.col >= n1) return std::nullopt;  // plain occurrences must sit in columns [0, n1)
            rep.top_rows[static_cast<size_t>(o.col)] = o.row;
            rep.top_signs[static_cast<size_t>(o.col)] = o.sign;
        } else {
            if (o.col < n1) return std::nullopt;
            rep.bottom_rows[static_cast<size_t>(o.col - n1)] = o.row;
            rep.bottom_signs[static_cast<size_t>(o.col - n1)] = o.sign;
        }
    }

    rep.mj.assign(static_cast<size_t>(n1), std::vector<Entry>(static_cast<size_t>(n2)));
    for (int s = 0; s < n1; ++s)
        for (int t = 0; t < n2; ++t) {
            Entry e = d.at(rep.top_rows[static_cast<size_t>(s)], n1 + t);
            rep.mj[static_cast<size_t>(s)][static_cast<size_t>(t)] =
                rep.top_signs[static_cast<size_t>(s)] < 0 ? e.negated() : e;
        }

    rep.skew = (n1 == n2);
    if (rep.skew)
        for (int s = 0; s < n1 && rep.skew; ++s)
            for (int t = 0; t < n2 && rep.skew; ++t)
                if (!(rep.mj[static_cast<size_t>(s)][static_cast<size_t>(t)] ==
                      rep.mj[static_cast<size_t>(t)][static_cast<size_t>(s)].negated()))
                    rep.skew = false;

    // Gauge test: does any +-1 rescaling of rows and columns make M_j skew?
    // Structure first (zero diagonal, matching variables/conjugations), then
    // sign consistency. With u_t = (row flip t) * (column flip t), each
    // nonzero pair (s, t) demands u_s u_t = -sign(M[s][t]) sign(M[t][s]),
    // which is solvable exactly when the pair labels are parity-consistent.
    rep.skew_up_to_negation = (n1 == n2);
    if (rep.skew_up_to_negation) {
        auto& mj = rep.mj;
        for (int s = 0; s < n1 && rep.skew_up_to_negation; ++s) {
            if (!mj[static_cast<size_t>(s)][static_cast<size_t>(s)].is_zero())
                rep.skew_up_to_negation = false;
            for (int t = s + 1; t < n2 && rep.skew_up_to_negation; ++t) {
                const Entry& a = mj[static_cast<size_t>(s)][static_cast<size_t>(t)];
                const Entry& b = mj[static_cast<size_t>(t)][static_cast<size_t>(s)];
                if (a.is_zero() != b.is_zero() || a.var != b.var || a.conj != b.conj)
                    rep.skew_up_to_negation = false;
            }
        }
        if (rep.skew_up_to_negation) {
            std::vector<int> u(static_cast<size_t>(n1), 0);  // 0 unknown, else +-1
            for (int root = 0; root < n1 && rep.skew_up_to_negation; ++root) {
                if (u[static_cast<size_t>(root)] != 0) continue;
                u[static_cast<size_t>(root)] = 1;
                std::vector<int> queue{root};
                while (!queue.empty() && rep.skew_up_to_negation) {
                    int s = queue.back();
                    queue.pop_back();
                    for (int t = 0; t < n1; ++t) {
                        const Entry& a = rep.mj[static_cast<size_t>(s)][static_cast<size_t>(t)];
                        if (s == t || a.is_zero()) continue;
                        const Entry& b = rep.mj[static_cast<size_t>(t)][static_cast<size_t>(s)];
                        int need = -a.sign * b.sign * u[static_cast<size_t>(s)];
                        if (u[static_cast<size_t>(t)] == 0) {
                            u[static_cast<size_t>(t)] = need;
                            queue.push_back(t);
                        } else if (u[static_cast<size_t>(t)] != need) {
                            rep.skew_up_to_negation = false;
                            break;
                        }
                    }
                }
            }
            if (rep.skew_up_to_negation) {
                for (int t = 0; t < n1; ++t)
                    if (u[static_cast<size_t>(t)] < 0) rep.gauge_col_flips.push_back(t);
            }
        }
    }
    return rep;
}

// Diagonal-pairing column alignment for variable j. Requires one occurrence
// of z_j per column and per row, equally many plain and conjugated. Each
// plain occurrence (r, c) must admit exactly one conjugated occurrence
// (r', c') with d(r, c') = 0 and d(r', c) = 0 (a Diagonal 2x2); the pairing
// must be a bijection. Pairs are ordered by plain column; the returned
// permutation sends pair i to columns (i, m+i).
inline std::optional<ColPerm> align_bj_columns(const Design& d, int j) {
    if (j < 1 || j > d.k) throw std::out_of_range("variable index out of range");
    std::vector<Occurrence> occ = variable_occurrences(d, j);
    if (static_cast<int>(occ.size()) != d.n) return std::nullopt;

    std::vector<char> col_seen(static_cast<size_t>(d.n), 0), row_seen(static_cast<size_t>(d.p), 0);
    std::vector<Occurrence> tops, bottoms;
    for (const Occurrence& o : occ) {
        if (col_seen[static_cast<size_t>(o.col)] || row_seen[static_cast<size_t>(o.row)]) return std::nullopt;
        col_seen[static_cast<size_t>(o.col)] = 1;
        row_seen[static_cast<size_t>(o.row)] = 1;
        (o.conj ? bottoms : tops).push_back(o);
    }
    if (tops.size() != bottoms.size()) return std::nullopt;

    std::vector<int> partner(tops.size(), -1);
    std::vector<char> bottom_used(bottoms.size(), 0);
    for (size_t i = 0; i < tops.size(); ++i) {
        for (size_t b = 0; b < bottoms.size(); ++b) {
            if (d.at(tops[i].row, bottoms[b].col).is_zero() && d.at(bottoms[b].row, tops[i].col).is_zero()) {
                if (partner[i] != -1) return std::nullopt;  // more than one Diagonal partner
                partner[i] = static_cast<int>(b);
            }
        }
        if (partner[i] == -1) return std::nullopt;
        if (bottom_used[static_cast<size_t>(partner[i])]) return std::nullopt;
        bottom_used[static_cast<size_t>(partner[i])] = 1;
    }

    int m = static_cast<int>(tops.size());
    std::vector<size_t> order(tops.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return tops[x].col < tops[y].col; });

    Permutation map(static_cast<size_t>(d.n));
    for (int i = 0; i < m; ++i) {
        map[static_cast<size_t>(i)] = tops[order[static_cast<size_t>(i)]].col;
        map[static_cast<size_t>(m + i)] = bottoms[static_cast<size_t>(partner[order[static_cast<size_t>(i)]])].col;
    }
    return ColPerm{std::move(map)};
}

}  // namespace cod
