#pragma once

// Balanced COD checker. A [2k, 2m, k] COD is balanced when
//   1. every row has exactly m zeros,
//   2. every row is conjugation separated (all plain or all conjugated),
//   3. for every variable j the M_j block of its B_j form is skew-symmetric,
// and, as a consequence of the above, z_j and z_j* each occur m times up to
// sign. Condition 3 is checked by aligning the z_j columns with
// align_bj_columns first, since a balanced design need not have its B_j
// blocks in literal column order; skewness is judged up to the row/column
// sign gauge because negations preserve balance but rescale M_j.

#include <optional>
#include <string>
#include <vector>

#include "cod/bj_form.hpp"
#include "cod/design.hpp"
#include "cod/equivalence.hpp"
#include "cod/gram.hpp"

namespace cod {

struct BcodReport {
    bool ok = false;
    bool cod_ok = false;   // the design is a COD at all
    bool dims_ok = false;  // p == 2k and n even
    std::optional<bool> row_zeros_ok;     // condition 1
    std::optional<bool> conj_separated;   // condition 2
    std::optional<bool> counts_ok;        // z_j and z_j* each m times
    std::optional<bool> skew_ok;          // condition 3
    std::vector<std::string> problems;
    CodReport cod;
};

inline BcodReport is_bcod(const Design& d) {
    BcodReport rep;
    rep.cod = is_cod(d);
    rep.cod_ok = rep.cod.ok;
    if (!rep.cod_ok) rep.problems.push_back("not a COD");

    rep.dims_ok = (d.n % 2 == 0) && (d.p == 2 * d.k);
    if (d.n % 2 != 0) rep.problems.push_back("n is odd");
    if (d.p != 2 * d.k)
        rep.problems.push_back("p != 2k (p=" + std::to_string(d.p) + ", k=" + std::to_string(d.k) + ")");
    if (!rep.dims_ok) return rep;

    const int m = d.n / 2;

    rep.row_zeros_ok = true;
    for (int r = 0; r < d.p; ++r)
        if (row_zero_count(d, r) != m) {
            rep.row_zeros_ok = false;
            rep.problems.push_back("row " + std::to_string(r + 1) + " has " +
                                   std::to_string(row_zero_count(d, r)) + " zeros, expected " +
                                   std::to_string(m));
        }

    rep.conj_separated = true;
    for (int r = 0; r < d.p; ++r)
        if (row_class(d, r) == RowClass::Mixed) {
            rep.conj_separated = false;
            rep.problems.push_back("row " + std::to_string(r + 1) + " mixes plain and conjugated entries");
        }

    rep.counts_ok = true;
    for (int j = 1; j <= d.k; ++j) {
        int plain = 0, conj = 0;
        for (const Occurrence& o : variable_occurrences(d, j)) (o.conj ? conj : plain)++;
        if (plain != m || conj != m) {
            rep.counts_ok = false;
            rep.problems.push_back("z" + std::to_string(j) + " occurs " + std::to_string(plain) +
                                   " times plain and " + std::to_string(conj) + " conjugated, expected " +
                                   std::to_string(m) + " each");
        }
    }

    if (rep.cod_ok) {
        rep.skew_ok = true;
        for (int j = 1; j <= d.k; ++j) {
            std::optional<ColPerm> align = align_bj_columns(d, j);
            if (!align) {
                rep.skew_ok = false;
                rep.problems.push_back("z" + std::to_string(j) + ": no Diagonal-2x2 column pairing exists");
                continue;
            }
            std::optional<BjReport> bj = find_bj_rows(apply_op(d, EquivOp{*align}), j);
            if (!bj || !bj->skew_up_to_negation) {
                rep.skew_ok = false;
                rep.problems.push_back("z" + std::to_string(j) +
                                       ": M_j block is not skew-symmetric (up to sign normalization)");
            }
        }
    }

    rep.ok = rep.cod_ok && rep.dims_ok && rep.row_zeros_ok.value_or(false) &&
             rep.conj_separated.value_or(false) && rep.counts_ok.value_or(false) &&
             rep.skew_ok.value_or(false);
    return rep;
}

}  // namespace cod
