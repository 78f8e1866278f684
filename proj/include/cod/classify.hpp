#pragma once

// Local 2x2 classification. Every 2x2 submatrix whose diagonal holds the
// same variable falls into one of three shapes (up to negating or
// conjugating the off-diagonal variable):
//
//   Alamouti  ( z_i   z_j  )   Diagonal ( z_i  0    )   Trivial ( z_i  0   )
//             ( -z_j* z_i* )            ( 0    z_i* )           ( 0    z_i )

#include <stdexcept>

#include "cod/design.hpp"

namespace cod {

enum class TwoByTwoClass { Alamouti, Diagonal, Trivial, Other };

inline const char* to_string(TwoByTwoClass c) {
    switch (c) {
        case TwoByTwoClass::Alamouti: return "Alamouti";
        case TwoByTwoClass::Diagonal: return "Diagonal";
        case TwoByTwoClass::Trivial: return "Trivial";
        default: return "Other";
    }
}

// Classifies the submatrix on rows (r1, r2) and columns (c1, c2), where the
// (r1,c1) and (r2,c2) cells must hold the same variable up to sign and
// conjugation. Diagonal signs never matter; the off-diagonal pair is matched
// against the Alamouti shape up to negation/conjugation of its variable.
inline TwoByTwoClass classify_2x2(const Design& d, int r1, int r2, int c1, int c2) {
    const Entry& d1 = d.at(r1, c1);
    const Entry& d2 = d.at(r2, c2);
    if (d1.is_zero() || d2.is_zero() || d1.var != d2.var)
        throw std::invalid_argument("classify_2x2: diagonal cells must hold the same variable");

    const Entry& o1 = d.at(r1, c2);
    const Entry& o2 = d.at(r2, c1);
    bool diag_conj_differ = d1.conj != d2.conj;

    if (o1.is_zero() && o2.is_zero())
        return diag_conj_differ ? TwoByTwoClass::Diagonal : TwoByTwoClass::Trivial;
    if (o1.is_zero() || o2.is_zero()) return TwoByTwoClass::Other;

    // Alamouti: off-diagonal cells share one variable with opposite
    // conjugations, diagonal conjugations differ, and the product of all
    // four signs is -1. The total sign product is what survives the row and
    // column negations that normalize the diagonal to +z_i, +z_i*.
    bool off_matches = o1.var == o2.var && o1.conj != o2.conj &&
                       d1.sign * d2.sign * o1.sign * o2.sign == -1;
    if (diag_conj_differ && off_matches) return TwoByTwoClass::Alamouti;
    return TwoByTwoClass::Other;
}

}  // namespace cod
