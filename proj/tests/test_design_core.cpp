#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"

using namespace cod;

TEST_CASE("parse and serialize round-trip the fixtures") {
    for (const char* text : {fixtures::base_text, fixtures::alamouti_text, fixtures::d2_text,
                             fixtures::t_design_text, fixtures::flipped_alamouti_text}) {
        Design d = parse_design(text);
        CHECK(serialize_design(d) == text);
        CHECK(parse_design(serialize_design(d)) == d);
    }
    Design base = fixtures::base();
    CHECK(base.p == 2);
    CHECK(base.n == 2);
    CHECK(base.k == 1);
    CHECK(base.at(0, 0) == Entry{1, +1, false});
    CHECK(base.at(1, 1) == Entry{1, +1, true});
}

TEST_CASE("comments and blank lines are ignored") {
    Design d = parse_design("# base design\n\n2 2 1\nz1 0\n# middle\n0 z1*\n");
    CHECK(d == fixtures::base());
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(parse_design(""), ParseError);
    CHECK_THROWS_AS(parse_design("2 2\nz1 0\n0 z1*"), ParseError);          // bad header
    CHECK_THROWS_AS(parse_design("2 2 1\nz1 q\n0 z1*"), ParseError);        // bad token
    CHECK_THROWS_AS(parse_design("2 2 1\nz1 0 0\n0 z1*"), ParseError);      // row too wide
    CHECK_THROWS_AS(parse_design("3 2 1\nz1 0\n0 z1*"), ParseError);        // row count mismatch
    CHECK_THROWS_AS(parse_design("2 2 1\nz0 0\n0 z1*"), ParseError);        // index 0
    CHECK_THROWS_AS(parse_design("2 2 1\nz2 0\n0 z1*"), ParseError);        // index > k
    CHECK_THROWS_AS(parse_design("2 2 2\nz1 0\n0 z1*"), ParseError);        // z2 never used
    CHECK_THROWS_AS(parse_design("2 2 1\n+z1 0\n0 z1*"), ParseError);       // no leading +
}

TEST_CASE("row of zeros is a parse-level success") {
    // Syntax only; the orthogonality checker deals with it later.
    Design d = parse_design("2 2 1\nz1 z1\n0 0");
    CHECK(d.p == 2);
    CodReport rep = is_cod(d);
    CHECK_FALSE(rep.ok);
    bool warned_zero_row = false, warned_duplicate = false;
    for (const std::string& w : rep.warnings) {
        if (w.find("all zeros") != std::string::npos) warned_zero_row = true;
        if (w.find("more than once") != std::string::npos) warned_duplicate = true;
    }
    CHECK(warned_zero_row);
    CHECK(warned_duplicate);
}

TEST_CASE("entry ranks order the alphabet canonically") {
    std::vector<Entry> order{Entry::zero(),
                             Entry{1, +1, false}, Entry{1, +1, true}, Entry{1, -1, false},
                             Entry{1, -1, true},  Entry{2, +1, false}};
    for (size_t i = 0; i + 1 < order.size(); ++i) CHECK(entry_rank(order[i]) < entry_rank(order[i + 1]));
}

TEST_CASE("variable_occurrences lists cells row-major") {
    Design d2 = fixtures::d2();
    auto occ = variable_occurrences(d2, 2);
    REQUIRE(occ.size() == 4);
    CHECK((occ[0].row == 0 && occ[0].col == 3 && occ[0].sign == +1 && !occ[0].conj));
    CHECK((occ[1].row == 1 && occ[1].col == 2 && occ[1].sign == -1 && !occ[1].conj));
    CHECK((occ[2].row == 2 && occ[2].col == 1 && occ[2].sign == +1 && occ[2].conj));
    CHECK((occ[3].row == 3 && occ[3].col == 0 && occ[3].sign == -1 && occ[3].conj));

    auto base_occ = variable_occurrences(fixtures::base(), 1);
    REQUIRE(base_occ.size() == 2);
    CHECK((base_occ[0].row == 0 && base_occ[0].col == 0 && !base_occ[0].conj));
    CHECK((base_occ[1].row == 1 && base_occ[1].col == 1 && base_occ[1].conj));

    auto al_occ = variable_occurrences(fixtures::alamouti(), 2);
    REQUIRE(al_occ.size() == 2);
    CHECK((al_occ[0].row == 0 && al_occ[0].col == 1 && al_occ[0].sign == +1 && !al_occ[0].conj));
    CHECK((al_occ[1].row == 1 && al_occ[1].col == 0 && al_occ[1].sign == -1 && al_occ[1].conj));

    CHECK_THROWS_AS(variable_occurrences(d2, 0), std::out_of_range);
    CHECK_THROWS_AS(variable_occurrences(d2, 3), std::out_of_range);
}

TEST_CASE("gram of the Alamouti design is the identity form") {
    GramMatrix g = gram(fixtures::alamouti());
    GramEntry expected = GramEntry::from_terms(
        {make_term(+1, {1, true}, {1, false}), make_term(+1, {2, true}, {2, false})});
    CHECK(g[0][0] == expected);
    CHECK(g[1][1] == expected);
    CHECK(g[0][1].is_zero());
    CHECK(g[1][0].is_zero());
}

TEST_CASE("a broken sign leaves doubled terms instead of cancelling") {
    GramMatrix g = gram(fixtures::flipped_alamouti());
    REQUIRE(g[0][1].terms.size() == 2);
    for (const QuadTerm& t : g[0][1].terms) {
        CHECK(t.sign == +1);
        CHECK(t.a == Factor{1, true});
        CHECK(t.b == Factor{2, false});
    }
}

TEST_CASE("gram of the 4x4 fixture: hand-checked off-diagonal and full identity") {
    Design d2 = fixtures::d2();
    GramMatrix g = gram(d2);
    // Column pair (1,4): rows contribute +z1* z2 and -z1* z2, which cancel.
    CHECK(g[0][3].is_zero());
    GramEntry expected = GramEntry::from_terms(
        {make_term(+1, {1, true}, {1, false}), make_term(+1, {2, true}, {2, false})});
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b)
                CHECK(g[static_cast<size_t>(a)][static_cast<size_t>(b)] == expected);
            else
                CHECK(g[static_cast<size_t>(a)][static_cast<size_t>(b)].is_zero());
        }
}

TEST_CASE("is_cod verdicts on the fixtures") {
    CHECK(is_cod(fixtures::alamouti()).ok);
    CHECK(is_cod(fixtures::d2()).ok);
    CHECK(is_cod(fixtures::t_design()).ok);

    CodReport rep = is_cod(fixtures::flipped_alamouti());
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].col_a == 0);
    CHECK(rep.violations[0].col_b == 1);
}

TEST_CASE("symbolic verdict agrees with exact numeric evaluation") {
    std::mt19937 rng(20240817);
    auto agree = [&](const Design& d) {
        bool symbolic = is_cod(d).ok;
        for (int trial = 0; trial < 3; ++trial) {
            bool numeric = fixtures::cod_axiom_numeric(d, rng);
            if (symbolic) {
                CHECK(numeric);
            }
            if (!numeric) {
                CHECK_FALSE(symbolic);
            }
        }
    };
    agree(fixtures::d2());
    agree(fixtures::alamouti());
    agree(fixtures::t_design());
    agree(fixtures::flipped_alamouti());
    // Random single-cell mutations of the fixture.
    for (int i = 0; i < 50; ++i) {
        Design d = fixtures::d2();
        std::uniform_int_distribution<int> row(0, d.p - 1), col(0, d.n - 1), mode(0, 2);
        Entry& e = d.at(row(rng), col(rng));
        if (e.is_zero()) continue;
        int mm = mode(rng);
        if (mm == 0) e = e.negated();
        if (mm == 1) e = e.conjugated();
        if (mm == 2) e = Entry::zero();
        try {
            agree(d);
        } catch (const std::invalid_argument&) {
            // zeroing out a variable's last occurrence makes the design invalid
        }
    }
}

TEST_CASE("gram is invariant under row permutation") {
    std::mt19937 rng(7);
    for (const Design& d : {fixtures::d2(), fixtures::alamouti()}) {
        GramMatrix g0 = gram(d);
        for (int i = 0; i < 25; ++i) {
            Permutation perm = identity_permutation(d.p);
            std::shuffle(perm.begin(), perm.end(), rng);
            CHECK(gram(apply_op(d, RowPerm{perm})) == g0);
        }
    }
}

TEST_CASE("2x2 classification matches the displayed shapes") {
    CHECK(classify_2x2(fixtures::alamouti(), 0, 1, 0, 1) == TwoByTwoClass::Alamouti);
    CHECK(classify_2x2(fixtures::base(), 0, 1, 0, 1) == TwoByTwoClass::Diagonal);
    // Fixture rows 1,2 on z1 (columns 1,2) read z1,0 / 0,z1: Trivial.
    CHECK(classify_2x2(fixtures::d2(), 0, 1, 0, 1) == TwoByTwoClass::Trivial);
    CHECK(classify_2x2(fixtures::flipped_alamouti(), 0, 1, 0, 1) == TwoByTwoClass::Other);
    CHECK_THROWS_AS(classify_2x2(fixtures::d2(), 0, 1, 0, 3), std::invalid_argument);
}

TEST_CASE("each occurrence meets m-1 Trivial, m-1 Alamouti and one Diagonal") {
    Design d = fixtures::d2();
    const int m = d.n / 2;
    for (int j = 1; j <= d.k; ++j) {
        auto occ = variable_occurrences(d, j);
        for (const Occurrence& o : occ) {
            int trivial = 0, alamouti = 0, diagonal = 0;
            for (const Occurrence& o2 : occ) {
                if (o2.row == o.row) continue;
                switch (classify_2x2(d, o.row, o2.row, o.col, o2.col)) {
                    case TwoByTwoClass::Trivial: ++trivial; break;
                    case TwoByTwoClass::Alamouti: ++alamouti; break;
                    case TwoByTwoClass::Diagonal: ++diagonal; break;
                    default: break;
                }
            }
            CHECK(trivial == m - 1);
            CHECK(alamouti == m - 1);
            CHECK(diagonal == 1);
        }
    }
}

TEST_CASE("is_bcod verdicts") {
    CHECK(is_bcod(fixtures::base()).ok);
    CHECK(is_bcod(fixtures::d2()).ok);

    BcodReport t = is_bcod(fixtures::t_design());
    CHECK_FALSE(t.ok);
    CHECK(t.cod_ok);
    CHECK(t.dims_ok);
    CHECK_FALSE(t.counts_ok.value());  // z1* never appears
    CHECK_FALSE(t.skew_ok.value());

    BcodReport a = is_bcod(fixtures::alamouti());
    CHECK_FALSE(a.ok);
    CHECK(a.cod_ok);
    CHECK_FALSE(a.dims_ok);  // p != 2k

    BcodReport f = is_bcod(fixtures::flipped_alamouti());
    CHECK_FALSE(f.ok);
    CHECK_FALSE(f.cod_ok);
}

TEST_CASE("balanced verdict survives a column scramble") {
    // Balance is defined up to equivalence; the checker must not depend on
    // the B_j blocks sitting in literal column order.
    std::mt19937 rng(99);
    Design d = fixtures::d2();
    for (int i = 0; i < 25; ++i) {
        Permutation perm = identity_permutation(d.n);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(is_bcod(apply_op(d, ColPerm{perm})).ok);
    }
}
