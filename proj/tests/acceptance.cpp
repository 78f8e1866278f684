// Acceptance suite: one pass/fail line per criterion, with wall-clock budget
// enforcement. Exit status is the number of failed criteria.

#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"

using namespace cod;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

bool check(bool cond, std::string& why, const std::string& msg) {
    if (!cond && why.empty()) why = msg;
    return cond;
}

// --- 1. axiom suite ---------------------------------------------------------

bool axiom_suite(std::string& why) {
    bool ok = true;
    ok &= check(is_cod(fixtures::d2()).ok, why, "fixture fails is_cod");
    ok &= check(is_bcod(fixtures::d2()).ok, why, "fixture fails is_bcod");
    ok &= check(is_cod(fixtures::base()).ok, why, "base fails is_cod");
    ok &= check(is_bcod(fixtures::base()).ok, why, "base fails is_bcod");

    CodReport flipped = is_cod(fixtures::flipped_alamouti());
    ok &= check(!flipped.ok, why, "sign-flipped design passes is_cod");
    ok &= check(flipped.violations.size() == 1 && flipped.violations[0].col_a == 0 &&
                    flipped.violations[0].col_b == 1,
                why, "sign-flipped design: violation not named at columns (1,2)");

    BcodReport t = is_bcod(fixtures::t_design());
    ok &= check(t.cod_ok, why, "T-block design should be a COD");
    ok &= check(!t.ok && !t.counts_ok.value_or(true) && !t.skew_ok.value_or(true), why,
                "T-block design: occurrence-count and skew conditions must fail");
    bool named = false;
    for (const std::string& s : t.problems)
        if (s.find("z1 occurs 2 times plain and 0 conjugated") != std::string::npos) named = true;
    ok &= check(named, why, "T-block design: failing count not named");
    return ok;
}

// --- 2. constructive column-restricted reduction -----------------------------

bool reduction_suite(std::string& why) {
    bool ok = true;
    for (int m = 1; m <= 4; ++m) {
        Design d = construct_bcod(m);
        for (int j = 1; j <= d.k; ++j) {
            Reduction red = to_bj_form(d, j);
            ok &= check(is_column_restricted(red.ops, m), why,
                        "m=" + std::to_string(m) + " j=" + std::to_string(j) + ": ops not column-restricted");
            ok &= check(red.design == apply_ops(d, red.ops), why, "ops do not reproduce the design");
            auto rep = find_bj_rows(red.design, j);
            ok &= check(rep.has_value() && rep->skew && rep->n1 == m && rep->n2 == m, why,
                        "m=" + std::to_string(m) + " j=" + std::to_string(j) + ": no verified B_j form");
            if (rep) {
                for (int s : rep->top_signs) ok &= check(s == +1, why, "diagonal not normalized to +z_j");
                for (int s : rep->bottom_signs) ok &= check(s == +1, why, "diagonal not normalized to +z_j*");
            }
        }
    }
    return ok;
}

// --- 3. standard-form column structure ---------------------------------------

bool standard_form_suite(std::string& why) {
    bool ok = true;
    for (int m = 1; m <= 4; ++m) {
        Design d = construct_bcod(m);
        for (int i = 0; i < m; ++i) {
            for (int r = 0; r < d.p; ++r)
                ok &= check(d.at(r, i).is_zero() != d.at(r, m + i).is_zero(), why,
                            "m=" + std::to_string(m) + ": columns " + std::to_string(i + 1) + " and " +
                                std::to_string(m + i + 1) + " are not complementary");
            for (int j = 1; j <= d.k; ++j) {
                int r_left = -1, r_right = -1;
                for (int r = 0; r < d.p; ++r) {
                    if (d.at(r, i).var == j) r_left = r;
                    if (d.at(r, m + i).var == j) r_right = r;
                }
                ok &= check(r_left >= 0 && r_right >= 0, why, "variable missing from a column");
                if (r_left < 0 || r_right < 0) continue;
                ok &= check(d.at(r_left, i).conj != d.at(r_right, m + i).conj, why,
                            "conjugations equal across the column pair");
                ok &= check(classify_2x2(d, r_left, r_right, i, m + i) == TwoByTwoClass::Diagonal, why,
                            "column-pair occurrences do not form a Diagonal 2x2");
            }
        }
    }
    return ok;
}

// --- 4. induction step -------------------------------------------------------

bool induce_suite(std::string& why) {
    bool ok = true;
    for (int m : {3, 4}) {
        Design d = construct_bcod(m);
        int cases = 0;
        for (int r = 0; r < d.p; ++r) {
            LeftPattern alpha = left_pattern(d, r);
            if (alpha.weight() > m - 2) continue;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (i == j || alpha.test(i) || alpha.test(j)) continue;
                    ++cases;
                    int r2 = induce_step(d, r, i, j);
                    uint64_t want = alpha.bits ^ (1ull << i) ^ (1ull << j);
                    ok &= check(left_pattern(d, r2).bits == want, why,
                                "m=" + std::to_string(m) + ": wrong left pattern from row " +
                                    std::to_string(r + 1));
                    ok &= check(row_class(d, r2) == row_class(d, r), why, "conjugation class changed");
                }
        }
        ok &= check(cases > 0, why, "no rows met the precondition");
    }
    return ok;
}

// --- 5. delay bound equality -------------------------------------------------

bool bound_equality_suite(std::string& why) {
    bool ok = true;
    for (int m = 1; m <= 4; ++m) {
        Design d = construct_bcod(m);
        DelayBoundReport rep = verify_delay_bound(d);
        ok &= check(rep.ok, why, "m=" + std::to_string(m) + ": delay bound verification failed");
        ok &= check(rep.p == (1 << m) && rep.required_rows == (1ull << m), why,
                    "m=" + std::to_string(m) + ": bound not met with equality");
    }
    return ok;
}

// --- 6. independent tightness oracle -----------------------------------------

bool search_suite(std::string& why) {
    bool ok = true;
    auto run = [&](int n, int p_max, int workers) {
        SearchConfig cfg;
        cfg.n = n;
        cfg.p_max = p_max;
        cfg.parallel_width = workers;
        return search_min_delay(cfg);
    };

    ok &= check(run(4, 3, 1).outcome == SearchOutcome::NoneExists, why,
                "a design with n=4, p<=3 was found (or the search did not certify)");
    SearchResult found4 = run(4, 4, 1);
    ok &= check(found4.outcome == SearchOutcome::Found && found4.design->p == 4 &&
                    is_bcod(*found4.design).ok,
                why, "no design found at n=4, p=4");
    ok &= check(run(2, 1, 1).outcome == SearchOutcome::NoneExists, why, "n=2, p<=1 not certified empty");
    SearchResult found2 = run(2, 2, 1);
    ok &= check(found2.outcome == SearchOutcome::Found && is_bcod(*found2.design).ok, why,
                "no design found at n=2, p=2");

    std::string ref = serialize_design(*found4.design);
    for (int w : {2, 4}) {
        SearchResult res = run(4, 4, w);
        ok &= check(res.outcome == SearchOutcome::Found && serialize_design(*res.design) == ref &&
                        res.nodes == found4.nodes,
                    why, "search result differs with " + std::to_string(w) + " workers");
    }
    return ok;
}

// --- 7. reference formulas ---------------------------------------------------

bool formula_suite(std::string& why) {
    bool ok = true;
    const int expected[17] = {0, 0, 1, 2, 2, 3, 3, 3, 3, 4, 5, 6, 6, 7, 7, 7, 7};
    for (int n = 1; n <= 16; ++n)
        ok &= check(delta(n) == expected[n], why, "delta(" + std::to_string(n) + ") wrong");
    ok &= check(max_rate_delay_bound(4) == 4, why, "max-rate delay for n=4");
    ok &= check(max_rate_delay_bound(5) == 15, why, "max-rate delay for n=5");
    ok &= check(max_rate_delay_bound(6) == 30, why, "max-rate delay for n=6");
    return ok;
}

// --- 8. equivalence invariance (randomized) ----------------------------------

bool invariance_suite(std::string& why) {
    bool ok = true;
    std::mt19937 rng(0xC0DE);
    std::uniform_int_distribution<int> len(1, 5);
    for (const Design& d : {fixtures::d2(), construct_bcod(3)}) {
        const int m = d.n / 2;
        for (int iter = 0; iter < 500; ++iter) {
            // Half the sequences may include instance conjugation; those may
            // only be checked for orthogonality.
            bool with_conj = iter % 2 == 0;
            auto ops = fixtures::random_ops(d, rng, len(rng), with_conj);
            Design t = apply_ops(d, ops);
            ok &= check(is_cod(t).ok, why, "an equivalence sequence broke orthogonality");
            if (!with_conj) {
                bool zeros = true, uniform = true;
                for (int r = 0; r < t.p; ++r) {
                    zeros &= row_zero_count(t, r) == m;
                    uniform &= row_class(t, r) != RowClass::Mixed;
                }
                ok &= check(zeros, why, "a conjugation-free sequence broke the zero counts");
                ok &= check(uniform, why, "a conjugation-free sequence broke conjugation separation");
            }
            if (!ok) return ok;
        }
        // Witness: one instance conjugation breaks conjugation separation.
        Design mixed = apply_op(d, VarConj{1});
        ok &= check(is_cod(mixed).ok, why, "conjugation witness is no longer a COD");
        BcodReport rep = is_bcod(mixed);
        ok &= check(!rep.conj_separated.value_or(true) && rep.row_zeros_ok.value_or(false), why,
                    "VarConj(1) did not break exactly the separation condition");
    }
    return ok;
}

// --- 9. atomicity ------------------------------------------------------------

bool atomicity_suite(std::string& why) {
    bool ok = true;
    for (int m = 1; m <= 4; ++m)
        ok &= check(is_atomic(construct_bcod(m)), why, "m=" + std::to_string(m) + " construction not atomic");
    Design stacked = fixtures::stacked_two_d2();
    std::vector<Component> comps = atomic_components(stacked);
    ok &= check(comps.size() == 2, why, "stacked fixture does not split into two components");
    for (const Component& comp : comps) {
        Design sub = component_subdesign(stacked, comp);
        ok &= check(is_cod(sub).ok, why, "a component sub-design fails is_cod");
    }
    return ok;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {"1 axiom suite (fixtures pass, negatives fail with named violations)", 1.0, axiom_suite},
        {"2 column-restricted reduction to every B_j form, m <= 4", 10.0, reduction_suite},
        {"3 standard-form column structure, m <= 4", 5.0, standard_form_suite},
        {"4 induction step over all admissible (row, i, j), m in {3,4}", 5.0, induce_suite},
        {"5 delay bound met with equality on constructions, m <= 4", 30.0, bound_equality_suite},
        {"6 exhaustive tightness oracle at n in {2,4}, worker-independent", 60.0, search_suite},
        {"7 reference formulas (delta table, max-rate delays)", 5.0, formula_suite},
        {"8 equivalence invariance, >= 1000 random sequences", 30.0, invariance_suite},
        {"9 atomicity of constructions; stacked fixture decomposes", 10.0, atomicity_suite},
    };

    int failures = 0;
    for (Criterion& c : criteria) {
        std::string why;
        auto t0 = Clock::now();
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double sec = std::chrono::duration<double>(Clock::now() - t0).count();
        if (sec > c.budget_seconds) {
            ok = false;
            if (why.empty()) why = "over time budget";
        }
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << "  criterion " << c.name << "  [" << sec << "s";
        if (!ok) line << "; " << why;
        line << "]";
        std::cout << line.str() << std::endl;
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::cout << "all " << criteria.size() << " acceptance criteria passed" << std::endl;
    else
        std::cout << failures << " acceptance criteria FAILED" << std::endl;
    return failures;
}
