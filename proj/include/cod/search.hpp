#pragma once

// Exhaustive backtracking over design grids, used both to complete
// constructed skeletons and to certify minimal-delay existence questions at
// small n.
//
// The searcher assigns cells row-major in a fixed candidate order
// (0 < z1 < z1* < -z1 < -z1* < z2 < ...), so the first solution found is the
// canonical one and reruns are reproducible. Pruning:
//  * one occurrence of each variable per column, exactly k nonzeros per
//    column (forced for any COD by the Gram diagonal)
//  * exactly m zeros per row and conjugation-uniform rows (balance)
//  * no variable twice in a row (such rows can never cancel)
//  * partial-Gram cancellation: every cross term needs a partner row with
//    the mirrored variable/column orientation; once both orientations are
//    spent in a column pair, an uncancelled term is fatal
//  * optional symmetry fixes: a pinned first row and first-use ordering of
//    fresh variables (any solution can be relabelled into that gauge)
//  * complement pairing: every row of a balanced design has a unique
//    complement partner (complementary zero pattern, opposite conjugation,
//    same variables), so free rows may be arranged as adjacent pairs whose
//    second member is almost fully forced by the first
// Completed grids are accepted only after a full balance check, so pruning
// strength never affects correctness, only speed.
//
// search_min_delay splits the first free row into an ordered task list and
// aggregates task results by index, which makes the outcome (including the
// budget-exceeded case) independent of worker count and scheduling.

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cod/bcod.hpp"
#include "cod/design.hpp"
#include "cod/gram.hpp"

namespace cod {

namespace detail {

struct GridSpec {
    int p = 0;
    int n = 0;
    int k = 0;
    std::vector<Entry> cells;  // initial values; meaningful where fixed
    std::vector<char> fixed;   // per cell
    std::vector<int> mate_of;      // per row: index of the earlier row this one complements, or -1
    std::vector<char> force_plain; // per row: restrict to the nonconjugated class
    bool canonical_var_order = true;
    uint64_t node_budget = 200'000'000;
};

struct GridOutcome {
    bool found = false;
    bool exceeded = false;
    Design design;
    uint64_t nodes = 0;
};

class GridSearch {
  public:
    explicit GridSearch(const GridSpec& spec)
        : spec_(spec), p_(spec.p), n_(spec.n), k_(spec.k), m_(spec.n / 2) {
        if (n_ % 2 != 0 || n_ < 2) throw std::invalid_argument("grid search needs even n >= 2");
        if (k_ < 1 || k_ > 31) throw std::invalid_argument("grid search supports 1 <= k <= 31");
        cells_ = spec.cells;
        cells_.resize(static_cast<size_t>(p_) * n_, Entry::zero());
        fixed_ = spec.fixed;
        fixed_.resize(static_cast<size_t>(p_) * n_, 0);
        mate_of_ = spec.mate_of;
        mate_of_.resize(static_cast<size_t>(p_), -1);
        force_plain_ = spec.force_plain;
        force_plain_.resize(static_cast<size_t>(p_), 0);
        col_vars_.assign(static_cast<size_t>(n_), 0u);
        col_filled_.assign(static_cast<size_t>(n_), 0);
        open_.assign(static_cast<size_t>(n_) * n_, {});
        max_var_ = 0;
    }

    // Full search; stops at the first completed grid passing is_bcod.
    GridOutcome run() {
        stop_row_ = p_;
        GridOutcome out;
        dfs(0, 0, RowState{});
        out.found = found_.has_value();
        if (out.found) out.design = *found_;
        out.exceeded = exceeded_;
        out.nodes = nodes_;
        return out;
    }

    // Enumerates every consistent assignment of row `row` (rows before it
    // must be fixed) without descending further. Used for task splitting.
    std::vector<std::vector<Entry>> enumerate_row(int row) {
        stop_row_ = row + 1;
        capture_row_ = row;
        dfs(0, 0, RowState{});
        return captured_;
    }

    bool exceeded() const { return exceeded_; }
    uint64_t nodes() const { return nodes_; }

  private:
    struct RowState {
        int zeros = 0;
        int nonzeros = 0;
        int cls = -1;  // -1 unknown, 0 plain, 1 conjugated
        uint32_t vars = 0;
    };

    const GridSpec& spec_;
    int p_, n_, k_, m_;
    std::vector<Entry> cells_;
    std::vector<char> fixed_;
    std::vector<int> mate_of_;
    std::vector<char> force_plain_;
    std::vector<uint32_t> col_vars_;
    std::vector<int> col_filled_;
    std::vector<std::vector<QuadTerm>> open_;  // indexed a*n+b for a < b
    int max_var_ = 0;
    uint64_t nodes_ = 0;
    bool exceeded_ = false;
    std::optional<Design> found_;
    int stop_row_ = 0;
    int capture_row_ = -1;
    std::vector<std::vector<Entry>> captured_;

    Entry& cell(int r, int c) { return cells_[static_cast<size_t>(r) * n_ + c]; }
    bool is_fixed(int r, int c) const { return fixed_[static_cast<size_t>(r) * n_ + c] != 0; }

    bool admissible(int r, int c, const Entry& e, const RowState& rs) const {
        if (e.is_zero()) {
            if (rs.zeros >= m_) return false;
            // enough rows must remain to fill the column to k nonzeros
            return col_filled_[static_cast<size_t>(c)] + (p_ - 1 - r) >= k_;
        }
        if (rs.nonzeros >= m_) return false;
        if (col_filled_[static_cast<size_t>(c)] >= k_) return false;
        uint32_t bit = 1u << (e.var - 1);
        if (col_vars_[static_cast<size_t>(c)] & bit) return false;
        if (rs.vars & bit) return false;
        if (rs.cls >= 0 && rs.cls != (e.conj ? 1 : 0)) return false;
        if (force_plain_[static_cast<size_t>(r)] && e.conj) return false;
        if (spec_.canonical_var_order && e.var > max_var_ + 1) return false;
        return true;
    }

    // Constraints a complement row inherits from its partner: zero exactly
    // where the partner is nonzero, opposite conjugation class, and only the
    // partner's variables.
    bool mate_admissible(int r, int c, const Entry& e) const {
        int r0 = mate_of_[static_cast<size_t>(r)];
        const Entry& other = cells_[static_cast<size_t>(r0) * n_ + c];
        if (e.is_zero()) return !other.is_zero();
        if (!other.is_zero()) return false;
        bool partner_conj = false;
        bool var_there = false;
        for (int cc = 0; cc < n_; ++cc) {
            const Entry& pe = cells_[static_cast<size_t>(r0) * n_ + cc];
            if (pe.is_zero()) continue;
            partner_conj = pe.conj;
            if (pe.var == e.var) var_there = true;
        }
        return var_there && e.conj != partner_conj;
    }

    void apply(int c, const Entry& e, RowState& rs, int& saved_max) {
        saved_max = max_var_;
        if (e.is_zero()) {
            ++rs.zeros;
            return;
        }
        ++rs.nonzeros;
        rs.vars |= 1u << (e.var - 1);
        if (rs.cls < 0) rs.cls = e.conj ? 1 : 0;
        col_vars_[static_cast<size_t>(c)] |= 1u << (e.var - 1);
        ++col_filled_[static_cast<size_t>(c)];
        if (e.var > max_var_) max_var_ = e.var;
    }

    void undo(int c, const Entry& e, int saved_max) {
        max_var_ = saved_max;
        if (e.is_zero()) return;
        col_vars_[static_cast<size_t>(c)] &= ~(1u << (e.var - 1));
        --col_filled_[static_cast<size_t>(c)];
    }

    // Adds the cross terms of completed row r to the open sets and rejects
    // the row when any surviving term can no longer meet a partner.
    bool ingest_row(int r, std::vector<std::pair<int, QuadTerm>>& journal, std::vector<int>& removed_at) {
        for (int a = 0; a < n_; ++a) {
            if (cell(r, a).is_zero()) continue;
            for (int b = a + 1; b < n_; ++b) {
                if (cell(r, b).is_zero()) continue;
                QuadTerm term = cross_term(cell(r, a), cell(r, b));
                auto& list = open_[static_cast<size_t>(a) * n_ + b];
                bool cancelled = false;
                for (size_t i = 0; i < list.size(); ++i)
                    if (list[i].a == term.a && list[i].b == term.b && list[i].sign == -term.sign) {
                        journal.push_back({a * n_ + b, list[i]});
                        removed_at.push_back(static_cast<int>(i));
                        list.erase(list.begin() + static_cast<long>(i));
                        cancelled = true;
                        break;
                    }
                if (!cancelled) {
                    journal.push_back({a * n_ + b, term});
                    removed_at.push_back(-1);
                    list.push_back(term);
                }
            }
        }
        // Deadness scan: a term at (a, b) in variables v, w can only cancel
        // against a future row placing (v@a, w@b) or (w@a, v@b).
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                for (const QuadTerm& t : open_[static_cast<size_t>(a) * n_ + b]) {
                    uint32_t vbit = 1u << (t.a.var - 1);
                    uint32_t wbit = 1u << (t.b.var - 1);
                    bool orient1 = !(col_vars_[static_cast<size_t>(a)] & vbit) &&
                                   !(col_vars_[static_cast<size_t>(b)] & wbit);
                    bool orient2 = !(col_vars_[static_cast<size_t>(a)] & wbit) &&
                                   !(col_vars_[static_cast<size_t>(b)] & vbit);
                    if (!orient1 && !orient2) return false;
                }
        return true;
    }

    void rollback_row(std::vector<std::pair<int, QuadTerm>>& journal, std::vector<int>& removed_at) {
        for (size_t i = journal.size(); i-- > 0;) {
            auto& list = open_[static_cast<size_t>(journal[i].first)];
            if (removed_at[i] < 0) {
                list.pop_back();
            } else {
                list.insert(list.begin() + removed_at[i], journal[i].second);
            }
        }
        journal.clear();
        removed_at.clear();
    }

    // Returns true when the caller should unwind (solution found or budget
    // exhausted).
    bool dfs(int r, int c, RowState rs) {
        if (c == n_) {
            std::vector<std::pair<int, QuadTerm>> journal;
            std::vector<int> removed_at;
            bool viable = ingest_row(r, journal, removed_at);
            bool stop = false;
            if (viable) {
                if (r + 1 == stop_row_ && capture_row_ >= 0) {
                    captured_.emplace_back(cells_.begin() + static_cast<long>(r) * n_,
                                           cells_.begin() + static_cast<long>(r + 1) * n_);
                } else {
                    stop = dfs(r + 1, 0, RowState{});
                }
            }
            rollback_row(journal, removed_at);
            return stop;
        }
        if (r == p_) return finalize();

        if (is_fixed(r, c)) {
            Entry e = cell(r, c);
            if (++nodes_ > spec_.node_budget) {
                exceeded_ = true;
                return true;
            }
            if (!admissible(r, c, e, rs)) return false;
            int saved_max = 0;
            RowState rs2 = rs;
            apply(c, e, rs2, saved_max);
            bool stop = dfs(r, c + 1, rs2);
            undo(c, e, saved_max);
            return stop;
        }

        const bool mate = mate_of_[static_cast<size_t>(r)] >= 0;
        for (int rank = 0; rank <= 4 * k_; ++rank) {
            Entry e;
            if (rank > 0) {
                int var = 1 + (rank - 1) / 4;
                int kind = (rank - 1) % 4;
                e = Entry{var, (kind >= 2) ? -1 : +1, (kind % 2) != 0};
            }
            if (++nodes_ > spec_.node_budget) {
                exceeded_ = true;
                return true;
            }
            if (mate && !mate_admissible(r, c, e)) continue;
            if (!admissible(r, c, e, rs)) continue;
            int saved_max = 0;
            RowState rs2 = rs;
            cell(r, c) = e;
            apply(c, e, rs2, saved_max);
            bool stop = dfs(r, c + 1, rs2);
            undo(c, e, saved_max);
            cell(r, c) = Entry::zero();
            if (stop) return true;
        }
        return false;
    }

    bool finalize() {
        for (int c = 0; c < n_; ++c)
            if (col_filled_[static_cast<size_t>(c)] != k_) return false;
        for (const auto& list : open_)
            if (!list.empty()) return false;
        Design d;
        d.p = p_;
        d.n = n_;
        d.k = k_;
        d.cells = cells_;
        if (!is_bcod(d).ok) return false;
        found_ = std::move(d);
        return true;
    }
};

inline GridOutcome solve_grid(const GridSpec& spec) { return GridSearch(spec).run(); }

}  // namespace detail

struct SearchConfig {
    int n = 2;
    int p_max = 2;
    bool symmetry_pruning = true;
    int parallel_width = 1;           // worker hint; 0 means hardware
    uint64_t node_budget = 50'000'000;
};

enum class SearchOutcome { Found, NoneExists, ResourceLimit };

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::NoneExists;
    std::optional<Design> design;
    uint64_t nodes = 0;       // deterministic: independent of worker count
    int certified_p_max = 0;  // nonexistence certified for all p up to here
};

namespace detail {

// Pinned first row (z1, ..., zm, 0, ..., 0): reachable from any balanced
// design by row/column permutation, variable negation and relabelling.
// Under symmetry pruning the rows are additionally arranged as adjacent
// complement pairs with the plain member first.
inline GridSpec search_spec(int n, int p, bool symmetry) {
    GridSpec spec;
    spec.p = p;
    spec.n = n;
    spec.k = p / 2;
    spec.cells.assign(static_cast<size_t>(p) * n, Entry::zero());
    spec.fixed.assign(static_cast<size_t>(p) * n, 0);
    spec.canonical_var_order = symmetry;
    if (symmetry) {
        for (int c = 0; c < n; ++c) {
            if (c < n / 2) spec.cells[static_cast<size_t>(c)] = Entry{c + 1, +1, false};
            spec.fixed[static_cast<size_t>(c)] = 1;
        }
        spec.mate_of.assign(static_cast<size_t>(p), -1);
        spec.force_plain.assign(static_cast<size_t>(p), 0);
        for (int r = 0; r < p; ++r) {
            if (r % 2 == 1)
                spec.mate_of[static_cast<size_t>(r)] = r - 1;
            else
                spec.force_plain[static_cast<size_t>(r)] = 1;
        }
    }
    return spec;
}

struct TaskResult {
    bool ran = false;
    bool found = false;
    bool exceeded = false;
    Design design;
    uint64_t nodes = 0;
};

}  // namespace detail

// Smallest-delay balanced design with n columns and at most p_max rows, by
// exhaustive search. Absence is a certificate: no such design with p <=
// p_max exists. The result, including node counts, does not depend on the
// number of workers.
inline SearchResult search_min_delay(const SearchConfig& cfg) {
    if (cfg.n < 2 || cfg.n % 2 != 0) throw std::invalid_argument("search: n must be even and >= 2");
    if (cfg.n > 12) throw std::invalid_argument("search: n > 12 is not supported");
    if (cfg.p_max < 0 || cfg.p_max > 62) throw std::invalid_argument("search: p_max out of range");
    if (cfg.parallel_width < 0) throw std::invalid_argument("search: parallel_width must be >= 0");

    int workers = cfg.parallel_width;
    if (workers == 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    SearchResult result;
    const int m = cfg.n / 2;

    for (int p = 2; p <= cfg.p_max; p += 2) {
        if (p / 2 < m) {  // a balanced row needs m distinct variables
            result.certified_p_max = p;
            continue;
        }
        detail::GridSpec spec = detail::search_spec(cfg.n, p, cfg.symmetry_pruning);
        spec.node_budget = cfg.node_budget;

        int task_row = 0;
        while (task_row < p) {
            bool all_fixed = true;
            for (int c = 0; c < cfg.n && all_fixed; ++c)
                all_fixed = spec.fixed[static_cast<size_t>(task_row) * cfg.n + c] != 0;
            if (!all_fixed) break;
            ++task_row;
        }

        detail::GridSearch gen(spec);
        std::vector<std::vector<Entry>> tasks = gen.enumerate_row(task_row);
        result.nodes += gen.nodes();
        if (gen.exceeded()) {
            result.outcome = SearchOutcome::ResourceLimit;
            return result;
        }
        if (tasks.empty()) {
            result.certified_p_max = p;
            continue;
        }

        uint64_t per_task = spec.node_budget / tasks.size();
        if (per_task < 4096) per_task = 4096;

        std::vector<detail::TaskResult> results(tasks.size());
        std::atomic<size_t> next{0};
        std::atomic<size_t> first_decided{tasks.size()};

        auto run_task = [&](size_t idx) {
            if (idx > first_decided.load()) return;  // cannot influence the outcome
            detail::GridSpec ts = spec;
            ts.node_budget = per_task;
            for (int c = 0; c < cfg.n; ++c) {
                ts.cells[static_cast<size_t>(task_row) * cfg.n + c] = tasks[idx][static_cast<size_t>(c)];
                ts.fixed[static_cast<size_t>(task_row) * cfg.n + c] = 1;
            }
            detail::GridOutcome out = detail::solve_grid(ts);
            results[idx].ran = true;
            results[idx].found = out.found;
            results[idx].exceeded = out.exceeded;
            results[idx].nodes = out.nodes;
            if (out.found) results[idx].design = out.design;
            if (out.found || out.exceeded) {
                size_t cur = first_decided.load();
                while (idx < cur && !first_decided.compare_exchange_weak(cur, idx)) {
                }
            }
        };

        if (workers == 1 || tasks.size() == 1) {
            for (size_t i = 0; i < tasks.size(); ++i) {
                run_task(i);
                if (results[i].found || results[i].exceeded) break;
            }
        } else {
            std::vector<std::thread> pool;
            int width = workers;
            if (static_cast<size_t>(width) > tasks.size()) width = static_cast<int>(tasks.size());
            for (int w = 0; w < width; ++w)
                pool.emplace_back([&] {
                    for (;;) {
                        size_t idx = next.fetch_add(1);
                        if (idx >= tasks.size()) return;
                        run_task(idx);
                    }
                });
            for (std::thread& th : pool) th.join();
        }

        // Aggregate strictly by task index: the first decided task wins, so
        // the answer is the canonical one no matter how tasks were scheduled.
        bool decided = false;
        for (size_t i = 0; i < tasks.size() && !decided; ++i) {
            if (!results[i].ran) break;  // serial early-exit: later tasks are undecided losers
            result.nodes += results[i].nodes;
            if (results[i].exceeded) {
                result.outcome = SearchOutcome::ResourceLimit;
                return result;
            }
            if (results[i].found) {
                result.outcome = SearchOutcome::Found;
                result.design = results[i].design;
                return result;
            }
        }
        result.certified_p_max = p;
    }

    result.outcome = SearchOutcome::NoneExists;
    result.certified_p_max = cfg.p_max;
    return result;
}

}  // namespace cod
