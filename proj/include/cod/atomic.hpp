#pragma once

// Atomicity via the variable-adjacency graph: variables s and t are adjacent
// when some row contains both. A balanced design is atomic exactly when this
// graph is connected; its connected components induce row-disjoint
// sub-designs that are orthogonal designs in their own right.
//
// The graph is purely syntactic, so these operations accept any well-formed
// design; the stacked fixtures used to exercise decomposition are not
// themselves balanced.

#include <vector>

#include "cod/design.hpp"

namespace cod {

struct VarGraph {
    int k = 0;
    std::vector<std::vector<char>> adj;  // (k+1) x (k+1), 1-based, symmetric

    bool edge(int s, int t) const { return adj[static_cast<size_t>(s)][static_cast<size_t>(t)] != 0; }
};

inline VarGraph adjacency_graph(const Design& d) {
    validate_design(d);
    VarGraph g;
    g.k = d.k;
    g.adj.assign(static_cast<size_t>(d.k) + 1, std::vector<char>(static_cast<size_t>(d.k) + 1, 0));
    for (int r = 0; r < d.p; ++r) {
        std::vector<int> vars;
        for (int c = 0; c < d.n; ++c)
            if (!d.at(r, c).is_zero()) vars.push_back(d.at(r, c).var);
        for (size_t i = 0; i < vars.size(); ++i)
            for (size_t j = i + 1; j < vars.size(); ++j)
                if (vars[i] != vars[j]) {
                    g.adj[static_cast<size_t>(vars[i])][static_cast<size_t>(vars[j])] = 1;
                    g.adj[static_cast<size_t>(vars[j])][static_cast<size_t>(vars[i])] = 1;
                }
    }
    return g;
}

struct Component {
    std::vector<int> vars;  // ascending, 1-based
    std::vector<int> rows;  // ascending, 0-based
};

inline std::vector<Component> atomic_components(const Design& d) {
    VarGraph g = adjacency_graph(d);
    std::vector<int> comp_of(static_cast<size_t>(d.k) + 1, -1);
    int ncomp = 0;
    for (int s = 1; s <= d.k; ++s) {
        if (comp_of[static_cast<size_t>(s)] != -1) continue;
        std::vector<int> queue{s};
        comp_of[static_cast<size_t>(s)] = ncomp;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            for (int t = 1; t <= d.k; ++t)
                if (g.edge(v, t) && comp_of[static_cast<size_t>(t)] == -1) {
                    comp_of[static_cast<size_t>(t)] = ncomp;
                    queue.push_back(t);
                }
        }
        ++ncomp;
    }

    std::vector<Component> comps(static_cast<size_t>(ncomp));
    for (int j = 1; j <= d.k; ++j) comps[static_cast<size_t>(comp_of[static_cast<size_t>(j)])].vars.push_back(j);
    for (int r = 0; r < d.p; ++r) {
        int c_id = -1;
        for (int c = 0; c < d.n; ++c)
            if (!d.at(r, c).is_zero()) {
                c_id = comp_of[static_cast<size_t>(d.at(r, c).var)];
                break;
            }
        if (c_id != -1) comps[static_cast<size_t>(c_id)].rows.push_back(r);
    }
    return comps;
}

inline bool is_atomic(const Design& d) { return atomic_components(d).size() == 1; }

// The sub-design induced by a component: its rows, the columns that are
// nonzero within them, and variables renumbered densely by ascending index.
inline Design component_subdesign(const Design& d, const Component& comp) {
    std::vector<int> cols;
    for (int c = 0; c < d.n; ++c) {
        bool nonzero = false;
        for (int r : comp.rows)
            if (!d.at(r, c).is_zero()) {
                nonzero = true;
                break;
            }
        if (nonzero) cols.push_back(c);
    }
    std::vector<int> rename(static_cast<size_t>(d.k) + 1, 0);
    for (size_t i = 0; i < comp.vars.size(); ++i) rename[static_cast<size_t>(comp.vars[i])] = static_cast<int>(i) + 1;

    Design sub = make_design(static_cast<int>(comp.rows.size()), static_cast<int>(cols.size()),
                             static_cast<int>(comp.vars.size()));
    for (size_t r = 0; r < comp.rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) {
            Entry e = d.at(comp.rows[r], cols[c]);
            if (!e.is_zero()) e.var = rename[static_cast<size_t>(e.var)];
            sub.at(static_cast<int>(r), static_cast<int>(c)) = e;
        }
    return sub;
}

}  // namespace cod
