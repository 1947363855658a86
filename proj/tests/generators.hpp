#pragma once

// Random inputs shared by tests, acceptance checks and benchmarks.

#include "tropk4/bitangents.hpp"
#include "tropk4/metricgraph.hpp"
#include "tropk4/tropcurve.hpp"

#include <random>

namespace gen {

using namespace tropk4;

// Heights of the example quartic: 0 on T, then 1, 2, 5 by distance.
inline std::map<Lattice, Rat> base_heights() { return example_quartic().vals; }

// Perturbs the non-T heights of the base by multiples of 1/16 in
// [-max/16, max/16] until the result is a generic honeycomb in K4 form.
inline QuarticInput random_generic_honeycomb(std::mt19937_64& rng, int max = 3) {
    std::uniform_int_distribution<int> d(-max, max);
    for (;;) {
        auto h = base_heights();
        for (auto& [ij, v] : h) {
            if (sgn(v) == 0) continue;
            v += make_rat(d(rng), 16);
        }
        auto q = QuarticInput::from_valuations(h);
        if (!honeycomb_check(q)) continue;
        if (!is_k4_form(q).value) continue;
        if (!is_generic_honeycomb(q).generic) continue;
        return q;
    }
}

// Shrinks the region dual to (2,0) by raising a_20 while the subdivision stays the same.
inline QuarticInput shrink_r20(const QuarticInput& q) {
    auto h = q.vals;
    auto base = newton_subdivision(q);
    for (int k = 8; k >= 1; --k) {
        auto t = h;
        t[{2, 0}] += make_rat(1, 4 * k);
        auto s = newton_subdivision(t);
        bool same = s.cells.size() == base.cells.size();
        for (std::size_t i = 0; same && i < s.cells.size(); ++i) same = s.cells[i].vertices == base.cells[i].vertices;
        if (same) return QuarticInput::from_valuations(t);
    }
    return q;
}

inline MetricGraph random_k4(std::mt19937_64& rng, int maxlen = 12, int den = 2) {
    std::uniform_int_distribution<int> len(1, maxlen);
    std::array<Rat, 6> l;
    for (auto& x : l) x = make_rat(len(rng), den);
    return make_k4(l[0], l[1], l[2], l[3], l[4], l[5]);
}

// Random connected graph: a random tree on 1..4 vertices plus extra edges
// (loops and multi-edges allowed), lengths in (1/den)Z.
inline MetricGraph random_graph(std::mt19937& rng, int max_edges, int den) {
    std::uniform_int_distribution<int> nv(1, 4), len(1, 4 * den);
    MetricGraph g;
    int n = nv(rng);
    for (int k = 0; k < n; ++k) g.add_vertex("V" + std::to_string(k + 1));
    for (int k = 1; k < n; ++k) {
        std::uniform_int_distribution<int> pick(0, k - 1);
        g.add_edge(pick(rng), k, make_rat(len(rng), den));
    }
    std::uniform_int_distribution<int> extra(0, std::max(0, max_edges - (n - 1)));
    std::uniform_int_distribution<int> any(0, n - 1);
    for (int k = extra(rng); k > 0; --k) g.add_edge(any(rng), any(rng), make_rat(len(rng), den));
    return g;
}

inline GraphPoint random_point(std::mt19937& rng, const MetricGraph& g, int den) {
    std::uniform_int_distribution<int> e(0, g.num_edges() - 1);
    int ed = e(rng);
    Rat len = g.edge(ed).len;
    int steps = static_cast<int>(Rat(len * den).get_num().get_si());
    std::uniform_int_distribution<int> s(0, steps);
    Rat off(s(rng), den);
    off.canonicalize();
    return point_on_edge(g, ed, off);
}

}  // namespace gen
