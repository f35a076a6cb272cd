#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace linforest {

// Degree sequence kept sorted non-increasing.
struct DegreeSequence {
    std::vector<int> values;

    static DegreeSequence of(std::vector<int> v) {
        for (int d : v)
            if (d < 0) throw std::invalid_argument("degree sequence: negative entry");
        std::sort(v.begin(), v.end(), std::greater<int>());
        return DegreeSequence{std::move(v)};
    }

    long long sum() const { return std::accumulate(values.begin(), values.end(), 0LL); }
    bool even_sum() const { return sum() % 2 == 0; }
};

// Simple-graph realizability: even sum and the usual k-prefix inequalities.
inline bool erdos_gallai_feasible(const std::vector<int>& degrees) {
    for (int d : degrees)
        if (d < 0) return false;
    std::vector<int> d = degrees;
    std::sort(d.begin(), d.end(), std::greater<int>());
    int n = static_cast<int>(d.size());
    long long sum = std::accumulate(d.begin(), d.end(), 0LL);
    if (sum % 2 != 0) return false;
    long long prefix = 0;
    for (int k = 1; k <= n; ++k) {
        prefix += d[k - 1];
        long long rhs = static_cast<long long>(k) * (k - 1);
        for (int i = k; i < n; ++i) rhs += std::min(d[i], k);
        if (prefix > rhs) return false;
    }
    return true;
}

// Loopless multigraph with exact degrees: realizable iff the sum is even and
// no degree exceeds the sum of the others.  Repeatedly joins the two largest
// residuals, which preserves both conditions.
inline MultiGraph hakimi_multigraph(const std::vector<int>& degrees) {
    int n = static_cast<int>(degrees.size());
    long long sum = 0;
    int vmax = 0;
    for (int v = 0; v < n; ++v) {
        if (degrees[v] < 0) throw std::invalid_argument("multigraph degrees: negative entry");
        sum += degrees[v];
        if (degrees[v] > degrees[vmax]) vmax = v;
    }
    if (sum % 2 != 0) throw std::invalid_argument("multigraph degrees: odd degree sum");
    if (n > 0 && 2LL * degrees[vmax] > sum)
        throw std::invalid_argument("multigraph degrees: degree " + std::to_string(degrees[vmax]) +
                                    " at vertex " + std::to_string(vmax) + " exceeds the sum of the others");
    MultiGraph h(n);
    std::vector<int> res = degrees;
    auto top_two = [&](int& a, int& b) {
        a = b = -1;
        for (int v = 0; v < n; ++v) {
            if (res[v] == 0) continue;
            if (a == -1 || res[v] > res[a]) {
                b = a;
                a = v;
            } else if (b == -1 || res[v] > res[b]) {
                b = v;
            }
        }
    };
    for (;;) {
        int a, b;
        top_two(a, b);
        if (a == -1) break;
        if (b == -1) throw std::logic_error("multigraph degrees: pairing left a lone residual");
        h.add_edge(a, b);
        --res[a];
        --res[b];
    }
    return h;
}

namespace detail {

// Simple graph with exact target degrees via largest-first exhaustion: the
// current maximum-residual vertex is wired to its res many largest-residual
// partners and never touched again.  Edges always leave the current head and
// earlier heads are exhausted, so no duplicate edge can arise.
inline SimpleGraph havel_hakimi_simple(const std::vector<int>& target) {
    int n = static_cast<int>(target.size());
    long long sum = 0;
    for (int v = 0; v < n; ++v) {
        if (target[v] < 0) throw std::invalid_argument("simple degrees: negative entry");
        if (target[v] > n - 1) throw std::invalid_argument("simple degrees: degree exceeds order minus one");
        sum += target[v];
    }
    if (sum % 2 != 0) throw std::invalid_argument("simple degrees: odd degree sum");
    SimpleGraph g(n);
    std::vector<int> res = target;
    std::vector<int> order(n);
    for (;;) {
        int u = -1;
        for (int v = 0; v < n; ++v)
            if (res[v] > 0 && (u == -1 || res[v] > res[u])) u = v;
        if (u == -1) break;
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return res[a] > res[b]; });
        int need = res[u];
        res[u] = 0;
        for (int w : order) {
            if (need == 0) break;
            if (w == u || res[w] == 0) continue;
            g.add_edge(u, w);
            --res[w];
            --need;
        }
        if (need > 0) throw std::invalid_argument("simple degrees: not realizable as a simple graph");
    }
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != target[v]) throw std::logic_error("simple degrees: realization degree mismatch");
    return g;
}

// Two-valued sequence: t vertices of degree d, the rest of degree d - 1.
inline SimpleGraph two_valued_simple(int n, int d, int t) {
    if (t < 0 || t > n) throw std::invalid_argument("two-valued degrees: bad split");
    std::vector<int> target(n, d - 1);
    std::fill(target.begin(), target.begin() + t, d);
    return havel_hakimi_simple(target);
}

}  // namespace detail

// Simple graph on n vertices where vertices 0..t-1 have degree d and the rest
// degree d - 1.  Requires n >= d + 1 >= 3 and an even degree sum, which is
// exactly the regime where the greedy realization always succeeds.
inline SimpleGraph near_regular_simple(int n, int d, int t) {
    if (d + 1 < 3) throw std::invalid_argument("near-regular: degree must be at least 2");
    if (n < d + 1) throw std::invalid_argument("near-regular: order too small for the degree");
    if (t < 1 || t > n) throw std::invalid_argument("near-regular: vertex split out of range");
    long long sum = static_cast<long long>(t) * d + static_cast<long long>(n - t) * (d - 1);
    if (sum % 2 != 0) throw std::invalid_argument("near-regular: odd degree sum");
    return detail::two_valued_simple(n, d, t);
}

// A d-regular simple host built around a given graph: the base keeps its
// edges, a class X of new vertices absorbs every missing degree unit through
// cross edges, and X is wired internally so its own degrees also reach d.
struct SupergraphEmbedding {
    SimpleGraph host;             // regular supergraph, base vertices first
    int base_n = 0;               // host vertices 0..base_n-1 are the input graph
    std::vector<int> x_set;       // ids of the added class X
    std::vector<Edge> def_edges;  // cross edges (base vertex, X vertex) in placement order
    SimpleGraph r_graph;          // internal graph on X, vertex i is x_set[i]
};

inline SupergraphEmbedding case1_supergraph(const SimpleGraph& gstar, int delta_star) {
    int n = gstar.size();
    if (delta_star % 2 != 0) throw std::invalid_argument("supergraph: target degree must be even");
    if (delta_star < max_degree(gstar))
        throw std::invalid_argument("supergraph: target degree below the maximum degree");
    std::vector<int> def(n);
    long long total = 0;
    for (int v = 0; v < n; ++v) {
        def[v] = delta_star - gstar.degree(v);
        total += def[v];
    }
    if (total < delta_star + 5)
        throw std::invalid_argument("supergraph: total deficiency " + std::to_string(total) +
                                    " below target degree plus five");

    // Smallest class size of the same parity as n that leaves X realizable:
    // k + floor(total/k) >= delta_star + 4.
    int k = (delta_star + 5) / 2;
    for (;; ++k) {
        if (k % 2 != n % 2) continue;
        if (k + total / k >= delta_star + 4) break;
    }

    long long q = total / k, rem = total % k;
    std::vector<long long> quota(k, q);
    for (int i = 0; i < rem; ++i) quota[i] = q + 1;

    std::vector<int> r_target(k);
    for (int i = 0; i < k; ++i) {
        long long t = delta_star - quota[i];
        if (t < 0) throw std::invalid_argument("supergraph: quota exceeds the target degree");
        r_target[i] = static_cast<int>(t);
    }
    SimpleGraph r = detail::havel_hakimi_simple(r_target);

    SupergraphEmbedding emb;
    emb.base_n = n;
    emb.r_graph = r;
    emb.host = gstar;
    for (int i = 0; i < k; ++i) emb.x_set.push_back(emb.host.add_vertex());
    for (const auto& e : r.edges()) emb.host.add_edge(emb.x_set[e.first], emb.x_set[e.second]);

    // Deficient vertices in index order; each takes its def(v) cross edges to
    // distinct X vertices with the largest remaining quota, ties to the
    // smallest index.  Largest-first keeps the quotas within one of each
    // other, so the placement never strands unmet quota.
    for (int v = 0; v < n; ++v) {
        if (def[v] == 0) continue;
        if (def[v] > k)
            throw std::runtime_error("supergraph: deficiency " + std::to_string(def[v]) + " at vertex " +
                                     std::to_string(v) + " exceeds the class size " + std::to_string(k));
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return quota[a] > quota[b]; });
        for (int j = 0; j < def[v]; ++j) {
            int i = idx[j];
            if (quota[i] == 0)
                throw std::runtime_error("supergraph: quota exhausted while placing vertex " + std::to_string(v));
            --quota[i];
            emb.host.add_edge(v, emb.x_set[i]);
            emb.def_edges.push_back({v, emb.x_set[i]});
        }
    }
    for (int i = 0; i < k; ++i)
        if (quota[i] != 0) throw std::logic_error("supergraph: unplaced quota at class index " + std::to_string(i));

    if (k >= 7 && min_degree(r) < k - 6)
        throw std::runtime_error("supergraph: internal class degree below size minus six");
    for (int v = 0; v < emb.host.size(); ++v)
        if (emb.host.degree(v) != delta_star)
            throw std::runtime_error("supergraph: vertex " + std::to_string(v) + " has degree " +
                                     std::to_string(emb.host.degree(v)) + " in the host");
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    if (!(emb.host.induced(base) == gstar)) throw std::logic_error("supergraph: base subgraph changed");
    return emb;
}

}  // namespace linforest
