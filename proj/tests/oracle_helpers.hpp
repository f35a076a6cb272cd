// Independent reference implementations used to cross-check the library.
//
// Everything here is deliberately written with different algorithms and data
// layouts than the production code: subset DP instead of blossom contraction,
// leaf stripping instead of union-find, literal subset enumeration instead of
// incremental counting.  Agreement between the two sides is the evidence the
// tests are after, so nothing in this header may call back into the library
// beyond the basic graph container.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "linforest/generators.hpp"
#include "linforest/graph.hpp"
#include "linforest/rational.hpp"
#include "linforest/rng.hpp"

namespace oracle {

using linforest::Edge;
using linforest::SimpleGraph;

// ---------------------------------------------------------------------------
// Adjacency bitmasks (the common currency of the brute-force routines).
// ---------------------------------------------------------------------------

inline std::vector<std::uint32_t> adjacency_masks(const SimpleGraph& g) {
    if (g.size() > 31) throw std::invalid_argument("oracle: graph too large for bitmask work");
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(g.size()), 0);
    for (int v = 0; v < g.size(); ++v)
        for (int w : g.neighbors(v)) rows[static_cast<std::size_t>(v)] |= (1u << w);
    return rows;
}

// ---------------------------------------------------------------------------
// Matchings by subset dynamic programming.
// ---------------------------------------------------------------------------

// Maximum matching size restricted to the vertices in `allowed`.
inline int brute_max_matching_masked(const std::vector<std::uint32_t>& rows, int n,
                                     std::uint32_t allowed) {
    if (n > 22) throw std::invalid_argument("oracle: too many vertices for matching DP");
    std::vector<signed char> memo(static_cast<std::size_t>(1) << n, -1);
    auto rec = [&](auto&& self, std::uint32_t free) -> int {
        if (free == 0) return 0;
        signed char& slot = memo[free];
        if (slot >= 0) return slot;
        const int v = std::countr_zero(free);
        int best = self(self, free & ~(1u << v));  // leave v unmatched
        std::uint32_t partners = rows[static_cast<std::size_t>(v)] & free;
        while (partners) {
            const int w = std::countr_zero(partners);
            partners &= partners - 1;
            best = std::max(best, 1 + self(self, free & ~(1u << v) & ~(1u << w)));
        }
        slot = static_cast<signed char>(best);
        return best;
    };
    return rec(rec, allowed & ((n == 31) ? 0x7fffffffu : ((1u << n) - 1u)));
}

inline int brute_max_matching(const SimpleGraph& g) {
    const int n = g.size();
    return brute_max_matching_masked(adjacency_masks(g), n, (n >= 31) ? 0 : ((1u << n) - 1u));
}

inline bool brute_has_perfect_matching(const SimpleGraph& g) {
    return g.size() % 2 == 0 && 2 * brute_max_matching(g) == g.size();
}

// Factor-critical: deleting any single vertex leaves a perfectly matchable graph.
inline bool brute_factor_critical(const SimpleGraph& g) {
    const int n = g.size();
    if (n % 2 == 0) return false;
    if (n == 1) return true;
    auto rows = adjacency_masks(g);
    const std::uint32_t full = (1u << n) - 1u;
    for (int v = 0; v < n; ++v)
        if (2 * brute_max_matching_masked(rows, n, full & ~(1u << v)) != n - 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Odd components and deficiency by literal enumeration of vertex subsets.
// ---------------------------------------------------------------------------

// Number of odd-order components of the graph induced on V minus `removed`.
inline int brute_odd_components(const std::vector<std::uint32_t>& rows, int n,
                                std::uint32_t removed) {
    std::uint32_t todo = ((n >= 31) ? 0x7fffffffu : ((1u << n) - 1u)) & ~removed;
    int odd = 0;
    while (todo) {
        const int seed = std::countr_zero(todo);
        std::uint32_t comp = 0, stack = (1u << seed);
        while (stack) {
            const int v = std::countr_zero(stack);
            stack &= stack - 1;
            if (comp & (1u << v)) continue;
            comp |= (1u << v);
            stack |= rows[static_cast<std::size_t>(v)] & todo & ~comp;
        }
        if (std::popcount(comp) % 2 == 1) ++odd;
        todo &= ~comp;
    }
    return odd;
}

// Berge-Tutte deficiency: max over all X of odd(G - X) - |X|.
inline int brute_deficiency(const SimpleGraph& g) {
    const int n = g.size();
    if (n > 22) throw std::invalid_argument("oracle: too many vertices for deficiency scan");
    auto rows = adjacency_masks(g);
    int best = 0;
    const std::uint32_t full = (n == 0) ? 0u : ((1u << n) - 1u);
    for (std::uint32_t x = 0;; ++x) {
        best = std::max(best, brute_odd_components(rows, n, x) - std::popcount(x));
        if (x == full) break;
    }
    return best;
}

// Value of one particular separator choice (used when checking maximality).
inline int brute_separator_value(const SimpleGraph& g, std::uint32_t x) {
    auto rows = adjacency_masks(g);
    return brute_odd_components(rows, g.size(), x) - std::popcount(x);
}

// ---------------------------------------------------------------------------
// Bipartite matching (Kuhn augmenting paths) for auxiliary-graph checks.
// ---------------------------------------------------------------------------

// adj[u] lists right-side ids (0..nr-1) adjacent to left vertex u.
inline int kuhn_bipartite(const std::vector<std::vector<int>>& adj, int nr) {
    const int nl = static_cast<int>(adj.size());
    std::vector<int> match_right(static_cast<std::size_t>(nr), -1);
    std::vector<char> seen;
    auto attempt = [&](auto&& self, int u) -> bool {
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            if (match_right[static_cast<std::size_t>(v)] == -1 ||
                self(self, match_right[static_cast<std::size_t>(v)])) {
                match_right[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        return false;
    };
    int matched = 0;
    for (int u = 0; u < nl; ++u) {
        seen.assign(static_cast<std::size_t>(nr), 0);
        if (attempt(attempt, u)) ++matched;
    }
    return matched;
}

// ---------------------------------------------------------------------------
// Robust expansion by literal subset enumeration.
// ---------------------------------------------------------------------------

inline bool naive_robust_expander(const SimpleGraph& g, const linforest::Rational& nu,
                                  const linforest::Rational& tau) {
    const int n = g.size();
    if (n > 20) throw std::invalid_argument("oracle: too many vertices for expansion scan");
    if (n == 0) return true;
    const std::uint32_t full = (1u << n) - 1u;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const long long s = std::popcount(mask);
        if (s * tau.den < tau.num * n) continue;               // |S| >= tau * n
        if (s * tau.den > (tau.den - tau.num) * n) continue;   // |S| <= (1 - tau) * n
        long long rn = 0;
        for (int v = 0; v < n; ++v) {
            long long inside = 0;
            for (int w : g.neighbors(v))
                if (mask & (1u << w)) ++inside;
            if (inside * nu.den >= nu.num * n) ++rn;           // v sees >= nu * n of S
        }
        if (rn * nu.den < s * nu.den + nu.num * n) return false;  // |RN| >= |S| + nu * n
    }
    return true;
}

// ---------------------------------------------------------------------------
// Linear forests and decompositions, checked without union-find.
// ---------------------------------------------------------------------------

inline bool naive_linear_forest(int n, const std::vector<Edge>& edges) {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<std::size_t>> inc(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [u, v] = edges[i];
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
        inc[static_cast<std::size_t>(u)].push_back(i);
        inc[static_cast<std::size_t>(v)].push_back(i);
    }
    std::vector<Edge> sorted(edges);
    for (auto& [u, v] : sorted)
        if (u > v) std::swap(u, v);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (int v = 0; v < n; ++v)
        if (deg[static_cast<std::size_t>(v)] > 2) return false;
    // Leaf stripping: everything peels away iff there is no cycle.
    std::vector<char> gone(edges.size(), 0);
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (deg[static_cast<std::size_t>(v)] == 1) stack.push_back(v);
    std::size_t removed = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (deg[static_cast<std::size_t>(v)] != 1) continue;
        for (std::size_t ei : inc[static_cast<std::size_t>(v)]) {
            if (gone[ei]) continue;
            gone[ei] = 1;
            ++removed;
            const auto [a, b] = edges[ei];
            const int other = (a == v) ? b : a;
            --deg[static_cast<std::size_t>(v)];
            --deg[static_cast<std::size_t>(other)];
            if (deg[static_cast<std::size_t>(other)] == 1) stack.push_back(other);
            break;
        }
    }
    return removed == edges.size();
}

inline bool naive_valid_decomposition(const SimpleGraph& g,
                                      const std::vector<linforest::LinearForest>& forests) {
    std::vector<Edge> seen;
    for (const auto& f : forests) {
        if (!naive_linear_forest(g.size(), f.edges)) return false;
        for (auto [u, v] : f.edges) {
            if (!g.has_edge(u, v)) return false;
            seen.push_back(linforest::make_edge(u, v));
        }
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    return static_cast<long long>(seen.size()) == g.edge_count();
}

// Tiny exact linear-arboricity solver: branch on the forest index of each edge.
inline int brute_la(const SimpleGraph& g, int max_k = 6) {
    const auto edges = g.edges();
    const int m = static_cast<int>(edges.size());
    if (m == 0) return 0;
    for (int k = 1; k <= max_k; ++k) {
        std::vector<std::vector<Edge>> forests(static_cast<std::size_t>(k));
        auto rec = [&](auto&& self, int i, int used) -> bool {
            if (i == m) return true;
            const int limit = std::min(used + 1, k);
            for (int f = 0; f < limit; ++f) {
                forests[static_cast<std::size_t>(f)].push_back(edges[static_cast<std::size_t>(i)]);
                if (naive_linear_forest(g.size(), forests[static_cast<std::size_t>(f)]) &&
                    self(self, i + 1, std::max(used, f + 1)))
                    return true;
                forests[static_cast<std::size_t>(f)].pop_back();
            }
            return false;
        };
        if (rec(rec, 0, 0)) return k;
    }
    return -1;
}

// Hamilton cycle existence by permutation scan (small graphs only).
inline bool brute_hamilton_cycle(const SimpleGraph& g) {
    const int n = g.size();
    if (n > 9) throw std::invalid_argument("oracle: too many vertices for permutation scan");
    if (n < 3) return false;
    std::vector<int> perm(static_cast<std::size_t>(n - 1));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        bool ok = g.has_edge(0, perm.front()) && g.has_edge(perm.back(), 0);
        for (std::size_t i = 0; ok && i + 1 < perm.size(); ++i)
            ok = g.has_edge(perm[i], perm[i + 1]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// ---------------------------------------------------------------------------
// Shared fixture graphs.
// ---------------------------------------------------------------------------

inline SimpleGraph complete_graph(int n) {
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline SimpleGraph path_graph(int n) {
    SimpleGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline SimpleGraph cycle_graph(int n) {
    SimpleGraph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

inline SimpleGraph star_graph(int leaves) {
    SimpleGraph g(leaves + 1);
    for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

inline SimpleGraph petersen() {
    SimpleGraph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer cycle
        g.add_edge(i, i + 5);                // spokes
        g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    }
    return g;
}

inline SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b) {
    SimpleGraph g(a.size() + b.size());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(a.size() + u, a.size() + v);
    return g;
}

// Union of two edge-disjoint random Hamilton cycles: 4-regular and Hamilton
// decomposable by construction.  n >= 5.
inline SimpleGraph two_hamilton_union(int n, std::uint64_t seed) {
    linforest::Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        std::iota(a.begin(), a.end(), 0);
        std::iota(b.begin(), b.end(), 0);
        rng.shuffle(a);
        rng.shuffle(b);
        SimpleGraph g(n);
        bool clash = false;
        for (int i = 0; i < n && !clash; ++i) {
            const int u = a[static_cast<std::size_t>(i)];
            const int v = a[static_cast<std::size_t>((i + 1) % n)];
            if (g.has_edge(u, v))
                clash = true;
            else
                g.add_edge(u, v);
        }
        for (int i = 0; i < n && !clash; ++i) {
            const int u = b[static_cast<std::size_t>(i)];
            const int v = b[static_cast<std::size_t>((i + 1) % n)];
            if (g.has_edge(u, v))
                clash = true;
            else
                g.add_edge(u, v);
        }
        if (!clash) return g;
    }
    throw std::runtime_error("oracle: failed to build a two-cycle union");
}

// Complete graph with a j-regular subgraph removed on a low block A and a
// perfect matching removed on the following block B.  Produces a spread of
// degrees n-1 (top), n-2 (B) and n-1-j (A) that drives the stepwise
// degree-reduction machinery for exactly floor((j-1)/2) rounds when B is
// large enough.
inline SimpleGraph spread_instance(int n, int j, int a_size, int b_size, std::uint64_t seed) {
    if (a_size + b_size > n) throw std::invalid_argument("oracle: blocks exceed the graph");
    if (b_size % 2 != 0) throw std::invalid_argument("oracle: matching block must be even");
    SimpleGraph g = complete_graph(n);
    SimpleGraph inner = linforest::random_regular(a_size, j, seed);
    for (auto [u, v] : inner.edges()) g.remove_edge(u, v);
    for (int i = 0; i < b_size / 2; ++i) g.remove_edge(a_size + 2 * i, a_size + 2 * i + 1);
    return g;
}

// Random r-regular graph with `s` pairwise vertex-disjoint edges removed:
// a near-regular instance whose deficiencies against target r are spread
// across 2s vertices.
inline SimpleGraph deficient_regular(int n, int r, int s, std::uint64_t seed) {
    SimpleGraph g = linforest::random_regular(n, r, seed);
    linforest::Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto edges = g.edges();
    rng.shuffle(edges);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    int removed = 0;
    for (auto [u, v] : edges) {
        if (removed == s) break;
        if (used[static_cast<std::size_t>(u)] || used[static_cast<std::size_t>(v)]) continue;
        g.remove_edge(u, v);
        used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
        ++removed;
    }
    if (removed != s) throw std::runtime_error("oracle: could not remove a disjoint edge set");
    return g;
}

}  // namespace oracle
