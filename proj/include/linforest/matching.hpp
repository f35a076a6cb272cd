#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

namespace linforest {

struct Matching {
    std::vector<Edge> edges;

    std::vector<int> covered(int n) const {
        std::vector<bool> c(n, false);
        for (const auto& e : edges) c[e.first] = c[e.second] = true;
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
            if (c[v]) out.push_back(v);
        return out;
    }

    bool covers(int v) const {
        for (const auto& e : edges)
            if (e.first == v || e.second == v) return true;
        return false;
    }
};

inline bool is_matching(int n, const std::vector<Edge>& edges) {
    std::vector<int> deg(n, 0);
    for (const auto& e : edges) {
        if (e.first == e.second || e.first < 0 || e.second < 0 || e.first >= n || e.second >= n) return false;
        if (++deg[e.first] > 1 || ++deg[e.second] > 1) return false;
    }
    return true;
}

// Edmonds blossom algorithm, O(V^3); greedy seed matching first.
inline Matching max_matching(const SimpleGraph& g) {
    int n = g.size();
    std::vector<int> match(n, -1), p(n, -1), base(n);
    std::vector<bool> used(n, false), blossom(n, false);

    for (int v = 0; v < n; ++v)
        if (match[v] == -1)
            for (int w : g.neighbors(v))
                if (match[w] == -1) {
                    match[v] = w;
                    match[w] = v;
                    break;
                }

    auto lca = [&](int a, int b) {
        std::vector<bool> seen(n, false);
        for (;;) {
            a = base[a];
            seen[a] = true;
            if (match[a] == -1) break;
            a = p[match[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b]) return b;
            b = p[match[b]];
        }
    };
    auto mark_path = [&](int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = true;
            blossom[base[match[v]]] = true;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    };
    std::queue<int> q;
    auto find_path = [&](int root) -> int {
        std::fill(used.begin(), used.end(), false);
        std::fill(p.begin(), p.end(), -1);
        std::iota(base.begin(), base.end(), 0);
        while (!q.empty()) q.pop();
        used[root] = true;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : g.neighbors(v)) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] != -1 && p[match[to]] != -1)) {
                    int curbase = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), false);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 0; i < n; ++i)
                        if (blossom[base[i]]) {
                            base[i] = curbase;
                            if (!used[i]) {
                                used[i] = true;
                                q.push(i);
                            }
                        }
                } else if (p[to] == -1) {
                    p[to] = v;
                    if (match[to] == -1) return to;
                    used[match[to]] = true;
                    q.push(match[to]);
                }
            }
        }
        return -1;
    };

    for (int v = 0; v < n; ++v) {
        if (match[v] != -1) continue;
        int u = find_path(v);
        while (u != -1) {
            int pv = p[u], ppv = match[pv];
            match[u] = pv;
            match[pv] = u;
            u = ppv;
        }
    }
    Matching m;
    for (int v = 0; v < n; ++v)
        if (match[v] > v) m.edges.push_back({v, match[v]});
    return m;
}

inline int matching_number(const SimpleGraph& g) {
    return static_cast<int>(max_matching(g).edges.size());
}

// Berge deficiency via maximum matching: df(G) = n - 2 * matching number.
inline int deficiency_value(const SimpleGraph& g) {
    return g.size() - 2 * matching_number(g);
}

inline bool has_perfect_matching(const SimpleGraph& g) {
    return g.size() % 2 == 0 && matching_number(g) * 2 == g.size();
}

// G - v has a perfect matching for every v.
inline bool is_factor_critical(const SimpleGraph& g) {
    if (g.size() % 2 == 0) return false;
    for (int v = 0; v < g.size(); ++v)
        if (!has_perfect_matching(g.without_vertex(v))) return false;
    return true;
}

struct DeficiencyCertificate {
    int df = 0;
    std::vector<int> x;                         // inclusion-maximal optimizer of o(G-X)-|X|
    std::vector<std::vector<int>> components;   // components of G-X (all odd, factor-critical)
};

namespace detail {

// Odd components of G-X for X given as a bitmask, via bitmask flood fill.
inline int odd_components(const std::vector<uint32_t>& rows, int n, uint32_t x_mask,
                          std::vector<uint32_t>* comps = nullptr) {
    uint32_t rest = ((n == 32 ? 0xffffffffu : ((1u << n) - 1u))) & ~x_mask;
    int odd = 0;
    while (rest) {
        uint32_t comp = rest & (~rest + 1);  // lowest remaining vertex
        for (;;) {
            uint32_t grown = comp;
            uint32_t m = comp;
            while (m) {
                int v = std::countr_zero(m);
                m &= m - 1;
                grown |= rows[v] & rest;
            }
            if (grown == comp) break;
            comp = grown;
        }
        if (std::popcount(comp) % 2 == 1) ++odd;
        if (comps) comps->push_back(comp);
        rest &= ~comp;
    }
    return odd;
}

}  // namespace detail

// Exhaustive Berge-Tutte certificate: df = max over X of o(G-X) - |X|, the
// reported X is the deterministic maximum-cardinality optimizer (smallest
// bitmask among ties).  Maximum cardinality is what the structure lemma
// needs: merely refusing single-vertex extensions is not enough, because an
// optimizer can be extendable only by several vertices at once, and such an
// X may leave even or non-factor-critical components behind.  A largest
// optimizer leaves neither (an even component would accept any of its
// vertices, an odd non-critical one a deletion witness plus an optimizer of
// the rest, both growing X), so the checks below cannot fire.
inline DeficiencyCertificate deficiency_certificate(const SimpleGraph& g, int cap = 16) {
    int n = g.size();
    if (n > cap) throw std::invalid_argument("deficiency certificate: order exceeds cap " + std::to_string(cap));
    if (n > 30) throw std::invalid_argument("deficiency certificate: order exceeds 30");
    std::vector<uint32_t> rows(n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : g.neighbors(v)) rows[v] |= 1u << w;
    uint32_t full = (n == 0) ? 0 : ((n == 32 ? 0xffffffffu : (1u << n) - 1u));
    std::vector<int> value(static_cast<size_t>(full) + 1);
    int df = -n - 1;
    for (uint32_t x = 0; x <= full; ++x) {
        int val = detail::odd_components(rows, n, x) - std::popcount(x);
        value[x] = val;
        df = std::max(df, val);
        if (x == full) break;
    }
    DeficiencyCertificate cert;
    cert.df = df;
    uint32_t chosen = 0;
    int best_size = -1;
    for (uint32_t x = 0;; ++x) {
        if (value[x] == df && std::popcount(x) > best_size) {
            best_size = std::popcount(x);
            chosen = x;
        }
        if (x == full) break;
    }
    if (best_size < 0) throw std::logic_error("deficiency certificate: no optimizer");
    std::vector<uint32_t> comps;
    detail::odd_components(rows, n, chosen, &comps);
    for (int v = 0; v < n; ++v)
        if (chosen & (1u << v)) cert.x.push_back(v);
    for (uint32_t cm : comps) {
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (cm & (1u << v)) verts.push_back(v);
        if (verts.size() % 2 == 0)
            throw std::logic_error("deficiency certificate: even component under maximal X");
        if (!is_factor_critical(g.induced(verts)))
            throw std::logic_error("deficiency certificate: component not factor-critical");
        cert.components.push_back(std::move(verts));
    }
    return cert;
}

struct AuxiliaryBipartite {
    MultiGraph b;                              // vertices [0, x_count): X, rest: contracted components
    int x_count = 0;
    std::vector<int> x_vertices;               // b-id i (i < x_count) -> host vertex
    std::vector<std::vector<int>> components;  // b-id x_count + j -> host component
};

// B(X): delete edges inside X, contract every component of G-X to a single
// vertex, keep cross edges with multiplicity e_G({x}, V(D)).
inline AuxiliaryBipartite auxiliary_bipartite(const SimpleGraph& g, const std::vector<int>& x) {
    int n = g.size();
    std::vector<int> where(n, -1);  // >=0: X index; -1: unassigned
    AuxiliaryBipartite aux;
    aux.x_vertices = x;
    std::sort(aux.x_vertices.begin(), aux.x_vertices.end());
    for (size_t i = 0; i < aux.x_vertices.size(); ++i) {
        g.check_vertex(aux.x_vertices[i]);
        if (i > 0 && aux.x_vertices[i] == aux.x_vertices[i - 1])
            throw std::invalid_argument("auxiliary bipartite: repeated X vertex");
        where[aux.x_vertices[i]] = static_cast<int>(i);
    }
    aux.x_count = static_cast<int>(aux.x_vertices.size());
    std::vector<int> comp_of(n, -1);
    for (int s = 0; s < n; ++s) {
        if (where[s] != -1 || comp_of[s] != -1) continue;
        std::vector<int> comp, stack{s};
        comp_of[s] = static_cast<int>(aux.components.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (where[w] == -1 && comp_of[w] == -1) {
                    comp_of[w] = comp_of[s];
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        aux.components.push_back(std::move(comp));
    }
    aux.b = MultiGraph(aux.x_count + static_cast<int>(aux.components.size()));
    for (int i = 0; i < aux.x_count; ++i)
        for (int w : g.neighbors(aux.x_vertices[i]))
            if (where[w] == -1) aux.b.add_edge(i, aux.x_count + comp_of[w]);
    return aux;
}

// Lemma "matching covering X and all heavy component-vertices": given the
// bipartite multigraph B with sides X = [0, x_count) and Y, returns a matching
// covering X plus every y with d_B(y) >= d, d = max degree over X.
// Follows the proof: an X-covering matching M1, a matching M2 saturating the
// heavy set Y_d (Hall holds for it unconditionally), then per component of
// M1 xor M2 keep whichever side saturates that component's required vertices.
inline Matching matching_covering_x_and_heavy(const MultiGraph& b, int x_count) {
    int n = b.size();
    if (x_count < 0 || x_count > n) throw std::invalid_argument("covering matching: bad x_count");
    for (const auto& e : b.edges())
        if ((e.first < x_count) == (e.second < x_count))
            throw std::invalid_argument("covering matching: graph is not bipartite on the given sides");
    Matching empty;
    if (x_count == 0) return empty;

    SimpleGraph simple = b.underlying_simple();
    Matching m1 = max_matching(simple);
    if (static_cast<int>(m1.edges.size()) < x_count)
        throw std::runtime_error("covering matching: no matching covering X (deficiency " +
                                 std::to_string(x_count - static_cast<int>(m1.edges.size())) + ")");

    int d = 0;
    for (int i = 0; i < x_count; ++i) d = std::max(d, b.degree(i));
    std::vector<bool> heavy(n, false);
    std::vector<int> required;  // X plus heavy Y
    for (int i = 0; i < x_count; ++i) required.push_back(i);
    for (int y = x_count; y < n; ++y)
        if (b.degree(y) >= d) {
            heavy[y] = true;
            required.push_back(y);
        }

    // restrict to B[X, Y_d] and saturate Y_d
    SimpleGraph restr(n);
    for (const auto& e : b.edges()) {
        int y = std::max(e.first, e.second);
        if (heavy[y] && !restr.has_edge(e.first, e.second)) restr.add_edge(e.first, e.second);
    }
    Matching m2 = max_matching(restr);
    {
        std::vector<bool> cov(n, false);
        for (const auto& e : m2.edges) cov[e.first] = cov[e.second] = true;
        for (int y = x_count; y < n; ++y)
            if (heavy[y] && !cov[y]) throw std::logic_error("covering matching: Hall violated on heavy set");
    }

    // symmetric difference components
    std::vector<Edge> shared, diff;
    {
        auto a = m1.edges, c = m2.edges;
        std::sort(a.begin(), a.end());
        std::sort(c.begin(), c.end());
        std::set_intersection(a.begin(), a.end(), c.begin(), c.end(), std::back_inserter(shared));
        std::set_symmetric_difference(a.begin(), a.end(), c.begin(), c.end(), std::back_inserter(diff));
    }
    Dsu dsu(n);
    for (const auto& e : diff) dsu.unite(e.first, e.second);
    std::vector<bool> in_m1(diff.size(), false);
    {
        auto a = m1.edges;
        std::sort(a.begin(), a.end());
        for (size_t i = 0; i < diff.size(); ++i)
            in_m1[i] = std::binary_search(a.begin(), a.end(), diff[i]);
    }
    std::vector<bool> is_required(n, false);
    for (int v : required) is_required[v] = true;

    Matching result;
    result.edges = shared;
    std::vector<int> roots;
    for (const auto& e : diff) roots.push_back(dsu.find(e.first));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (int root : roots) {
        for (int side = 0; side < 2; ++side) {
            std::vector<Edge> pick;
            std::vector<bool> cov(n, false);
            std::vector<int> comp_verts;
            for (size_t i = 0; i < diff.size(); ++i)
                if (dsu.find(diff[i].first) == root) {
                    comp_verts.push_back(diff[i].first);
                    comp_verts.push_back(diff[i].second);
                    if (in_m1[i] == (side == 0)) {
                        pick.push_back(diff[i]);
                        cov[diff[i].first] = cov[diff[i].second] = true;
                    }
                }
            bool ok = true;
            for (int v : comp_verts)
                if (is_required[v] && !cov[v]) ok = false;
            if (ok) {
                result.edges.insert(result.edges.end(), pick.begin(), pick.end());
                break;
            }
            if (side == 1) throw std::logic_error("covering matching: no component side saturates required set");
        }
    }

    // final verification
    std::vector<bool> cov(n, false);
    for (const auto& e : result.edges) {
        if (cov[e.first] || cov[e.second]) throw std::logic_error("covering matching: not a matching");
        cov[e.first] = cov[e.second] = true;
    }
    for (int v : required)
        if (!cov[v]) throw std::logic_error("covering matching: required vertex uncovered");
    return result;
}

// Almost-regular complement matching: G has one vertex of degree r+1 (the
// apex candidate x) and the rest of degree r; the complement of G minus x has
// a matching covering at least n - floor(n/(n-r)) - 3 vertices.
inline Matching complement_matching_almost_regular(const SimpleGraph& g, int* special_out = nullptr) {
    int n = g.size();
    if (n < 2) throw std::invalid_argument("almost regular: too small");
    int r = min_degree(g);
    int special = -1;
    for (int v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d == r) continue;
        if (d == r + 1 && special == -1) {
            special = v;
            continue;
        }
        throw std::invalid_argument("almost regular: degrees are not (r+1, r, ..., r)");
    }
    if (special == -1) throw std::invalid_argument("almost regular: no degree-(r+1) vertex");
    if (r > n - 2) throw std::invalid_argument("almost regular: r exceeds n-2");
    if (special_out) *special_out = special;

    SimpleGraph comp = g.complement();
    // forbid the special vertex by stripping its complement edges
    std::vector<int> nbrs = comp.neighbors(special);
    for (int w : nbrs) comp.remove_edge(special, w);
    Matching m = max_matching(comp);
    long long covered = 2 * static_cast<long long>(m.edges.size());
    long long bound = n - n / (n - r) - 3;  // integer floor matches ceil(n - n/(n-r) - 3)
    if (covered < bound)
        throw std::logic_error("almost regular: complement matching below guaranteed bound");
    return m;
}

}  // namespace linforest
