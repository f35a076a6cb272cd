#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace linforest {

enum class SearchStatus { Found, None, Unknown };

inline const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::None: return "none";
        default: return "unknown";
    }
}

// Node-count budget.  Searches abort with Unknown when it runs out, so a
// "none" answer is always a completed proof of nonexistence and results stay
// deterministic across machines.  LINFOREST_BUDGET_MS, if set, scales the
// default at a fixed rate of 20000 nodes per millisecond.
struct SearchBudget {
    long long node_limit = 200'000'000;

    static SearchBudget nodes(long long k) { return SearchBudget{k}; }

    static SearchBudget from_env() {
        SearchBudget b;
        if (const char* s = std::getenv("LINFOREST_BUDGET_MS")) {
            char* end = nullptr;
            long long ms = std::strtoll(s, &end, 10);
            if (end && *end == '\0' && ms > 0) b.node_limit = ms * 20000;
        }
        return b;
    }
};

namespace detail {

struct Ticker {
    long long remaining;
    bool out = false;
    bool tick() {
        if (remaining <= 0) {
            out = true;
            return false;
        }
        --remaining;
        return true;
    }
};

}  // namespace detail

struct PathResult {
    SearchStatus status = SearchStatus::None;
    std::vector<int> path;
};

// Exact Hamilton (x,y)-path search: depth-first with two sound prunes, so
// None is a proof.  Unvisited vertices must stay reachable from the frontier,
// and every unvisited vertex except y needs two usable partners.
inline PathResult hamilton_path(const SimpleGraph& g, int x, int y, SearchBudget budget = {}) {
    g.check_vertex(x);
    g.check_vertex(y);
    if (x == y) throw std::invalid_argument("hamilton path: endpoints must differ");
    int n = g.size();
    detail::Ticker t{budget.node_limit};
    std::vector<char> visited(n, 0), seen(n, 0);
    std::vector<int> path{x}, stack;
    visited[x] = 1;

    auto feasible = [&](int cur) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, cur);
        seen[cur] = 1;
        int reached = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v))
                if (!visited[w] && !seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != n - static_cast<int>(path.size())) return false;
        for (int v = 0; v < n; ++v) {
            if (visited[v] || v == y) continue;
            int avail = 0;
            for (int w : g.neighbors(v))
                if (w == cur || !visited[w])
                    if (++avail == 2) break;
            if (avail < 2) return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self, int cur) -> bool {
        if (!t.tick()) return false;
        if (static_cast<int>(path.size()) == n) return cur == y;
        if (!feasible(cur)) return false;
        std::vector<int> cand;
        for (int w : g.neighbors(cur))
            if (!visited[w] && (w != y || static_cast<int>(path.size()) == n - 1)) cand.push_back(w);
        std::vector<int> key(n, 0);
        for (int w : cand) {
            int c = 0;
            for (int z : g.neighbors(w))
                if (!visited[z]) ++c;
            key[w] = c;
        }
        std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return key[a] < key[b]; });
        for (int w : cand) {
            visited[w] = 1;
            path.push_back(w);
            if (self(self, w)) return true;
            path.pop_back();
            visited[w] = 0;
            if (t.out) return false;
        }
        return false;
    };

    PathResult out;
    if (dfs(dfs, x)) {
        out.status = SearchStatus::Found;
        out.path = path;
    } else {
        out.status = t.out ? SearchStatus::Unknown : SearchStatus::None;
    }
    return out;
}

namespace detail {

// Enumerates Hamilton cycles starting at vertex 0 with the second vertex
// smaller than the last (kills direction symmetry).  The callback may mutate
// the graph as long as it restores it before returning false; candidate lists
// are copied per frame, so resumed loops never touch live adjacency storage.
template <class F>
inline bool enumerate_hamilton_cycles(const SimpleGraph& g, Ticker& t, F&& accept) {
    int n = g.size();
    if (n < 3) return false;
    std::vector<char> visited(n, 0), seen(n, 0);
    std::vector<int> path{0}, stack;
    visited[0] = 1;

    auto feasible = [&](int cur) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, cur);
        seen[cur] = 1;
        int reached = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v))
                if (!visited[w] && !seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != n - static_cast<int>(path.size())) return false;
        for (int v = 1; v < n; ++v) {
            if (visited[v]) continue;
            int avail = 0;
            for (int w : g.neighbors(v))
                if (w == cur || w == 0 || !visited[w])
                    if (++avail == 2) break;
            if (avail < 2) return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self, int cur) -> bool {
        if (!t.tick()) return false;
        if (static_cast<int>(path.size()) == n) {
            if (!g.has_edge(cur, 0) || path[1] > path.back()) return false;
            return accept(path);
        }
        if (!feasible(cur)) return false;
        std::vector<int> cand;
        for (int w : g.neighbors(cur))
            if (!visited[w]) cand.push_back(w);
        std::vector<int> key(n, 0);
        for (int w : cand) {
            int c = 0;
            for (int z : g.neighbors(w))
                if (!visited[z]) ++c;
            key[w] = c;
        }
        std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return key[a] < key[b]; });
        for (int w : cand) {
            visited[w] = 1;
            path.push_back(w);
            if (self(self, w)) return true;
            path.pop_back();
            visited[w] = 0;
            if (t.out) return false;
        }
        return false;
    };

    return dfs(dfs, 0);
}

}  // namespace detail

inline PathResult hamilton_cycle(const SimpleGraph& g, SearchBudget budget = {}) {
    PathResult out;
    if (g.size() < 3) return out;
    detail::Ticker t{budget.node_limit};
    bool hit = detail::enumerate_hamilton_cycles(g, t, [&](const std::vector<int>& cyc) {
        out.path = cyc;
        return true;
    });
    out.status = hit ? SearchStatus::Found : (t.out ? SearchStatus::Unknown : SearchStatus::None);
    return out;
}

struct DecompositionResult {
    SearchStatus status = SearchStatus::None;
    std::vector<std::vector<int>> cycles;
};

// Splits a 2k-regular graph into k Hamilton cycles by backtracking over
// edge-disjoint cycles: each level enumerates the Hamilton cycles of the
// residual and recurses on the rest.
inline DecompositionResult hamilton_decomposition(const SimpleGraph& g, SearchBudget budget = {}, int cap = 16) {
    int n = g.size();
    if (n > cap) throw std::invalid_argument("hamilton decomposition: order exceeds the search cap");
    if (!is_regular(g)) throw std::invalid_argument("hamilton decomposition: graph is not regular");
    int r = n == 0 ? 0 : g.degree(0);
    if (r % 2 != 0) throw std::invalid_argument("hamilton decomposition: degree must be even");
    DecompositionResult out;
    if (r == 0) {
        out.status = SearchStatus::Found;
        return out;
    }
    SimpleGraph res = g;
    detail::Ticker t{budget.node_limit};
    std::vector<std::vector<int>> acc;
    int levels = r / 2;

    auto solve = [&](auto&& self, int level) -> bool {
        if (level == levels) return res.edge_count() == 0;
        if (!is_connected(res)) return false;
        return detail::enumerate_hamilton_cycles(res, t, [&](const std::vector<int>& cyc) {
            auto ce = cycle_edges(cyc);
            for (const auto& e : ce) res.remove_edge(e.first, e.second);
            acc.push_back(cyc);
            if (self(self, level + 1)) return true;
            acc.pop_back();
            for (const auto& e : ce) res.add_edge(e.first, e.second);
            return false;
        });
    };

    if (solve(solve, 0)) {
        out.status = SearchStatus::Found;
        out.cycles = acc;
    } else {
        out.status = t.out ? SearchStatus::Unknown : SearchStatus::None;
    }
    return out;
}

struct LinkageResult {
    SearchStatus status = SearchStatus::None;
    std::vector<std::vector<int>> paths;
};

// Vertex-disjoint paths joining the given endpoint pairs and covering every
// vertex of the graph.  Endpoints must be pairwise distinct.
inline LinkageResult k_linkage(const SimpleGraph& g, const std::vector<std::pair<int, int>>& pairs,
                               SearchBudget budget = {}) {
    int n = g.size();
    int k = static_cast<int>(pairs.size());
    std::vector<char> endpoint(n, 0);
    for (const auto& pr : pairs) {
        g.check_vertex(pr.first);
        g.check_vertex(pr.second);
        if (pr.first == pr.second) throw std::invalid_argument("linkage: pair with equal endpoints");
        if (endpoint[pr.first]++ || endpoint[pr.second]++)
            throw std::invalid_argument("linkage: repeated endpoint across pairs");
    }
    LinkageResult out;
    if (k == 0) {
        out.status = n == 0 ? SearchStatus::Found : SearchStatus::None;
        return out;
    }

    detail::Ticker t{budget.node_limit};
    std::vector<char> visited(n, 0), reach(n, 0), access(n, 0);
    for (const auto& pr : pairs) visited[pr.first] = visited[pr.second] = 1;
    int visited_count = 2 * k;
    std::vector<std::vector<int>> paths(k);

    // access points: the frontier, the open target, all future endpoints;
    // internal vertices grow only from these, so every unvisited vertex must
    // be reachable from them and have two usable partners
    auto feasible = [&](int pi, int cur) {
        std::fill(reach.begin(), reach.end(), 0);
        std::fill(access.begin(), access.end(), 0);
        std::vector<int> stack;
        auto push = [&](int v) {
            access[v] = 1;
            if (!reach[v]) {
                reach[v] = 1;
                stack.push_back(v);
            }
        };
        push(cur);
        push(pairs[pi].second);
        for (int j = pi + 1; j < k; ++j) {
            push(pairs[j].first);
            push(pairs[j].second);
        }
        int reached = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v))
                if (!visited[w] && !reach[w]) {
                    reach[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != n - visited_count) return false;
        for (int v = 0; v < n; ++v) {
            if (visited[v]) continue;
            int avail = 0;
            for (int w : g.neighbors(v))
                if (!visited[w] || access[w])
                    if (++avail == 2) break;
            if (avail < 2) return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self, int pi, int cur) -> bool {
        if (!t.tick()) return false;
        if (!feasible(pi, cur)) return false;
        int target = pairs[pi].second;
        if (g.has_edge(cur, target)) {
            paths[pi].push_back(target);
            bool ok;
            if (pi + 1 == k) {
                ok = visited_count == n;
            } else {
                paths[pi + 1].assign(1, pairs[pi + 1].first);
                ok = self(self, pi + 1, pairs[pi + 1].first);
                if (!ok) paths[pi + 1].clear();
            }
            if (ok) return true;
            paths[pi].pop_back();
            if (t.out) return false;
        }
        std::vector<int> cand;
        for (int w : g.neighbors(cur))
            if (!visited[w]) cand.push_back(w);
        std::vector<int> key(n, 0);
        for (int w : cand) {
            int c = 0;
            for (int z : g.neighbors(w))
                if (!visited[z]) ++c;
            key[w] = c;
        }
        std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return key[a] < key[b]; });
        for (int w : cand) {
            visited[w] = 1;
            ++visited_count;
            paths[pi].push_back(w);
            if (self(self, pi, w)) return true;
            paths[pi].pop_back();
            --visited_count;
            visited[w] = 0;
            if (t.out) return false;
        }
        return false;
    };

    paths[0].assign(1, pairs[0].first);
    if (dfs(dfs, 0, pairs[0].first)) {
        out.status = SearchStatus::Found;
        out.paths = paths;
    } else {
        out.status = t.out ? SearchStatus::Unknown : SearchStatus::None;
    }
    return out;
}

// A layout: paths plus isolated vertices, with a sub-multiset of the layout
// edges marked as forced.  Paths may share endpoints (their union may close
// into a cycle); each path on its own must be simple.  Forced edges live
// outside the host graph, and at least one layout edge must be unforced.
struct Layout {
    std::vector<std::vector<int>> paths;
    std::vector<int> isolated;
    std::vector<Edge> forced;
};

inline std::vector<Edge> layout_edges(const Layout& lay) {
    std::vector<Edge> out;
    for (const auto& p : lay.paths)
        for (size_t i = 0; i + 1 < p.size(); ++i) out.push_back(make_edge(p[i], p[i + 1]));
    return out;
}

inline std::vector<int> layout_vertices(const Layout& lay) {
    std::vector<int> out = lay.isolated;
    for (const auto& p : lay.paths) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool validate_layout(const Layout& lay, int n, std::string* why = nullptr) {
    auto fail = [&](const std::string& r) {
        if (why) *why = r;
        return false;
    };
    std::vector<char> on_path(n, 0);
    for (const auto& p : lay.paths) {
        if (p.size() < 2) return fail("path with fewer than two vertices");
        std::vector<char> inp(n, 0);
        for (int v : p) {
            if (v < 0 || v >= n) return fail("path vertex out of range");
            if (inp[v]) return fail("vertex repeated within a path");
            inp[v] = 1;
            on_path[v] = 1;
        }
    }
    std::vector<char> iso(n, 0);
    for (int v : lay.isolated) {
        if (v < 0 || v >= n) return fail("isolated vertex out of range");
        if (iso[v]) return fail("isolated vertex repeated");
        if (on_path[v]) return fail("isolated vertex lies on a path");
        iso[v] = 1;
    }
    auto pool = layout_edges(lay);
    std::sort(pool.begin(), pool.end());
    for (const auto& f : lay.forced) {
        Edge e = make_edge(f.first, f.second);
        auto it = std::lower_bound(pool.begin(), pool.end(), e);
        if (it == pool.end() || *it != e) return fail("forced edge not among the layout edges");
        pool.erase(it);
    }
    if (pool.empty()) return fail("every layout edge is forced");
    return true;
}

// One realized layout: for each layout edge, the path standing in for it.
// Forced edges are carried verbatim; the others are host paths whose interior
// vertices cover everything outside the layout exactly once.
struct SpanningConfiguration {
    std::vector<Edge> layout_edges;
    std::vector<char> forced;
    std::vector<std::vector<int>> realized;
};

inline bool validate_spanning_configuration(const SimpleGraph& g, const Layout& lay,
                                            const SpanningConfiguration& cfg, std::string* why = nullptr) {
    auto fail = [&](const std::string& r) {
        if (why) *why = r;
        return false;
    };
    int n = g.size();
    std::string lw;
    if (!validate_layout(lay, n, &lw)) return fail("layout: " + lw);
    auto eds = layout_edges(lay);
    if (cfg.layout_edges != eds) return fail("edge list does not match the layout");
    if (cfg.forced.size() != eds.size() || cfg.realized.size() != eds.size()) return fail("ragged configuration");
    {
        std::vector<Edge> marked, want;
        for (size_t i = 0; i < eds.size(); ++i)
            if (cfg.forced[i]) marked.push_back(eds[i]);
        for (const auto& f : lay.forced) want.push_back(make_edge(f.first, f.second));
        std::sort(marked.begin(), marked.end());
        std::sort(want.begin(), want.end());
        if (marked != want) return fail("forced marks do not match the forced multiset");
    }
    std::vector<char> in_l(n, 0);
    for (int v : layout_vertices(lay)) in_l[v] = 1;
    std::vector<char> interior(n, 0);
    std::vector<Edge> used;
    int interior_count = 0;
    for (size_t i = 0; i < eds.size(); ++i) {
        const auto& p = cfg.realized[i];
        if (p.size() < 2) return fail("realized path too short");
        bool fwd = p.front() == eds[i].first && p.back() == eds[i].second;
        bool rev = p.front() == eds[i].second && p.back() == eds[i].first;
        if (!fwd && !rev) return fail("realized path has the wrong ends");
        if (cfg.forced[i]) {
            if (p.size() != 2) return fail("forced edge realized as a longer path");
            continue;
        }
        for (size_t j = 0; j + 1 < p.size(); ++j) {
            if (!g.has_edge(p[j], p[j + 1])) return fail("realized edge not in the host");
            used.push_back(make_edge(p[j], p[j + 1]));
        }
        for (size_t j = 1; j + 1 < p.size(); ++j) {
            int v = p[j];
            if (in_l[v]) return fail("interior vertex lies in the layout");
            if (interior[v]) return fail("interior vertex reused");
            interior[v] = 1;
            ++interior_count;
        }
    }
    std::sort(used.begin(), used.end());
    for (size_t i = 1; i < used.size(); ++i)
        if (used[i] == used[i - 1]) return fail("host edge used twice");
    int free_total = 0;
    for (int v = 0; v < n; ++v)
        if (!in_l[v]) ++free_total;
    if (interior_count != free_total) return fail("interiors do not cover the complement of the layout");
    return true;
}

struct ConfigsResult {
    SearchStatus status = SearchStatus::None;
    std::vector<SpanningConfiguration> configs;
    SimpleGraph residual;
    int stuck_layout = -1;  // deepest layout reached when no packing exists
};

namespace detail {

struct ConfigEngine {
    struct Lay {
        std::vector<Edge> eds;
        std::vector<char> forcedmark;
        std::vector<int> open;  // indices of non-forced edges
        std::vector<char> in_l;
        std::vector<std::vector<int>> realized;
        std::vector<char> cover;
        int covered = 0;
        int free_total = 0;
    };

    const SimpleGraph& g;
    Ticker& t;
    int n;
    std::vector<Lay> ls;
    std::vector<char> used;
    int deepest = 0;

    ConfigEngine(const SimpleGraph& host, const std::vector<Layout>& layouts, Ticker& ticker)
        : g(host), t(ticker), n(host.size()), used(static_cast<size_t>(host.size()) * host.size(), 0) {
        for (size_t i = 0; i < layouts.size(); ++i) {
            std::string why;
            if (!validate_layout(layouts[i], n, &why))
                throw std::invalid_argument("layout " + std::to_string(i) + ": " + why);
            Lay l;
            l.eds = layout_edges(layouts[i]);
            l.forcedmark.assign(l.eds.size(), 0);
            for (const auto& f : layouts[i].forced) {
                Edge e = make_edge(f.first, f.second);
                for (size_t j = 0; j < l.eds.size(); ++j)
                    if (!l.forcedmark[j] && l.eds[j] == e) {
                        l.forcedmark[j] = 1;
                        break;
                    }
            }
            l.realized.resize(l.eds.size());
            for (size_t j = 0; j < l.eds.size(); ++j) {
                if (l.forcedmark[j])
                    l.realized[j] = {l.eds[j].first, l.eds[j].second};
                else
                    l.open.push_back(static_cast<int>(j));
            }
            l.in_l.assign(n, 0);
            for (int v : layout_vertices(layouts[i])) l.in_l[v] = 1;
            l.cover.assign(n, 0);
            for (int v = 0; v < n; ++v)
                if (!l.in_l[v]) ++l.free_total;
            ls.push_back(std::move(l));
        }
    }

    size_t eidx(int u, int v) const { return static_cast<size_t>(std::min(u, v)) * n + std::max(u, v); }

    // every uncovered free vertex needs two usable incident edges and must be
    // reachable from the frontier or an endpoint of a still-open edge
    bool feasible(const Lay& l, int oi, int cur) {
        std::vector<char> reach(n, 0), access(n, 0);
        std::vector<int> stack;
        auto push = [&](int v) {
            access[v] = 1;
            if (!reach[v]) {
                reach[v] = 1;
                stack.push_back(v);
            }
        };
        push(cur);
        for (size_t j = oi; j < l.open.size(); ++j) {
            const Edge& e = l.eds[l.open[j]];
            push(e.first);
            push(e.second);
        }
        int reached = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (used[eidx(v, w)] || reach[w]) continue;
                if (l.in_l[w] || l.cover[w]) continue;
                reach[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
        if (reached != l.free_total - l.covered) return false;
        for (int v = 0; v < n; ++v) {
            if (l.in_l[v] || l.cover[v]) continue;
            int avail = 0;
            for (int w : g.neighbors(v)) {
                if (used[eidx(v, w)]) continue;
                if ((!l.in_l[w] && !l.cover[w]) || access[w])
                    if (++avail == 2) break;
            }
            if (avail < 2) return false;
        }
        return true;
    }

    bool solve(int li) {
        if (li == static_cast<int>(ls.size())) return true;
        deepest = std::max(deepest, li);
        return solve_edge(li, 0);
    }

    bool solve_edge(int li, int oi) {
        Lay& l = ls[li];
        if (oi == static_cast<int>(l.open.size())) return l.covered == l.free_total && solve(li + 1);
        int ei = l.open[oi];
        l.realized[ei].assign(1, l.eds[ei].first);
        bool ok = extend(li, oi, l.eds[ei].first);
        if (!ok) l.realized[ei].clear();
        return ok;
    }

    bool extend(int li, int oi, int cur) {
        if (!t.tick()) return false;
        Lay& l = ls[li];
        if (!feasible(l, oi, cur)) return false;
        int ei = l.open[oi];
        int target = l.eds[ei].second;
        if (g.has_edge(cur, target) && !used[eidx(cur, target)]) {
            used[eidx(cur, target)] = 1;
            l.realized[ei].push_back(target);
            if (solve_edge(li, oi + 1)) return true;
            l.realized[ei].pop_back();
            used[eidx(cur, target)] = 0;
            if (t.out) return false;
        }
        for (int w : g.neighbors(cur)) {
            if (l.in_l[w] || l.cover[w] || used[eidx(cur, w)]) continue;
            used[eidx(cur, w)] = 1;
            l.cover[w] = 1;
            ++l.covered;
            l.realized[ei].push_back(w);
            if (extend(li, oi, w)) return true;
            l.realized[ei].pop_back();
            --l.covered;
            l.cover[w] = 0;
            used[eidx(cur, w)] = 0;
            if (t.out) return false;
        }
        return false;
    }
};

}  // namespace detail

// Realizes all layouts against one host with mutually edge-disjoint
// non-forced paths, backtracking across layouts.  Forced edges never consume
// host edges.  Interior coverage is per layout; edge usage is shared.
inline ConfigsResult edge_disjoint_spanning_configs(const SimpleGraph& g, const std::vector<Layout>& layouts,
                                                    SearchBudget budget = {}) {
    detail::Ticker t{budget.node_limit};
    detail::ConfigEngine eng(g, layouts, t);
    ConfigsResult out;
    out.residual = g;
    if (layouts.empty()) {
        out.status = SearchStatus::Found;
        return out;
    }
    if (!eng.solve(0)) {
        out.status = t.out ? SearchStatus::Unknown : SearchStatus::None;
        out.stuck_layout = eng.deepest;
        return out;
    }
    out.status = SearchStatus::Found;
    for (size_t i = 0; i < layouts.size(); ++i) {
        SpanningConfiguration cfg;
        cfg.layout_edges = eng.ls[i].eds;
        cfg.forced = eng.ls[i].forcedmark;
        cfg.realized = eng.ls[i].realized;
        std::string why;
        if (!validate_spanning_configuration(g, layouts[i], cfg, &why))
            throw std::logic_error("spanning configuration " + std::to_string(i) + ": " + why);
        for (size_t j = 0; j < cfg.realized.size(); ++j) {
            if (cfg.forced[j]) continue;
            const auto& p = cfg.realized[j];
            for (size_t q = 0; q + 1 < p.size(); ++q) out.residual.remove_edge(p[q], p[q + 1]);
        }
        out.configs.push_back(std::move(cfg));
    }
    return out;
}

inline std::pair<SearchStatus, SpanningConfiguration> spanning_configuration(const SimpleGraph& g, const Layout& lay,
                                                                             SearchBudget budget = {}) {
    auto res = edge_disjoint_spanning_configs(g, {lay}, budget);
    if (res.status != SearchStatus::Found) return {res.status, SpanningConfiguration{}};
    return {SearchStatus::Found, res.configs[0]};
}

}  // namespace linforest
