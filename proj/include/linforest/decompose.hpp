#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "hamilton.hpp"
#include "matching.hpp"
#include "rational.hpp"
#include "realize.hpp"

namespace linforest {

// ============================ exact solver =============================

struct LaResult {
    SearchStatus status = SearchStatus::Unknown;
    int count = 0;
    std::vector<LinearForest> forests;
};

namespace detail {

// Union-find without path compression; every union is undoable, so the
// branch-and-bound keeps one structure per forest across the whole tree.
struct RollbackDsu {
    std::vector<int> parent, size;
    std::vector<int> log;  // roots that were attached, in order
    explicit RollbackDsu(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        log.push_back(b);
        return true;
    }
    size_t mark() const { return log.size(); }
    void rollback(size_t m) {
        while (log.size() > m) {
            int b = log.back();
            log.pop_back();
            size[parent[b]] -= size[b];
            parent[b] = b;
        }
    }
};

}  // namespace detail

// First-fit assignment of edges (heaviest endpoint sum first) into linear
// forests.  Always succeeds; the honest upper bound everywhere.
inline std::vector<LinearForest> greedy_linear_forests(const SimpleGraph& g) {
    auto edges = g.edges();
    std::stable_sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
        return g.degree(a.first) + g.degree(a.second) > g.degree(b.first) + g.degree(b.second);
    });
    std::vector<LinearForest> forests;
    std::vector<std::vector<int>> deg;
    std::vector<Dsu> comp;
    for (const auto& e : edges) {
        size_t f = 0;
        for (; f < forests.size(); ++f) {
            if (deg[f][e.first] >= 2 || deg[f][e.second] >= 2) continue;
            if (comp[f].find(e.first) == comp[f].find(e.second)) continue;
            break;
        }
        if (f == forests.size()) {
            forests.emplace_back();
            deg.emplace_back(g.size(), 0);
            comp.emplace_back(g.size());
        }
        forests[f].edges.push_back(e);
        ++deg[f][e.first];
        ++deg[f][e.second];
        comp[f].unite(e.first, e.second);
    }
    for (auto& f : forests) std::sort(f.edges.begin(), f.edges.end());
    return forests;
}

// Exact linear arboricity by iterative deepening over the forest count.
// Edges are assigned one by one; a forest stays valid iff both endpoints have
// degree < 2 in it and the edge joins two of its components.  Prunes: total
// and per-vertex capacity, fail-first edge selection, and the usual symmetry
// cut (an edge may open at most one fresh forest).
inline LaResult la_exact(const SimpleGraph& g, SearchBudget budget = {}, int cap = 12) {
    const int n = g.size();
    if (n > cap)
        throw std::invalid_argument("exact solver: " + std::to_string(n) + " vertices exceeds the cap of " +
                                    std::to_string(cap));
    LaResult out;
    auto edges = g.edges();
    const int m = static_cast<int>(edges.size());
    if (m == 0) {
        out.status = SearchStatus::Found;
        return out;
    }
    std::stable_sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
        return g.degree(a.first) + g.degree(a.second) > g.degree(b.first) + g.degree(b.second);
    });
    const int lower = std::max((max_degree(g) + 1) / 2, (m + n - 2) / (n - 1));
    detail::Ticker ticker{budget.node_limit};

    for (int k = std::max(lower, 1); k <= m; ++k) {
        std::vector<std::vector<int>> deg(k, std::vector<int>(n, 0));
        std::vector<detail::RollbackDsu> dsu;
        dsu.reserve(k);
        for (int f = 0; f < k; ++f) dsu.emplace_back(n);
        std::vector<int> load(k, 0), pending(n, 0), assign(m, -1);
        for (const auto& e : edges) {
            ++pending[e.first];
            ++pending[e.second];
        }
        int opened = 0;

        auto feasible = [&](int f, const Edge& e) {
            return deg[f][e.first] < 2 && deg[f][e.second] < 2 && dsu[f].find(e.first) != dsu[f].find(e.second);
        };

        auto search = [&](auto&& self, int done) -> bool {
            if (!ticker.tick()) return false;
            if (done == m) return true;
            long long room = 0;
            for (int f = 0; f < k; ++f) room += (n - 1) - load[f];
            if (room < m - done) return false;
            for (int v = 0; v < n; ++v) {
                if (pending[v] == 0) continue;
                int slots = 0;
                for (int f = 0; f < k; ++f) slots += 2 - deg[f][v];
                if (slots < pending[v]) return false;
            }
            int pick = -1, best = k + 1;
            std::vector<int> options, pool;
            for (int i = 0; i < m && best > 1; ++i) {
                if (assign[i] != -1) continue;
                options.clear();
                const int limit = std::min(opened + 1, k);
                for (int f = 0; f < limit; ++f)
                    if (feasible(f, edges[i])) options.push_back(f);
                if (options.empty()) return false;
                if (static_cast<int>(options.size()) < best) {
                    best = static_cast<int>(options.size());
                    pick = i;
                    pool = options;
                }
            }
            const Edge e = edges[pick];
            for (int f : pool) {
                auto mk = dsu[f].mark();
                dsu[f].unite(e.first, e.second);
                ++deg[f][e.first];
                ++deg[f][e.second];
                ++load[f];
                --pending[e.first];
                --pending[e.second];
                assign[pick] = f;
                const int prev = opened;
                opened = std::max(opened, f + 1);
                if (self(self, done + 1)) return true;
                opened = prev;
                assign[pick] = -1;
                ++pending[e.first];
                ++pending[e.second];
                --load[f];
                --deg[f][e.first];
                --deg[f][e.second];
                dsu[f].rollback(mk);
            }
            return false;
        };

        if (search(search, 0)) {
            out.status = SearchStatus::Found;
            out.count = k;
            out.forests.assign(k, {});
            for (int i = 0; i < m; ++i) out.forests[assign[i]].edges.push_back(edges[i]);
            for (auto& f : out.forests) std::sort(f.edges.begin(), f.edges.end());
            auto rep = validate_decomposition(g, out.forests);
            if (!rep.ok) throw std::logic_error("exact solver: invalid decomposition: " + rep.reason);
            return out;
        }
        if (ticker.out) {
            out.status = SearchStatus::Unknown;
            out.forests = greedy_linear_forests(g);
            out.count = static_cast<int>(out.forests.size());
            return out;
        }
    }
    throw std::logic_error("exact solver fell through the trivial upper bound");
}

// ============================ regular route ============================

struct RouteResult {
    SearchStatus status = SearchStatus::None;
    std::vector<LinearForest> forests;
    std::string note;
};

// r-regular graphs: for even r, split into r/2 Hamilton cycles and delete one
// edge per cycle, the deletions chosen pairwise vertex-disjoint, giving r/2
// paths plus the deletion matching.  For odd r, peel a perfect matching and
// run the even case on the rest, with the deletions further constrained so
// that matching plus deletions stays a linear forest.
inline RouteResult la_regular_expander(const SimpleGraph& g, SearchBudget budget = {}, int cap = 16) {
    if (!is_regular(g)) throw std::invalid_argument("regular route: input graph is not regular");
    RouteResult out;
    const int n = g.size();
    const int r = n == 0 ? 0 : g.degree(0);
    if (r == 0) {
        out.status = SearchStatus::Found;
        return out;
    }
    detail::Ticker ticker{budget.node_limit};

    auto choose_deletions = [&](const std::vector<std::vector<int>>& cycles, const std::vector<Edge>& seed,
                                std::vector<Edge>& picked) -> bool {
        detail::RollbackDsu dsu(n);
        for (const auto& e : seed) dsu.unite(e.first, e.second);
        std::vector<char> used(n, 0);
        picked.clear();
        auto rec = [&](auto&& self, size_t idx) -> bool {
            if (!ticker.tick()) return false;
            if (idx == cycles.size()) return true;
            for (const auto& e : cycle_edges(cycles[idx])) {
                if (used[e.first] || used[e.second]) continue;
                auto mk = dsu.mark();
                if (!dsu.unite(e.first, e.second)) continue;
                used[e.first] = used[e.second] = 1;
                picked.push_back(e);
                if (self(self, idx + 1)) return true;
                picked.pop_back();
                used[e.first] = used[e.second] = 0;
                dsu.rollback(mk);
            }
            return false;
        };
        return rec(rec, 0);
    };

    auto finish = [&](std::vector<LinearForest> forests) -> RouteResult& {
        for (auto& f : forests) std::sort(f.edges.begin(), f.edges.end());
        auto rep = validate_decomposition(g, forests);
        if (!rep.ok) throw std::logic_error("regular route: invalid decomposition: " + rep.reason);
        if (static_cast<int>(forests.size()) > forest_target(r))
            throw std::logic_error("regular route: forest count exceeds the target");
        out.forests = std::move(forests);
        out.status = SearchStatus::Found;
        return out;
    };

    if (r % 2 == 0) {
        auto hd = hamilton_decomposition(g, budget, std::max(cap, n));
        if (hd.status != SearchStatus::Found) {
            out.status = hd.status;
            out.note = "hamilton decomposition: " + std::string(to_string(hd.status));
            return out;
        }
        std::vector<Edge> del;
        if (!choose_deletions(hd.cycles, {}, del)) {
            out.status = ticker.out ? SearchStatus::Unknown : SearchStatus::None;
            out.note = "no pairwise-disjoint deletion system across the cycles";
            return out;
        }
        std::vector<LinearForest> forests;
        for (size_t i = 0; i < hd.cycles.size(); ++i) {
            LinearForest f;
            for (const auto& e : cycle_edges(hd.cycles[i]))
                if (!(e == del[i])) f.edges.push_back(e);
            forests.push_back(std::move(f));
        }
        forests.push_back(LinearForest{del});
        return finish(std::move(forests));
    }

    auto mm = max_matching(g);
    if (2 * static_cast<int>(mm.edges.size()) < n) {
        out.status = SearchStatus::None;
        out.note = "no perfect matching in the odd-degree graph";
        return out;
    }
    std::vector<Edge> peel;
    for (const auto& e : mm.edges) peel.push_back(make_edge(e.first, e.second));
    SimpleGraph rest = g;
    for (const auto& e : peel) rest.remove_edge(e.first, e.second);
    if (r == 1) return finish({LinearForest{peel}});
    auto hd = hamilton_decomposition(rest, budget, std::max(cap, n));
    if (hd.status != SearchStatus::Found) {
        out.status = hd.status;
        out.note = "hamilton decomposition after the matching peel: " + std::string(to_string(hd.status));
        return out;
    }
    std::vector<Edge> del;
    if (!choose_deletions(hd.cycles, peel, del)) {
        out.status = ticker.out ? SearchStatus::Unknown : SearchStatus::None;
        out.note = "no deletion system compatible with the peeled matching";
        return out;
    }
    std::vector<LinearForest> forests;
    for (size_t i = 0; i < hd.cycles.size(); ++i) {
        LinearForest f;
        for (const auto& e : cycle_edges(hd.cycles[i]))
            if (!(e == del[i])) f.edges.push_back(e);
        forests.push_back(std::move(f));
    }
    std::vector<Edge> last = peel;
    last.insert(last.end(), del.begin(), del.end());
    forests.push_back(LinearForest{last});
    return finish(std::move(forests));
}

// ========================= degree equalization =========================

struct DeficiencyPlan {
    int target_d = 0;
    MultiGraph multigraph;                  // realization of the deficiencies
    std::vector<std::vector<Edge>> matchings;  // partition of its edges
    int forest_count = 0;
};

struct ReduceResult {
    SearchStatus status = SearchStatus::None;
    DeficiencyPlan plan;
    std::vector<LinearForest> forests;
    SimpleGraph residual;
    std::string note;
};

// Removes spanning linear forests whose leaves are prescribed so every vertex
// reaches degree d - 2*ell + df(v): realize the deficiencies df(v) =
// max(d - deg(v), 0) as a multigraph, edge-color it greedily, split the color
// classes into matchings of size <= k_max, and extract one spanning linkage
// per matching.
inline ReduceResult reduce_to_regular(const SimpleGraph& g, int d, int k_max = 2, SearchBudget budget = {}) {
    if (k_max < 1) throw std::invalid_argument("degree equalization: matching cap must be at least 1");
    const int n = g.size();
    ReduceResult out;
    out.residual = g;
    out.plan.target_d = d;
    out.plan.multigraph = MultiGraph(n);
    std::vector<int> df(n, 0);
    long long total = 0;
    int biggest = 0;
    for (int v = 0; v < n; ++v) {
        df[v] = std::max(d - g.degree(v), 0);
        total += df[v];
        biggest = std::max(biggest, df[v]);
    }
    if (total == 0) {
        out.status = SearchStatus::Found;
        return out;
    }
    if (total % 2 != 0) throw std::invalid_argument("degree equalization: odd total deficiency");
    if (2LL * biggest > total) throw std::invalid_argument("degree equalization: one deficiency dominates the rest");
    MultiGraph h = hakimi_multigraph(df);
    out.plan.multigraph = h;

    std::vector<std::vector<Edge>> classes;
    std::vector<std::vector<char>> busy;
    for (const auto& e : h.edges()) {
        size_t c = 0;
        while (c < classes.size() && (busy[c][e.first] || busy[c][e.second])) ++c;
        if (c == classes.size()) {
            classes.emplace_back();
            busy.emplace_back(n, 0);
        }
        classes[c].push_back(e);
        busy[c][e.first] = busy[c][e.second] = 1;
    }
    if (classes.size() > 2 * static_cast<size_t>(h.max_degree()))
        throw std::logic_error("degree equalization: coloring exceeded twice the maximum degree");
    for (const auto& cls : classes)
        for (size_t at = 0; at < cls.size(); at += k_max)
            out.plan.matchings.emplace_back(cls.begin() + at,
                                            cls.begin() + std::min(cls.size(), at + static_cast<size_t>(k_max)));

    for (size_t i = 0; i < out.plan.matchings.size(); ++i) {
        std::vector<std::pair<int, int>> pairs;
        for (const auto& e : out.plan.matchings[i]) pairs.push_back({e.first, e.second});
        auto linked = k_linkage(out.residual, pairs, budget);
        if (linked.status != SearchStatus::Found) {
            out.status = linked.status;
            out.note = "spanning linkage failed on matching " + std::to_string(i + 1) + " of " +
                       std::to_string(out.plan.matchings.size()) + " (" + to_string(linked.status) + ")";
            return out;
        }
        LinearForest f;
        for (const auto& p : linked.paths)
            for (const auto& e : path_edges(p)) f.edges.push_back(e);
        std::sort(f.edges.begin(), f.edges.end());
        for (const auto& e : f.edges) out.residual.remove_edge(e.first, e.second);
        out.forests.push_back(std::move(f));
        ++out.plan.forest_count;
    }
    for (int v = 0; v < n; ++v)
        if (out.residual.degree(v) != g.degree(v) - 2 * out.plan.forest_count + df[v])
            throw std::logic_error("degree equalization: residual identity failed at vertex " + std::to_string(v));
    out.status = SearchStatus::Found;
    return out;
}

// ========================= pipeline bookkeeping ========================

enum class Route { exact_oracle, regular_route, case1, case2, case3, theorem14_reduction };

inline std::string to_string(Route r) {
    switch (r) {
        case Route::exact_oracle: return "exact_oracle";
        case Route::regular_route: return "regular_route";
        case Route::case1: return "case1";
        case Route::case2: return "case2";
        case Route::case3: return "case3";
        case Route::theorem14_reduction: return "theorem14_reduction";
    }
    return "?";
}

struct StageSnapshot {
    std::string stage;
    SimpleGraph residual;
    int removed_count = 0;  // forests removed when the snapshot was taken
};

// Replaying removed_forests against the snapshot taken after clique
// completion reproduces every later snapshot: snapshot k holds the completed
// graph minus the first removed_count forests.
struct PipelineTrace {
    Route route = Route::exact_oracle;
    std::vector<LinearForest> removed_forests;
    std::vector<StageSnapshot> snapshots;
    Rational nu{1, 8};
    Rational tau{1, 4};
    Rational eta{3, 10};
    Rational alpha{1, 2};
    std::vector<Edge> added_clique_edges;
    std::vector<std::string> notes;
};

struct PipelineParams {
    Rational nu{1, 8};
    Rational tau{1, 4};
    Rational eta{3, 10};
    Rational alpha{1, 2};
    int k_max = 2;
    int cap = 16;
    SearchBudget budget{};
};

struct PipelineResult {
    SearchStatus status = SearchStatus::None;
    std::vector<LinearForest> forests;
    PipelineTrace trace;
    std::string reason;
};

namespace detail {

inline void note(PipelineTrace& t, std::string s) { t.notes.push_back(std::move(s)); }

inline void record_removed(PipelineTrace& t, const LinearForest& f) { t.removed_forests.push_back(f); }

inline void snapshot(PipelineTrace& t, const std::string& stage, const SimpleGraph& g) {
    t.snapshots.push_back({stage, g, static_cast<int>(t.removed_forests.size())});
}

inline void stamp_params(PipelineTrace& t, const PipelineParams& p) {
    t.nu = p.nu;
    t.tau = p.tau;
    t.eta = p.eta;
    t.alpha = p.alpha;
}

// Joins every pair of non-adjacent vertices that both sit below the maximum
// degree.  Restarts from the lexicographically first pair after each
// insertion because additions change degrees.
inline std::vector<Edge> complete_subdelta(SimpleGraph& g) {
    std::vector<Edge> added;
    const int dmax = max_degree(g);
    bool again = true;
    while (again) {
        again = false;
        for (int u = 0; u < g.size() && !again; ++u) {
            if (g.degree(u) >= dmax) continue;
            for (int v = u + 1; v < g.size() && !again; ++v) {
                if (g.degree(v) >= dmax || g.has_edge(u, v)) continue;
                g.add_edge(u, v);
                added.push_back(make_edge(u, v));
                again = true;
            }
        }
    }
    return added;
}

inline std::vector<LinearForest> strip_edges(std::vector<LinearForest> forests, const std::vector<Edge>& removed) {
    if (removed.empty()) return forests;
    std::vector<Edge> gone = removed;
    std::sort(gone.begin(), gone.end());
    for (auto& f : forests) {
        std::vector<Edge> keep;
        for (const auto& e : f.edges)
            if (!std::binary_search(gone.begin(), gone.end(), e)) keep.push_back(e);
        f.edges = std::move(keep);
    }
    return forests;
}

inline void drop_empty(std::vector<LinearForest>& forests) {
    forests.erase(
        std::remove_if(forests.begin(), forests.end(), [](const LinearForest& f) { return f.edges.empty(); }),
        forests.end());
}

// Edges of each cycle restricted to base vertices and to edges really present
// in `keep`: apex and helper edges drop out and paths remain.
inline std::vector<LinearForest> cycles_restricted(const std::vector<std::vector<int>>& cycles,
                                                   const SimpleGraph& keep, int base_n) {
    std::vector<LinearForest> out;
    for (const auto& c : cycles) {
        LinearForest f;
        for (const auto& e : cycle_edges(c))
            if (e.first < base_n && e.second < base_n && keep.has_edge(e.first, e.second)) f.edges.push_back(e);
        std::sort(f.edges.begin(), f.edges.end());
        out.push_back(std::move(f));
    }
    return out;
}

inline std::vector<LinearForest> forests_restricted(const std::vector<LinearForest>& fs, const SimpleGraph& keep,
                                                    int base_n) {
    std::vector<LinearForest> out;
    for (const auto& f0 : fs) {
        LinearForest f;
        for (const auto& e : f0.edges)
            if (e.first < base_n && e.second < base_n && keep.has_edge(e.first, e.second)) f.edges.push_back(e);
        std::sort(f.edges.begin(), f.edges.end());
        out.push_back(std::move(f));
    }
    return out;
}

// The edge set must form one path covering exactly `span` with endpoints a, b.
inline void check_spanning_path(int n, const std::vector<Edge>& edges, std::vector<int> span, int a, int b,
                                const std::string& label) {
    std::string why;
    if (!is_linear_forest(n, edges, &why)) throw std::logic_error(label + ": " + why);
    std::sort(span.begin(), span.end());
    if (edges.size() + 1 != span.size()) throw std::logic_error(label + ": edge count does not match the span");
    std::vector<int> deg(n, 0), seen;
    for (const auto& e : edges) {
        ++deg[e.first];
        ++deg[e.second];
        seen.push_back(e.first);
        seen.push_back(e.second);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    if (seen != span) throw std::logic_error(label + ": covered vertices differ from the span");
    for (int v : seen)
        if (deg[v] == 1 && v != a && v != b)
            throw std::logic_error(label + ": unexpected path endpoint " + std::to_string(v));
    if (deg[a] != 1 || deg[b] != 1) throw std::logic_error(label + ": designated endpoints are not leaves");
}

inline std::vector<Edge> normalized_sorted(const std::vector<Edge>& edges) {
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(make_edge(e.first, e.second));
    std::sort(out.begin(), out.end());
    return out;
}

struct CaseOutcome {
    SearchStatus status = SearchStatus::None;
    std::vector<LinearForest> forests;  // edges of the completed graph
    std::string why;
};

// Case for a large low-degree spread: realize the missing degree inside a
// regular supergraph and strip the padding from its Hamilton decomposition.
// If the working maximum is odd, a parity matching is peeled first.
inline CaseOutcome case1_route(const SimpleGraph& gc, const PipelineParams& params, PipelineTrace& trace) {
    CaseOutcome out;
    const int n = gc.size();
    const int dmax = max_degree(gc);
    SimpleGraph gstar = gc;
    std::vector<LinearForest> forests;
    int target = dmax;

    if (dmax % 2 == 1) {
        std::vector<Edge> m;
        if (n % 2 == 0) {
            auto mm = max_matching(gc);
            if (2 * static_cast<int>(mm.edges.size()) < n) {
                out.why = "no perfect parity matching";
                return out;
            }
            m = normalized_sorted(mm.edges);
        } else {
            const int v1 = degree_order(gc).front();
            auto mm = max_matching(gc.without_vertex(v1));
            if (2 * static_cast<int>(mm.edges.size()) < n - 1) {
                out.why = "no near-perfect parity matching avoiding the low vertex";
                return out;
            }
            for (const auto& e : mm.edges)
                m.push_back(make_edge(e.first >= v1 ? e.first + 1 : e.first, e.second >= v1 ? e.second + 1 : e.second));
            std::sort(m.begin(), m.end());
        }
        for (const auto& e : m) gstar.remove_edge(e.first, e.second);
        target = dmax - 1;
        if (max_degree(gstar) > target)
            throw std::logic_error("case1: parity matching missed a maximum-degree vertex");
        LinearForest mf{m};
        forests.push_back(mf);
        record_removed(trace, mf);
        snapshot(trace, "case1 parity matching removed", gstar);
    }

    SupergraphEmbedding emb;
    try {
        emb = case1_supergraph(gstar, target);
    } catch (const std::invalid_argument& ex) {
        out.why = std::string("supergraph construction: ") + ex.what();
        return out;
    } catch (const std::runtime_error& ex) {
        out.why = std::string("supergraph construction: ") + ex.what();
        return out;
    }
    note(trace, "case1: host on " + std::to_string(emb.host.size()) + " vertices, padding " +
                    std::to_string(emb.x_set.size()));
    auto hd = hamilton_decomposition(emb.host, params.budget, std::max(params.cap, emb.host.size()));
    if (hd.status != SearchStatus::Found) {
        out.status = hd.status;
        out.why = "host hamilton decomposition: " + std::string(to_string(hd.status));
        return out;
    }
    auto fs = cycles_restricted(hd.cycles, gstar, n);
    forests.insert(forests.end(), fs.begin(), fs.end());
    out.forests = std::move(forests);
    out.status = SearchStatus::Found;
    return out;
}

// Case for a small spread with enough middle vertices: equalize degrees at
// the maximum (peeling one Hamilton path first when the total deficiency is
// odd), then finish on the regular or almost-regular remainder.
inline CaseOutcome case2_route(const SimpleGraph& gc, const PipelineParams& params, PipelineTrace& trace) {
    CaseOutcome out;
    const int n = gc.size();
    const int dmax = max_degree(gc);
    long long defsum = 0;
    for (int v = 0; v < n; ++v) defsum += dmax - gc.degree(v);
    std::vector<LinearForest> forests;

    if (defsum % 2 == 0) {
        ReduceResult red;
        try {
            red = reduce_to_regular(gc, dmax, params.k_max, params.budget);
        } catch (const std::invalid_argument& ex) {
            out.why = std::string("degree equalization: ") + ex.what();
            return out;
        }
        if (red.status != SearchStatus::Found) {
            out.status = red.status;
            out.why = "degree equalization: " + red.note;
            return out;
        }
        for (const auto& f : red.forests) {
            forests.push_back(f);
            record_removed(trace, f);
        }
        snapshot(trace, "case2 equalized", red.residual);
        auto tail = la_regular_expander(red.residual, params.budget, std::max(params.cap, n));
        if (tail.status != SearchStatus::Found) {
            out.status = tail.status;
            out.why = "regular remainder: " + tail.note;
            return out;
        }
        forests.insert(forests.end(), tail.forests.begin(), tail.forests.end());
        out.forests = std::move(forests);
        out.status = SearchStatus::Found;
        return out;
    }

    // odd total deficiency (both n and the maximum degree odd): peel a
    // Hamilton path from a minimum-degree vertex to a maximum-degree vertex
    const auto order = degree_order(gc);
    const int v1 = order.front(), vn = order.back();
    auto hp = hamilton_path(gc, v1, vn, params.budget);
    if (hp.status != SearchStatus::Found) {
        out.status = hp.status;
        out.why = "parity path: " + std::string(to_string(hp.status));
        return out;
    }
    SimpleGraph g1 = gc;
    LinearForest pf{normalized_sorted(path_edges(hp.path))};
    for (const auto& e : pf.edges) g1.remove_edge(e.first, e.second);
    forests.push_back(pf);
    record_removed(trace, pf);
    snapshot(trace, "case2 parity path removed", g1);

    ReduceResult red;
    try {
        red = reduce_to_regular(g1, dmax - 2, params.k_max, params.budget);
    } catch (const std::invalid_argument& ex) {
        out.why = std::string("degree equalization: ") + ex.what();
        return out;
    }
    if (red.status != SearchStatus::Found) {
        out.status = red.status;
        out.why = "degree equalization: " + red.note;
        return out;
    }
    for (const auto& f : red.forests) {
        forests.push_back(f);
        record_removed(trace, f);
    }
    snapshot(trace, "case2 equalized", red.residual);

    const int r = dmax - 2 - 2 * red.plan.forest_count;
    if (r < 1) {
        out.why = "equalization consumed the whole degree budget";
        return out;
    }
    for (int v = 0; v < n; ++v) {
        const int expect = v == vn ? r + 1 : r;
        if (red.residual.degree(v) != expect)
            throw std::logic_error("case2: unexpected degree at vertex " + std::to_string(v));
    }
    int special = -1;
    Matching comp;
    try {
        comp = complement_matching_almost_regular(red.residual, &special);
    } catch (const std::invalid_argument& ex) {
        out.why = std::string("complement matching: ") + ex.what();
        return out;
    }
    if (special != vn) throw std::logic_error("case2: complement matching picked the wrong high vertex");
    if ((n - r - 2) % 2 != 0) throw std::logic_error("case2: complement matching size parity");
    const int need = (n - r - 2) / 2;
    if (static_cast<int>(comp.edges.size()) < need) {
        out.why = "complement matching too small (" + std::to_string(comp.edges.size()) + " of " +
                  std::to_string(need) + ")";
        return out;
    }
    auto m2 = normalized_sorted(comp.edges);
    m2.resize(need);
    SimpleGraph g2 = red.residual;
    for (const auto& e : m2) g2.add_edge(e.first, e.second);
    const int apex = g2.add_vertex();
    for (int v = 0; v < n; ++v)
        if (g2.degree(v) == r) g2.add_edge(v, apex);
    if (!is_regular(g2) || g2.degree(apex) != r + 1)
        throw std::logic_error("case2: apex failed to regularize the remainder");
    auto hd = hamilton_decomposition(g2, params.budget, std::max(params.cap, g2.size()));
    if (hd.status != SearchStatus::Found) {
        out.status = hd.status;
        out.why = "remainder hamilton decomposition: " + std::string(to_string(hd.status));
        return out;
    }
    auto fs = cycles_restricted(hd.cycles, red.residual, n);
    forests.insert(forests.end(), fs.begin(), fs.end());
    out.forests = std::move(forests);
    out.status = SearchStatus::Found;
    return out;
}

// Case for at most one middle vertex: peel ceil(gap/2) Hamilton paths through
// the top-degree block with scheduled endpoints so the remainder has degrees
// in a two-value window, then finish with interior pairs, an apex vertex or
// two, and a Hamilton decomposition.
inline CaseOutcome case3_route(const SimpleGraph& gc, const VertexClasses& cls, const PipelineParams& params,
                               PipelineTrace& trace) {
    CaseOutcome out;
    const int n = gc.size();
    const int dmax = max_degree(gc), dmin = min_degree(gc);
    const int gap = dmax - dmin;
    const int half = (gap + 1) / 2;
    const bool godd = gap % 2 == 1;
    const bool hasw = cls.w.size() == 1;
    const int w = hasw ? cls.w.front() : -1;
    const int wgap = hasw ? gc.degree(w) - dmin : 0;
    const bool wodd = hasw && wgap % 2 == 1;
    const int wsplices = hasw ? wgap / 2 : 0;

    if (static_cast<int>(cls.v_max.size()) < 2) {
        out.why = "top block too small";
        return out;
    }

    // first path: spans the top block, plus the middle vertex when its
    // excess over the minimum is odd (it then serves as an endpoint)
    std::vector<int> hostv = cls.v_max;
    if (wodd) {
        hostv.push_back(w);
        std::sort(hostv.begin(), hostv.end());
    }
    const int p = static_cast<int>(hostv.size());
    if (p < 2 * half) {
        out.why = "top block too small for the path schedule";
        return out;
    }
    std::vector<int> hostpos(n, -1);
    for (int i = 0; i < p; ++i) hostpos[hostv[i]] = i;
    SimpleGraph host = gc.induced(hostv);
    const int x1 = wodd ? w : cls.v_max[0];
    const int y1 = wodd ? cls.v_max[0] : cls.v_max[1];
    auto p1 = hamilton_path(host, hostpos[x1], hostpos[y1], params.budget);
    if (p1.status != SearchStatus::Found) {
        out.status = p1.status;
        out.why = "first path: " + std::string(to_string(p1.status));
        return out;
    }
    std::vector<int> seq;
    for (int hv : p1.path) seq.push_back(hostv[hv]);

    std::vector<char> wedge_used(n, 0);
    if (wodd) wedge_used[seq[1]] = 1;  // the first path enters w through seq[1]

    // top-block host for the remaining paths, first path's edges removed
    std::vector<int> bpos(n, -1);
    for (size_t i = 0; i < cls.v_max.size(); ++i) bpos[cls.v_max[i]] = static_cast<int>(i);
    SimpleGraph hostb = gc.induced(cls.v_max);
    for (const auto& e : path_edges(seq))
        if (bpos[e.first] != -1 && bpos[e.second] != -1) hostb.remove_edge(bpos[e.first], bpos[e.second]);

    // one cycle layout per remaining path; the forced pair (x_i, y_i) becomes
    // the removed cycle edge, a forced middle pair is spliced through w
    std::vector<Layout> lays;
    std::vector<int> conn_used(n, 0);
    std::vector<std::array<int, 2>> warms(static_cast<size_t>(half) + 1, {-1, -1});
    for (int i = 2; i <= half; ++i) {
        const int xi = seq[2 * i - 3], yi = seq[2 * i - 2];
        const bool spliced = hasw && i - 1 <= wsplices;
        int w1 = -1, w2 = -1;
        if (spliced) {
            for (int u : cls.v_max) {
                if (u == xi || u == yi || wedge_used[u] || !gc.has_edge(w, u)) continue;
                if (w1 == -1) {
                    w1 = u;
                } else {
                    w2 = u;
                    break;
                }
            }
            if (w2 == -1) {
                out.why = "no fresh middle attachments for path " + std::to_string(i);
                return out;
            }
            wedge_used[w1] = wedge_used[w2] = 1;
            warms[i] = {w1, w2};
        }
        int v1 = -1, v2 = -1;
        for (int u : cls.v_max) {
            if (u == xi || u == yi || u == w1 || u == w2 || conn_used[u] >= 2) continue;
            if (v1 == -1) {
                v1 = u;
            } else {
                v2 = u;
                break;
            }
        }
        if (v2 == -1) {
            out.why = "connector supply exhausted at path " + std::to_string(i);
            return out;
        }
        ++conn_used[v1];
        ++conn_used[v2];
        Layout lay;
        if (spliced)
            lay.paths = {{bpos[v1], bpos[xi], bpos[yi], bpos[w1], bpos[w2], bpos[v2]}, {bpos[v2], bpos[v1]}};
        else
            lay.paths = {{bpos[v1], bpos[xi], bpos[yi], bpos[v2]}, {bpos[v2], bpos[v1]}};
        lay.forced.push_back(make_edge(bpos[xi], bpos[yi]));
        if (spliced) lay.forced.push_back(make_edge(bpos[w1], bpos[w2]));
        lays.push_back(std::move(lay));
    }

    std::vector<SpanningConfiguration> cfgs;
    if (!lays.empty()) {
        auto solved = edge_disjoint_spanning_configs(hostb, lays, params.budget);
        if (solved.status != SearchStatus::Found) {
            out.status = solved.status;
            out.why = "path packing " + std::string(to_string(solved.status)) + " near layout " +
                      std::to_string(solved.stuck_layout + 2);
            return out;
        }
        cfgs = std::move(solved.configs);
    }

    SimpleGraph g1 = gc;
    std::vector<LinearForest> forests;
    auto peel = [&](std::vector<Edge> edges, const std::string& label, std::vector<int> span, int a, int b) {
        std::sort(edges.begin(), edges.end());
        check_spanning_path(n, edges, std::move(span), a, b, label);
        for (const auto& e : edges) g1.remove_edge(e.first, e.second);
        LinearForest f{std::move(edges)};
        forests.push_back(f);
        record_removed(trace, f);
    };
    peel(normalized_sorted(path_edges(seq)), "case3 path 1", hostv, x1, y1);
    for (size_t li = 0; li < cfgs.size(); ++li) {
        const int i = static_cast<int>(li) + 2;
        const int xi = seq[2 * i - 3], yi = seq[2 * i - 2];
        const auto [w1, w2] = warms[i];
        std::vector<Edge> edges;
        std::vector<int> span = cls.v_max;
        if (w1 != -1) {
            edges.push_back(make_edge(w, w1));
            edges.push_back(make_edge(w, w2));
            span.push_back(w);
            std::sort(span.begin(), span.end());
        }
        const auto& cfg = cfgs[li];
        for (size_t j = 0; j < cfg.layout_edges.size(); ++j) {
            if (cfg.forced[j]) {
                const Edge orig =
                    make_edge(cls.v_max[cfg.layout_edges[j].first], cls.v_max[cfg.layout_edges[j].second]);
                if (orig == make_edge(xi, yi)) continue;                      // the removed cycle edge
                if (w1 != -1 && orig == make_edge(w1, w2)) continue;          // replaced by the w splice
                throw std::logic_error("case3: stray forced edge in a configuration");
            }
            for (const auto& e : path_edges(cfg.realized[j]))
                edges.push_back(make_edge(cls.v_max[e.first], cls.v_max[e.second]));
        }
        peel(std::move(edges), "case3 path " + std::to_string(i), std::move(span), xi, yi);
    }
    snapshot(trace, "case3 top paths removed", g1);

    // planned degrees: endpoints of the schedule sit one above the rest of
    // the top block; the middle vertex and the bottom block sit at the minimum
    std::vector<char> ep(n, 0);
    for (int j = 0; j <= 2 * half - 2; ++j) ep[seq[j]] = 1;
    ep[seq[p - 1]] = 1;
    for (int v = 0; v < n; ++v) {
        int pred;
        if (hasw && v == w)
            pred = dmin;
        else if (bpos[v] == -1)
            pred = gc.degree(v);  // bottom block, untouched by the paths
        else if (godd)
            pred = ep[v] ? dmin : dmin - 1;
        else
            pred = ep[v] ? dmin + 1 : dmin;
        if (g1.degree(v) != pred)
            throw std::logic_error("case3: path bookkeeping mismatch at vertex " + std::to_string(v));
    }

    if (godd && dmin < 1) {
        out.why = "minimum degree too small for the odd-gap branch";
        return out;
    }
    const int low = godd ? dmin - 1 : dmin;
    std::vector<int> aset;
    for (int v = 0; v < n; ++v)
        if (g1.degree(v) == low) aset.push_back(v);
    std::vector<int> segment(seq.begin() + (2 * half - 1), seq.end() - 1);
    if (godd) {
        auto sorted_seg = segment;
        std::sort(sorted_seg.begin(), sorted_seg.end());
        if (sorted_seg != aset) throw std::logic_error("case3: low class differs from the first path's interior");
    }

    // disjoint consecutive interior pairs: each is a removed first-path edge,
    // so adding it back keeps the graph simple
    auto take_pairs = [&](int count) -> std::vector<Edge> {
        std::vector<Edge> ps;
        for (size_t at = 0; at + 1 < segment.size() && static_cast<int>(ps.size()) < count; at += 2)
            ps.push_back(make_edge(segment[at], segment[at + 1]));
        return ps;
    };

    auto add_apex_at = [&](SimpleGraph& g2, int level) {
        const int apex = g2.add_vertex();
        for (int v = 0; v < apex; ++v)
            if (g2.degree(v) == level) g2.add_edge(v, apex);
        return apex;
    };
    auto check_regular = [&](const SimpleGraph& g2, int r, const std::string& label) {
        if (!is_regular(g2) || (g2.size() > 0 && g2.degree(0) != r))
            throw std::logic_error(label + ": regularization failed");
    };

    auto hamilton_tail = [&](const SimpleGraph& g2, int r, std::string& why) -> std::vector<LinearForest> {
        check_regular(g2, r, "case3");
        auto hd = hamilton_decomposition(g2, params.budget, std::max(params.cap, g2.size()));
        if (hd.status != SearchStatus::Found) {
            out.status = hd.status;
            why = "remainder hamilton decomposition: " + std::string(to_string(hd.status));
            return {};
        }
        return cycles_restricted(hd.cycles, g1, n);
    };
    auto route_tail = [&](const SimpleGraph& g2, int r, std::string& why) -> std::vector<LinearForest> {
        check_regular(g2, r, "case3");
        auto rr = la_regular_expander(g2, params.budget, std::max(params.cap, g2.size()));
        if (rr.status != SearchStatus::Found) {
            out.status = rr.status;
            why = "remainder regular route: " + rr.note;
            return {};
        }
        return forests_restricted(rr.forests, g1, n);
    };

    std::vector<LinearForest> tail;
    std::string why;
    if (!godd) {
        // even gap: classes {min, min+1}; lift the low class by one
        const int c = (static_cast<int>(aset.size()) - (dmin + 1 + (dmin % 2 == 0 && n % 2 == 0 ? 1 : 0))) / 2;
        if (dmin % 2 == 1) {
            if ((static_cast<int>(aset.size()) - (dmin + 1)) % 2 != 0)
                throw std::logic_error("case3: low class parity (even gap, odd minimum)");
            if (c < 0) {
                out.why = "low class smaller than the apex degree";
                return out;
            }
            auto pairs = take_pairs(c);
            if (static_cast<int>(pairs.size()) < c) {
                out.why = "not enough interior pairs";
                return out;
            }
            SimpleGraph g2 = g1;
            for (const auto& e : pairs) g2.add_edge(e.first, e.second);
            add_apex_at(g2, dmin);
            tail = hamilton_tail(g2, dmin + 1, why);
        } else if (n % 2 == 1) {
            if ((static_cast<int>(aset.size()) - (dmin + 1)) % 2 != 0)
                throw std::logic_error("case3: low class parity (even gap, even minimum, odd order)");
            const int c1 = (static_cast<int>(aset.size()) - (dmin + 1)) / 2;
            if (c1 < 0) {
                out.why = "low class smaller than the apex degree";
                return out;
            }
            auto pairs = take_pairs(c1);
            if (static_cast<int>(pairs.size()) < c1) {
                out.why = "not enough interior pairs";
                return out;
            }
            SimpleGraph g2 = g1;
            for (const auto& e : pairs) g2.add_edge(e.first, e.second);
            add_apex_at(g2, dmin);
            tail = route_tail(g2, dmin + 1, why);
        } else {
            // even minimum and even order: two apexes via a complement matching
            if ((static_cast<int>(aset.size()) - (dmin + 2)) % 2 != 0)
                throw std::logic_error("case3: low class parity (even gap, even minimum, even order)");
            const int c1 = (static_cast<int>(aset.size()) - (dmin + 2)) / 2;
            if (c1 < 0) {
                out.why = "low class smaller than the apex degree";
                return out;
            }
            auto pairs = take_pairs(c1);
            if (static_cast<int>(pairs.size()) < c1) {
                out.why = "not enough interior pairs";
                return out;
            }
            SimpleGraph g2 = g1;
            for (const auto& e : pairs) g2.add_edge(e.first, e.second);
            const int x = add_apex_at(g2, dmin);
            int special = -1;
            Matching comp;
            try {
                comp = complement_matching_almost_regular(g2, &special);
            } catch (const std::invalid_argument& ex) {
                out.why = std::string("complement matching: ") + ex.what();
                return out;
            }
            if (special != x) throw std::logic_error("case3: complement matching picked the wrong high vertex");
            if ((n - dmin - 2) % 2 != 0) throw std::logic_error("case3: complement matching size parity");
            const int need = (n - dmin - 2) / 2;
            if (static_cast<int>(comp.edges.size()) < need) {
                out.why = "complement matching too small";
                return out;
            }
            auto m2 = normalized_sorted(comp.edges);
            m2.resize(need);
            for (const auto& e : m2) g2.add_edge(e.first, e.second);
            add_apex_at(g2, dmin + 1);
            tail = hamilton_tail(g2, dmin + 2, why);
        }
    } else {
        // odd gap: the first path's interior sits one below the minimum
        if (dmin % 2 == 0) {
            if ((static_cast<int>(aset.size()) - dmin) % 2 != 0)
                throw std::logic_error("case3: low class parity (odd gap, even minimum)");
            const int c = (static_cast<int>(aset.size()) - dmin) / 2;
            if (c < 0) {
                out.why = "low class smaller than the apex degree";
                return out;
            }
            auto pairs = take_pairs(c);
            if (static_cast<int>(pairs.size()) < c) {
                out.why = "not enough interior pairs";
                return out;
            }
            SimpleGraph g2 = g1;
            for (const auto& e : pairs) g2.add_edge(e.first, e.second);
            add_apex_at(g2, dmin - 1);
            tail = hamilton_tail(g2, dmin, why);
        } else if (n % 2 == 0) {
            // the interior pairs alone finish the job
            if (static_cast<int>(aset.size()) % 2 != 0)
                throw std::logic_error("case3: low class parity (odd gap, odd minimum, even order)");
            const int c = static_cast<int>(aset.size()) / 2;
            auto pairs = take_pairs(c);
            if (static_cast<int>(pairs.size()) < c) {
                out.why = "not enough interior pairs";
                return out;
            }
            SimpleGraph g2 = g1;
            for (const auto& e : pairs) g2.add_edge(e.first, e.second);
            tail = route_tail(g2, dmin, why);
        } else {
            // odd minimum and odd order: tile all but the last interior
            // vertex, borrow the first path's final edge to lift it together
            // with the path's last endpoint, then a complement matching and
            // one apex reach an even regular degree
            if (static_cast<int>(aset.size()) % 2 != 1)
                throw std::logic_error("case3: low class parity (odd gap, odd minimum, odd order)");
            const int c1 = (static_cast<int>(aset.size()) - 1) / 2;
            auto pairs = take_pairs(c1);
            if (static_cast<int>(pairs.size()) < c1) {
                out.why = "not enough interior pairs";
                return out;
            }
            SimpleGraph g2 = g1;
            for (const auto& e : pairs) g2.add_edge(e.first, e.second);
            g2.add_edge(seq[p - 2], seq[p - 1]);
            int special = -1;
            Matching comp;
            try {
                comp = complement_matching_almost_regular(g2, &special);
            } catch (const std::invalid_argument& ex) {
                out.why = std::string("complement matching: ") + ex.what();
                return out;
            }
            if (special != seq[p - 1])
                throw std::logic_error("case3: complement matching picked the wrong high vertex");
            if ((n - dmin - 2) % 2 != 0) throw std::logic_error("case3: complement matching size parity");
            const int need = (n - dmin - 2) / 2;
            if (static_cast<int>(comp.edges.size()) < need) {
                out.why = "complement matching too small";
                return out;
            }
            auto m2 = normalized_sorted(comp.edges);
            m2.resize(need);
            for (const auto& e : m2) g2.add_edge(e.first, e.second);
            add_apex_at(g2, dmin);
            tail = hamilton_tail(g2, dmin + 1, why);
        }
    }
    if (!why.empty()) {
        out.why = why;
        return out;
    }
    forests.insert(forests.end(), tail.begin(), tail.end());
    out.forests = std::move(forests);
    out.status = SearchStatus::Found;
    return out;
}

}  // namespace detail

// ========================= case pipeline ==========================

// Classifies the input (after joining all pairs of sub-maximum vertices) into
// one of three regimes by the size of its degree classes and runs the
// matching construction.  Regular inputs belong to the regular route; if the
// completion itself becomes regular, that route is used internally.
inline PipelineResult theorem31_decompose(const SimpleGraph& g, const PipelineParams& params = {}) {
    if (is_regular(g)) throw std::invalid_argument("case pipeline: regular input belongs to the regular route");
    PipelineResult out;
    detail::stamp_params(out.trace, params);
    const int n = g.size();
    detail::snapshot(out.trace, "input", g);
    SimpleGraph gc = g;
    out.trace.added_clique_edges = detail::complete_subdelta(gc);
    detail::snapshot(out.trace, "completed", gc);
    if (!out.trace.added_clique_edges.empty())
        detail::note(out.trace,
                     "completion added " + std::to_string(out.trace.added_clique_edges.size()) + " edges");

    auto finish = [&](std::vector<LinearForest> fs, Route route) -> PipelineResult& {
        out.trace.route = route;
        fs = detail::strip_edges(std::move(fs), out.trace.added_clique_edges);
        detail::drop_empty(fs);
        auto rep = validate_decomposition(g, fs);
        if (!rep.ok) throw std::logic_error("case pipeline: invalid decomposition: " + rep.reason);
        if (static_cast<int>(fs.size()) > forest_target(max_degree(g)))
            throw std::logic_error("case pipeline: forest count exceeds the target");
        out.forests = std::move(fs);
        out.status = SearchStatus::Found;
        return out;
    };

    if (is_regular(gc)) {
        detail::note(out.trace, "completion is regular; finishing on the regular route");
        auto rr = la_regular_expander(gc, params.budget, std::max(params.cap, n));
        if (rr.status == SearchStatus::Found) return finish(std::move(rr.forests), Route::regular_route);
        out.status = rr.status;
        out.reason = "regular completion: " + rr.note;
        return out;
    }

    const auto cls = vertex_classes(gc, params.eta);
    if (2 * static_cast<int>(cls.v_max.size()) <= n)
        throw std::logic_error("case pipeline: completion left the maximum-degree class in the minority");
    const bool u_big = count_at_least(static_cast<long long>(cls.u.size()), params.eta, n);
    const bool lows_big =
        count_at_least(static_cast<long long>(cls.v_min.size() + cls.v_min_plus1.size()), params.eta, n);
    const bool gap_big = count_at_least(cls.gap, params.eta, n);
    detail::note(out.trace, "classes: far-below " + std::to_string(cls.u.size()) + ", bottom " +
                                std::to_string(cls.v_min.size() + cls.v_min_plus1.size()) + ", middle " +
                                std::to_string(cls.w.size()) + ", spread " + std::to_string(cls.gap));

    detail::CaseOutcome res;
    if (u_big || (gap_big && lows_big)) {
        out.trace.route = Route::case1;
        res = detail::case1_route(gc, params, out.trace);
        if (res.status == SearchStatus::Found) return finish(std::move(res.forests), Route::case1);
    } else if ((cls.gap <= 2 && cls.w.size() >= 2) || (cls.gap > 1 && lows_big)) {
        out.trace.route = Route::case2;
        res = detail::case2_route(gc, params, out.trace);
        if (res.status == SearchStatus::Found) return finish(std::move(res.forests), Route::case2);
    } else if (cls.w.size() <= 1) {
        out.trace.route = Route::case3;
        res = detail::case3_route(gc, cls, params, out.trace);
        if (res.status == SearchStatus::Found) return finish(std::move(res.forests), Route::case3);
    } else {
        out.reason = "no case condition matched";
        return out;
    }
    out.status = res.status;
    out.reason = to_string(out.trace.route) + ": " + res.why;
    return out;
}

// ========================= reduction loop ==========================

struct ReductionStep {
    int x = -1, y = -1;            // chosen endpoints
    int xprime = -1, yprime = -1;  // their anchors inside the base host
    std::vector<int> spliced;               // vertices routed through the host
    std::vector<std::array<int, 2>> arms;   // host attachment pair per spliced vertex
    std::vector<int> d_after;      // planned degree of every vertex after the step
    int g_after = 0;
    std::vector<int> u_set, v_set, z_set, w_set;  // classes after the step
    std::vector<int> span;         // vertices the path must cover, sorted
    Layout layout;                 // host-local layout handed to the packer
};

struct ReductionResult {
    SearchStatus status = SearchStatus::None;
    std::vector<LinearForest> paths;
    SimpleGraph residual;
    std::vector<ReductionStep> steps;
    std::vector<int> host_ids;  // base host vertices, original ids
    PipelineTrace trace;
    std::string reason;
};

// Shrinks the degree spread two at a time: while the spread is at least 3 and
// at least two middle vertices exist (and the far-below/bottom classes stay
// small), remove one Hamilton path whose endpoints are the two lowest middle
// vertices.  Paths are laid out as cycles inside the base host fixed by the
// step-0 classes; outside vertices ride along through forced pairs that are
// later replaced by two-edge splices.  Helper edges are never reused and each
// host vertex serves as an anchor or arm only while its usage count squared
// stays below eta * n^2, and as a connector at most twice.
inline ReductionResult theorem14_reduction(const SimpleGraph& g, const PipelineParams& params = {}) {
    ReductionResult out;
    out.trace.route = Route::theorem14_reduction;
    detail::stamp_params(out.trace, params);
    const int n = g.size();
    out.residual = g;
    detail::snapshot(out.trace, "input", g);
    if (n == 0) {
        out.status = SearchStatus::Found;
        return out;
    }
    const int dmax = max_degree(g), dmin = min_degree(g);
    std::vector<int> d(n);
    for (int v = 0; v < n; ++v) d[v] = g.degree(v);

    auto far_below = [&](const std::vector<int>& dv, int i, int v) {
        return count_at_least(dmax - 2 * i - dv[v], params.eta, n);
    };

    // the base host: step-0 classes are frozen so every later layout lives in
    // one fixed graph and the packing can be solved once at the end
    std::vector<char> in_host(n, 1);
    for (int v = 0; v < n; ++v)
        if (far_below(d, 0, v) || d[v] == dmin || d[v] == dmin + 1) in_host[v] = 0;
    for (int v = 0; v < n; ++v)
        if (in_host[v]) out.host_ids.push_back(v);
    std::vector<int> hpos(n, -1);
    for (size_t i = 0; i < out.host_ids.size(); ++i) hpos[out.host_ids[i]] = static_cast<int>(i);
    SimpleGraph host = g.induced(out.host_ids);

    std::vector<char> helper_used(static_cast<size_t>(n) * n, 0);
    auto used = [&](int a, int b) -> char& {
        return helper_used[static_cast<size_t>(std::min(a, b)) * n + std::max(a, b)];
    };
    std::vector<long long> quota(n, 0);
    std::vector<int> conn(n, 0);
    auto quota_ok = [&](int v) {
        const long long c = quota[v] + 1;
        return c * c * params.eta.den <= params.eta.num * static_cast<long long>(n) * n;
    };

    int gap = dmax - dmin;
    int iter = 0;
    std::vector<Layout> lays;
    while (true) {
        std::vector<char> uf(n, 0), vf(n, 0), zf(n, 0), wf(n, 0);
        std::vector<int> wlist;
        long long unionsz = 0;
        for (int v = 0; v < n; ++v) {
            if (far_below(d, iter, v)) uf[v] = 1;
            if (d[v] == dmin) vf[v] = 1;
            if (d[v] == dmin + 1) zf[v] = 1;
            if (d[v] > dmin && d[v] < dmax - 2 * iter) {
                wf[v] = 1;
                wlist.push_back(v);
            }
            if (uf[v] || vf[v] || zf[v]) ++unionsz;
        }
        if (gap < 3 || wlist.size() < 2) break;
        if (count_at_least(unionsz, params.eta, n)) break;

        const int x = wlist[0], y = wlist[1];
        ReductionStep rs;
        rs.x = x;
        rs.y = y;
        std::vector<char> region(n, 0);
        for (int v = 0; v < n; ++v) region[v] = !(uf[v] || vf[v] || zf[v]);
        for (int v = 0; v < n; ++v)
            if (region[v] || v == x || v == y) rs.span.push_back(v);

        auto anchor = [&](int end, int avoid) -> int {
            if (in_host[end]) return end;
            for (int hv : out.host_ids) {
                if (vf[hv] || zf[hv] || hv == avoid) continue;
                if (!g.has_edge(end, hv) || used(end, hv) || !quota_ok(hv)) continue;
                return hv;
            }
            return -1;
        };
        const int xp = anchor(x, in_host[y] ? y : -1);
        if (xp == -1) {
            out.status = SearchStatus::None;
            out.reason = "step " + std::to_string(iter + 1) + ": no anchor for the first endpoint";
            return out;
        }
        const int yp = anchor(y, xp);
        if (yp == -1) {
            out.status = SearchStatus::None;
            out.reason = "step " + std::to_string(iter + 1) + ": no anchor for the second endpoint";
            return out;
        }
        if (xp != x) used(x, xp) = 1;
        if (yp != y) used(y, yp) = 1;
        ++quota[xp];
        ++quota[yp];
        rs.xprime = xp;
        rs.yprime = yp;

        std::vector<char> armed(n, 0);
        for (int z = 0; z < n; ++z) {
            if (!region[z] || in_host[z] || z == x || z == y) continue;
            int a1 = -1, a2 = -1;
            for (int hv : out.host_ids) {
                if (vf[hv] || zf[hv] || hv == xp || hv == yp || armed[hv]) continue;
                if (!g.has_edge(z, hv) || used(z, hv) || !quota_ok(hv)) continue;
                if (a1 == -1) {
                    a1 = hv;
                } else {
                    a2 = hv;
                    break;
                }
            }
            if (a2 == -1) {
                out.status = SearchStatus::None;
                out.reason = "step " + std::to_string(iter + 1) + ": no attachment pair for vertex " +
                             std::to_string(z);
                return out;
            }
            armed[a1] = armed[a2] = 1;
            used(z, a1) = used(z, a2) = 1;
            ++quota[a1];
            ++quota[a2];
            rs.spliced.push_back(z);
            rs.arms.push_back({a1, a2});
        }

        std::vector<Edge> comps{make_edge(xp, yp)};
        for (const auto& a : rs.arms) comps.push_back(make_edge(a[0], a[1]));
        std::sort(comps.begin(), comps.end());
        std::vector<char> infi(n, 0);
        for (const auto& c : comps) infi[c.first] = infi[c.second] = 1;
        int v1 = -1, v2 = -1;
        for (int hv : out.host_ids) {
            if (infi[hv] || vf[hv] || zf[hv] || conn[hv] >= 2) continue;
            if (v1 == -1) {
                v1 = hv;
            } else {
                v2 = hv;
                break;
            }
        }
        if (v2 == -1) {
            out.status = SearchStatus::None;
            out.reason = "step " + std::to_string(iter + 1) + ": connector supply exhausted";
            return out;
        }
        ++conn[v1];
        ++conn[v2];

        Layout lay;
        std::vector<int> main{hpos[v1]};
        for (const auto& c : comps) {
            main.push_back(hpos[c.first]);
            main.push_back(hpos[c.second]);
        }
        main.push_back(hpos[v2]);
        lay.paths = {main, {hpos[v2], hpos[v1]}};
        for (const auto& c : comps) lay.forced.push_back(make_edge(hpos[c.first], hpos[c.second]));
        for (int hv : out.host_ids)
            if ((vf[hv] || zf[hv]) && hv != x && hv != y) lay.isolated.push_back(hpos[hv]);
        rs.layout = lay;
        lays.push_back(std::move(lay));

        for (int v = 0; v < n; ++v)
            if (region[v] && v != x && v != y) d[v] -= 2;
        --d[x];
        --d[y];
        gap -= 2;
        ++iter;
        rs.d_after = d;
        rs.g_after = gap;
        for (int v = 0; v < n; ++v) {
            if (far_below(d, iter, v)) rs.u_set.push_back(v);
            if (d[v] == dmin) rs.v_set.push_back(v);
            if (d[v] == dmin + 1) rs.z_set.push_back(v);
            if (d[v] > dmin && d[v] < dmax - 2 * iter) rs.w_set.push_back(v);
        }
        detail::note(out.trace, "step " + std::to_string(iter) + ": endpoints " + std::to_string(x) + "," +
                                    std::to_string(y) + " with " + std::to_string(rs.spliced.size()) + " splices");
        out.steps.push_back(std::move(rs));
    }

    if (out.steps.empty()) {
        out.status = SearchStatus::Found;
        detail::note(out.trace, "no reduction step applicable");
        return out;
    }
    auto solved = edge_disjoint_spanning_configs(host, lays, params.budget);
    if (solved.status != SearchStatus::Found) {
        out.status = solved.status;
        out.reason = "path packing " + std::string(to_string(solved.status)) + " near step " +
                     std::to_string(solved.stuck_layout + 1);
        return out;
    }
    for (size_t si = 0; si < out.steps.size(); ++si) {
        const auto& rs = out.steps[si];
        const auto& cfg = solved.configs[si];
        std::vector<Edge> edges;
        for (size_t j = 0; j < cfg.layout_edges.size(); ++j) {
            if (cfg.forced[j]) continue;
            for (const auto& e : path_edges(cfg.realized[j]))
                edges.push_back(make_edge(out.host_ids[e.first], out.host_ids[e.second]));
        }
        if (rs.xprime != rs.x) edges.push_back(make_edge(rs.x, rs.xprime));
        if (rs.yprime != rs.y) edges.push_back(make_edge(rs.y, rs.yprime));
        for (size_t zi = 0; zi < rs.spliced.size(); ++zi) {
            edges.push_back(make_edge(rs.spliced[zi], rs.arms[zi][0]));
            edges.push_back(make_edge(rs.spliced[zi], rs.arms[zi][1]));
        }
        std::sort(edges.begin(), edges.end());
        detail::check_spanning_path(n, edges, rs.span, rs.x, rs.y, "reduction path " + std::to_string(si + 1));
        for (const auto& e : edges) out.residual.remove_edge(e.first, e.second);
        LinearForest f{std::move(edges)};
        out.paths.push_back(f);
        detail::record_removed(out.trace, f);
        detail::snapshot(out.trace, "after step " + std::to_string(si + 1), out.residual);
        for (int v = 0; v < n; ++v)
            if (out.residual.degree(v) != rs.d_after[v])
                throw std::logic_error("reduction: planned degree mismatch at vertex " + std::to_string(v) +
                                       " after step " + std::to_string(si + 1));
    }
    if (max_degree(out.residual) != dmax - 2 * static_cast<int>(out.steps.size()) ||
        min_degree(out.residual) != dmin)
        throw std::logic_error("reduction: residual degree envelope mismatch");
    out.status = SearchStatus::Found;
    return out;
}

// ============================ dispatcher ===========================

enum class Strategy { Auto, Oracle, Pipeline };

inline std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Auto: return "auto";
        case Strategy::Oracle: return "oracle";
        case Strategy::Pipeline: return "pipeline";
    }
    return "?";
}

struct DecomposeOptions {
    Strategy strategy = Strategy::Auto;
    PipelineParams params{};
    int oracle_cap = 12;
};

struct DecomposeOutcome {
    SearchStatus status = SearchStatus::None;
    bool success = false;  // validated and within ceil((max degree + 1) / 2)
    int count = 0;
    int bound = 0;
    Route route = Route::exact_oracle;
    std::vector<LinearForest> forests;
    PipelineTrace trace;
    std::string reason;
};

namespace detail {

inline void merge_trace(PipelineTrace& dst, const PipelineTrace& src) {
    dst.removed_forests.insert(dst.removed_forests.end(), src.removed_forests.begin(), src.removed_forests.end());
    dst.snapshots.insert(dst.snapshots.end(), src.snapshots.begin(), src.snapshots.end());
    dst.added_clique_edges.insert(dst.added_clique_edges.end(), src.added_clique_edges.begin(),
                                  src.added_clique_edges.end());
    dst.notes.insert(dst.notes.end(), src.notes.begin(), src.notes.end());
}

}  // namespace detail

// Top-level routing: regular inputs go to the regular route; everything else
// runs the reduction loop and then the case pipeline on its residual.  On any
// failure the exact solver (within its cap) and finally the greedy bound take
// over, so a decomposition always comes back and the status stays honest.
inline DecomposeOutcome decompose(const SimpleGraph& g, const DecomposeOptions& opt = {}) {
    DecomposeOutcome out;
    out.bound = forest_target(max_degree(g));
    detail::stamp_params(out.trace, opt.params);

    auto deliver = [&](std::vector<LinearForest> fs, Route route, SearchStatus st) -> DecomposeOutcome& {
        detail::drop_empty(fs);
        auto rep = validate_decomposition(g, fs);
        if (!rep.ok) throw std::logic_error("dispatcher: invalid decomposition: " + rep.reason);
        out.forests = std::move(fs);
        out.count = static_cast<int>(out.forests.size());
        out.route = route;
        out.trace.route = route;
        out.success = out.count <= out.bound;
        // A validated decomposition within the target bound is a complete
        // answer no matter which route produced it; anything larger keeps the
        // caller's status so budget exhaustion stays visible.
        out.status = out.success ? SearchStatus::Found : st;
        if (!out.success && out.reason.empty())
            out.reason = "best decomposition uses " + std::to_string(out.count) + " forests, above the target " +
                         std::to_string(out.bound);
        return out;
    };

    if (g.edge_count() == 0) return deliver({}, Route::exact_oracle, SearchStatus::Found);

    if (opt.strategy == Strategy::Oracle) {
        auto ex = la_exact(g, opt.params.budget, opt.oracle_cap);
        if (ex.status == SearchStatus::Found) return deliver(std::move(ex.forests), Route::exact_oracle, ex.status);
        out.reason = "exact search exhausted its budget; greedy upper bound returned";
        return deliver(std::move(ex.forests), Route::exact_oracle, SearchStatus::Unknown);
    }

    std::string reasons;
    if (is_regular(g)) {
        auto rr = la_regular_expander(g, opt.params.budget, std::max(opt.params.cap, g.size()));
        if (rr.status == SearchStatus::Found) return deliver(std::move(rr.forests), Route::regular_route, rr.status);
        reasons = "regular route: " + rr.note;
    } else {
        auto red = theorem14_reduction(g, opt.params);
        out.trace = red.trace;
        if (red.status == SearchStatus::Found) {
            std::vector<LinearForest> fs = red.paths;
            if (is_regular(red.residual)) {
                auto rr = la_regular_expander(red.residual, opt.params.budget,
                                              std::max(opt.params.cap, red.residual.size()));
                if (rr.status == SearchStatus::Found) {
                    detail::note(out.trace, "residual is regular; finished on the regular route");
                    fs.insert(fs.end(), rr.forests.begin(), rr.forests.end());
                    return deliver(std::move(fs),
                                   red.steps.empty() ? Route::regular_route : Route::theorem14_reduction,
                                   SearchStatus::Found);
                }
                reasons = "regular residual: " + rr.note;
            } else {
                auto pr = theorem31_decompose(red.residual, opt.params);
                detail::merge_trace(out.trace, pr.trace);
                if (pr.status == SearchStatus::Found) {
                    fs.insert(fs.end(), pr.forests.begin(), pr.forests.end());
                    return deliver(std::move(fs),
                                   red.steps.empty() ? pr.trace.route : Route::theorem14_reduction,
                                   SearchStatus::Found);
                }
                reasons = "case pipeline: " + (pr.reason.empty() ? std::string(to_string(pr.status)) : pr.reason);
            }
        } else {
            reasons = "reduction: " + (red.reason.empty() ? std::string(to_string(red.status)) : red.reason);
        }
    }

    if (opt.strategy == Strategy::Pipeline) {
        out.status = SearchStatus::None;
        out.reason = reasons;
        return out;
    }
    if (g.size() <= opt.oracle_cap) {
        auto ex = la_exact(g, opt.params.budget, opt.oracle_cap);
        if (ex.status == SearchStatus::Found) {
            out.reason = reasons + "; fell back to the exact solver";
            return deliver(std::move(ex.forests), Route::exact_oracle, SearchStatus::Found);
        }
        reasons += "; exact fallback exhausted its budget";
    }
    out.reason = reasons + "; greedy upper bound returned";
    return deliver(greedy_linear_forests(g), Route::exact_oracle, SearchStatus::Unknown);
}

}  // namespace linforest
