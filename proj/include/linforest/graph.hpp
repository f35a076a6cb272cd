#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace linforest {

using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("edge: loop " + std::to_string(u));
    return u < v ? Edge{u, v} : Edge{v, u};
}

// Undirected simple graph, adjacency lists kept sorted.
class SimpleGraph {
  public:
    SimpleGraph() : n_(0), m_(0) {}
    explicit SimpleGraph(int n) : n_(n), m_(0), adj_(n) {
        if (n < 0) throw std::invalid_argument("graph: negative order");
    }

    static SimpleGraph from_edges(int n, const std::vector<Edge>& edges) {
        SimpleGraph g(n);
        for (const auto& e : edges) g.add_edge(e.first, e.second);
        return g;
    }

    int size() const { return n_; }
    long long edge_count() const { return m_; }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("graph: vertex " + std::to_string(v));
    }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v) return false;
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("graph: loop at " + std::to_string(u));
        if (has_edge(u, v)) throw std::invalid_argument("graph: duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        insert_sorted(adj_[u], v);
        insert_sorted(adj_[v], u);
        ++m_;
    }

    void remove_edge(int u, int v) {
        if (!has_edge(u, v)) throw std::invalid_argument("graph: missing edge " + std::to_string(u) + "-" + std::to_string(v));
        erase_sorted(adj_[u], v);
        erase_sorted(adj_[v], u);
        --m_;
    }

    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const {
        check_vertex(v);
        return static_cast<int>(adj_[v].size());
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<size_t>(m_));
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[u])
                if (u < v) out.push_back({u, v});
        return out;
    }

    // Adds an isolated vertex, returns its id.
    int add_vertex() {
        adj_.emplace_back();
        return n_++;
    }

    SimpleGraph complement() const {
        SimpleGraph g(n_);
        for (int u = 0; u < n_; ++u) {
            size_t k = 0;
            const auto& a = adj_[u];
            for (int v = u + 1; v < n_; ++v) {
                while (k < a.size() && a[k] < v) ++k;
                if (k < a.size() && a[k] == v) continue;
                g.add_edge(u, v);
            }
        }
        return g;
    }

    // Subgraph induced on verts (kept order defines new ids); old_ids, if
    // given, receives the mapping new id -> old id.
    SimpleGraph induced(const std::vector<int>& verts, std::vector<int>* old_ids = nullptr) const {
        std::vector<int> pos(n_, -1);
        for (size_t i = 0; i < verts.size(); ++i) {
            check_vertex(verts[i]);
            if (pos[verts[i]] != -1) throw std::invalid_argument("induced: repeated vertex");
            pos[verts[i]] = static_cast<int>(i);
        }
        SimpleGraph g(static_cast<int>(verts.size()));
        for (size_t i = 0; i < verts.size(); ++i)
            for (int w : adj_[verts[i]])
                if (pos[w] > static_cast<int>(i)) g.add_edge(static_cast<int>(i), pos[w]);
        if (old_ids) *old_ids = verts;
        return g;
    }

    SimpleGraph without_vertex(int v) const {
        check_vertex(v);
        std::vector<int> keep;
        keep.reserve(n_ - 1);
        for (int u = 0; u < n_; ++u)
            if (u != v) keep.push_back(u);
        return induced(keep);
    }

    bool operator==(const SimpleGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

  private:
    static void insert_sorted(std::vector<int>& a, int v) {
        a.insert(std::lower_bound(a.begin(), a.end(), v), v);
    }
    static void erase_sorted(std::vector<int>& a, int v) {
        a.erase(std::lower_bound(a.begin(), a.end(), v));
    }

    int n_;
    long long m_;
    std::vector<std::vector<int>> adj_;
};

// Loopless multigraph: parallel edges allowed, stored as an edge list.
class MultiGraph {
  public:
    MultiGraph() : n_(0) {}
    explicit MultiGraph(int n) : n_(n), deg_(n, 0) {
        if (n < 0) throw std::invalid_argument("multigraph: negative order");
    }

    int size() const { return n_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("multigraph: vertex " + std::to_string(v));
    }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        edges_.push_back(make_edge(u, v));
        ++deg_[u];
        ++deg_[v];
    }

    int degree(int v) const {
        check_vertex(v);
        return deg_[v];
    }

    int multiplicity(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v) return 0;
        Edge e = make_edge(u, v);
        int c = 0;
        for (const auto& f : edges_)
            if (f == e) ++c;
        return c;
    }

    int max_multiplicity() const {
        auto sorted = edges_;
        std::sort(sorted.begin(), sorted.end());
        int best = sorted.empty() ? 0 : 1, run = 1;
        for (size_t i = 1; i < sorted.size(); ++i) {
            run = (sorted[i] == sorted[i - 1]) ? run + 1 : 1;
            best = std::max(best, run);
        }
        return best;
    }

    int max_degree() const { return deg_.empty() ? 0 : *std::max_element(deg_.begin(), deg_.end()); }

    const std::vector<Edge>& edges() const { return edges_; }

    // Distinct endpoints graph (parallel edges collapsed).
    SimpleGraph underlying_simple() const {
        SimpleGraph g(n_);
        for (const auto& e : edges_)
            if (!g.has_edge(e.first, e.second)) g.add_edge(e.first, e.second);
        return g;
    }

  private:
    int n_;
    std::vector<int> deg_;
    std::vector<Edge> edges_;
};

// Directed multigraph (orientations of multigraphs produce parallel arcs).
class DiGraph {
  public:
    DiGraph() : n_(0), arcs_(0) {}
    explicit DiGraph(int n) : n_(n), arcs_(0), out_(n), in_(n) {
        if (n < 0) throw std::invalid_argument("digraph: negative order");
    }

    int size() const { return n_; }
    long long arc_count() const { return arcs_; }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("digraph: vertex " + std::to_string(v));
    }

    void add_arc(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("digraph: loop at " + std::to_string(u));
        out_[u].push_back(v);
        in_[v].push_back(u);
        ++arcs_;
    }

    int out_degree(int v) const { check_vertex(v); return static_cast<int>(out_[v].size()); }
    int in_degree(int v) const { check_vertex(v); return static_cast<int>(in_[v].size()); }
    const std::vector<int>& out_neighbors(int v) const { check_vertex(v); return out_[v]; }
    const std::vector<int>& in_neighbors(int v) const { check_vertex(v); return in_[v]; }

  private:
    int n_;
    long long arcs_;
    std::vector<std::vector<int>> out_, in_;
};

struct DegreeProfile {
    int max_degree = 0;
    int min_degree = 0;
    std::vector<int> degrees;  // sorted non-decreasing, d(v1) <= ... <= d(vn)
};

inline DegreeProfile degree_profile(const SimpleGraph& g) {
    DegreeProfile p;
    p.degrees.resize(g.size());
    for (int v = 0; v < g.size(); ++v) p.degrees[v] = g.degree(v);
    std::sort(p.degrees.begin(), p.degrees.end());
    if (!p.degrees.empty()) {
        p.min_degree = p.degrees.front();
        p.max_degree = p.degrees.back();
    }
    return p;
}

// Vertices ordered by (degree, index) ascending: the ordering v_1..v_n with
// d(v_1) <= ... <= d(v_n), ties broken by vertex index.
inline std::vector<int> degree_order(const SimpleGraph& g) {
    std::vector<int> ord(g.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
    return ord;
}

inline int max_degree(const SimpleGraph& g) {
    int d = 0;
    for (int v = 0; v < g.size(); ++v) d = std::max(d, g.degree(v));
    return d;
}

inline int min_degree(const SimpleGraph& g) {
    if (g.size() == 0) return 0;
    int d = g.degree(0);
    for (int v = 1; v < g.size(); ++v) d = std::min(d, g.degree(v));
    return d;
}

inline bool is_regular(const SimpleGraph& g) {
    return g.size() == 0 || max_degree(g) == min_degree(g);
}

// ceil((d+1)/2): the conjectured number of linear forests for max degree d.
inline int forest_target(int d) { return (d + 2) / 2; }

// Degree classes V_delta, V_{delta+1}, V_Delta, W = V \ (V_delta u V_Delta),
// U = vertices at least eta*n below the maximum degree; gap = Delta - delta.
struct VertexClasses {
    std::vector<int> v_min;        // degree = delta
    std::vector<int> v_min_plus1;  // degree = delta + 1
    std::vector<int> v_max;        // degree = Delta
    std::vector<int> w;            // delta < degree < Delta
    std::vector<int> u;            // Delta - degree >= eta * n
    int gap = 0;
};

inline VertexClasses vertex_classes(const SimpleGraph& g, const Rational& eta) {
    VertexClasses c;
    int n = g.size();
    if (n == 0) return c;
    int dmax = max_degree(g), dmin = min_degree(g);
    c.gap = dmax - dmin;
    for (int v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d == dmin) c.v_min.push_back(v);
        if (d == dmin + 1) c.v_min_plus1.push_back(v);
        if (d == dmax) c.v_max.push_back(v);
        if (d > dmin && d < dmax) c.w.push_back(v);
        if (count_at_least(dmax - d, eta, n)) c.u.push_back(v);
    }
    return c;
}

// Disjoint set union with union by size; used for forest/cycle detection.
struct Dsu {
    std::vector<int> parent, sz;
    explicit Dsu(int n) : parent(n), sz(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (sz[a] < sz[b]) std::swap(a, b);
        parent[b] = a;
        sz[a] += sz[b];
        return true;
    }
};

struct LinearForest {
    std::vector<Edge> edges;
};

// degrees <= 2 and acyclic, i.e. a vertex-disjoint union of paths.
inline bool is_linear_forest(int n, const std::vector<Edge>& edges, std::string* why = nullptr) {
    std::vector<int> deg(n, 0);
    Dsu dsu(n);
    std::vector<Edge> seen = edges;
    std::sort(seen.begin(), seen.end());
    for (size_t i = 1; i < seen.size(); ++i)
        if (seen[i] == seen[i - 1]) {
            if (why) *why = "repeated edge " + std::to_string(seen[i].first) + "-" + std::to_string(seen[i].second);
            return false;
        }
    for (const auto& e : edges) {
        if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n || e.first == e.second) {
            if (why) *why = "bad endpoint";
            return false;
        }
        if (++deg[e.first] > 2) {
            if (why) *why = "degree 3 at vertex " + std::to_string(e.first);
            return false;
        }
        if (++deg[e.second] > 2) {
            if (why) *why = "degree 3 at vertex " + std::to_string(e.second);
            return false;
        }
        if (!dsu.unite(e.first, e.second)) {
            if (why) *why = "cycle through " + std::to_string(e.first) + "-" + std::to_string(e.second);
            return false;
        }
    }
    return true;
}

struct ValidationReport {
    bool ok = true;
    std::string reason;
};

// Every forest is a linear forest of g, every edge of g appears in exactly
// one forest, and no foreign or repeated edges appear anywhere.
inline ValidationReport validate_decomposition(const SimpleGraph& g, const std::vector<LinearForest>& forests) {
    ValidationReport r;
    std::vector<Edge> all;
    for (size_t i = 0; i < forests.size(); ++i) {
        std::string why;
        if (!is_linear_forest(g.size(), forests[i].edges, &why)) {
            r.ok = false;
            r.reason = "forest " + std::to_string(i) + ": " + why;
            return r;
        }
        for (const auto& e : forests[i].edges) {
            if (!g.has_edge(e.first, e.second)) {
                r.ok = false;
                r.reason = "forest " + std::to_string(i) + ": edge " + std::to_string(e.first) + "-" +
                           std::to_string(e.second) + " not in host graph";
                return r;
            }
            all.push_back(make_edge(e.first, e.second));
        }
    }
    std::sort(all.begin(), all.end());
    for (size_t i = 1; i < all.size(); ++i)
        if (all[i] == all[i - 1]) {
            r.ok = false;
            r.reason = "repeated edge " + std::to_string(all[i].first) + "-" + std::to_string(all[i].second) +
                       " across forests";
            return r;
        }
    if (static_cast<long long>(all.size()) != g.edge_count()) {
        auto ge = g.edges();
        std::sort(ge.begin(), ge.end());
        std::vector<Edge> missing;
        std::set_difference(ge.begin(), ge.end(), all.begin(), all.end(), std::back_inserter(missing));
        r.ok = false;
        if (!missing.empty())
            r.reason = "missing edge " + std::to_string(missing[0].first) + "-" + std::to_string(missing[0].second);
        else
            r.reason = "edge count mismatch";
        return r;
    }
    return r;
}

// Path utilities shared by the solvers.
inline std::vector<Edge> path_edges(const std::vector<int>& path) {
    std::vector<Edge> out;
    for (size_t i = 0; i + 1 < path.size(); ++i) out.push_back(make_edge(path[i], path[i + 1]));
    return out;
}

inline std::vector<Edge> cycle_edges(const std::vector<int>& cycle) {
    std::vector<Edge> out = path_edges(cycle);
    if (cycle.size() >= 3) out.push_back(make_edge(cycle.back(), cycle.front()));
    return out;
}

inline bool is_path_in(const SimpleGraph& g, const std::vector<int>& path) {
    std::vector<bool> used(g.size(), false);
    for (int v : path) {
        if (v < 0 || v >= g.size() || used[v]) return false;
        used[v] = true;
    }
    for (size_t i = 0; i + 1 < path.size(); ++i)
        if (!g.has_edge(path[i], path[i + 1])) return false;
    return true;
}

inline std::vector<std::vector<int>> connected_components(const SimpleGraph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(g.size(), false);
    for (int s = 0; s < g.size(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline bool is_connected(const SimpleGraph& g) {
    return g.size() <= 1 || connected_components(g).size() == 1;
}

}  // namespace linforest
