#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "expansion.hpp"
#include "graph.hpp"
#include "rational.hpp"
#include "realize.hpp"
#include "rng.hpp"

namespace linforest {

enum class Family {
    gnp,
    random_regular,
    almost_regular,
    dirac,
    quasirandom_blowup,
    counterexample_k3_gadget,
    counterexample_three_blocks,
};

inline std::string to_string(Family f) {
    switch (f) {
        case Family::gnp: return "gnp";
        case Family::random_regular: return "random_regular";
        case Family::almost_regular: return "almost_regular";
        case Family::dirac: return "dirac";
        case Family::quasirandom_blowup: return "quasirandom_blowup";
        case Family::counterexample_k3_gadget: return "counterexample_k3_gadget";
        case Family::counterexample_three_blocks: return "counterexample_three_blocks";
    }
    return "?";
}

inline Family family_from_string(const std::string& s) {
    for (Family f : {Family::gnp, Family::random_regular, Family::almost_regular, Family::dirac,
                     Family::quasirandom_blowup, Family::counterexample_k3_gadget,
                     Family::counterexample_three_blocks})
        if (to_string(f) == s) return f;
    throw std::invalid_argument("unknown generator family '" + s + "'");
}

struct GeneratorSpec {
    Family family = Family::gnp;
    int n = 0;
    Rational p{1, 2};     // edge probability / density target
    int r = 0;            // regular degree
    Rational eps{1, 20};  // three-blocks block fraction / regularity slack
    uint64_t seed = 0;
};

inline SimpleGraph gnp(int n, const Rational& p, uint64_t seed) {
    if (n < 0) throw std::invalid_argument("gnp: negative order");
    if (p.num < 0 || p.num > p.den) throw std::invalid_argument("gnp: probability outside [0, 1]");
    Rng rng(seed);
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p.num, p.den)) g.add_edge(u, v);
    return g;
}

namespace detail {

// Pairing model on a prescribed degree sequence, rejecting pairings with
// loops or parallel edges.  Dense sequences make rejection hopeless, so after
// enough failures the sequence is realized deterministically and shuffled by
// random double-edge switches instead.
inline SimpleGraph random_graph_with_degrees(const std::vector<int>& degrees, uint64_t seed) {
    const int n = static_cast<int>(degrees.size());
    long long total = 0;
    for (int v = 0; v < n; ++v) {
        if (degrees[v] < 0) throw std::invalid_argument("degree sequence: negative entry");
        if (degrees[v] >= n) throw std::invalid_argument("degree sequence: entry at least the order");
        total += degrees[v];
    }
    if (total % 2 != 0) throw std::invalid_argument("degree sequence: odd sum");
    if (!erdos_gallai_feasible(degrees)) throw std::invalid_argument("degree sequence: not realizable");
    Rng rng(seed);
    std::vector<int> points;
    for (int v = 0; v < n; ++v) points.insert(points.end(), degrees[v], v);
    const long long m = static_cast<long long>(points.size()) / 2;
    if (m == 0) return SimpleGraph(n);

    for (int attempt = 0; attempt < 200; ++attempt) {
        rng.shuffle(points);
        SimpleGraph g(n);
        bool ok = true;
        for (long long i = 0; i < m && ok; ++i) {
            const int u = points[2 * i], v = points[2 * i + 1];
            if (u == v || g.has_edge(u, v))
                ok = false;
            else
                g.add_edge(u, v);
        }
        if (ok) return g;
    }

    SimpleGraph g = havel_hakimi_simple(degrees);
    auto edges = g.edges();
    if (edges.size() < 2) return g;
    for (long long s = 0; s < 30 * m; ++s) {
        const size_t i = rng.bounded(edges.size());
        const size_t j = rng.bounded(edges.size());
        if (i == j) continue;
        Edge a = edges[i], b = edges[j];
        if (rng.chance(1, 2)) std::swap(b.first, b.second);
        if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second) continue;
        if (g.has_edge(a.first, b.first) || g.has_edge(a.second, b.second)) continue;
        g.remove_edge(a.first, a.second);
        g.remove_edge(b.first, b.second);
        g.add_edge(a.first, b.first);
        g.add_edge(a.second, b.second);
        edges[i] = make_edge(a.first, b.first);
        edges[j] = make_edge(a.second, b.second);
    }
    return g;
}

}  // namespace detail

inline SimpleGraph random_regular(int n, int r, uint64_t seed) {
    if (n <= 0 || r < 0 || r >= n) throw std::invalid_argument("random_regular: need 0 <= r < n");
    if ((static_cast<long long>(n) * r) % 2 != 0)
        throw std::invalid_argument("random_regular: n * r must be even");
    return detail::random_graph_with_degrees(std::vector<int>(n, r), seed);
}

// One vertex of degree r + 1 (vertex 0), all others of degree r; needs both
// n and r odd so the degree sum is even.
inline SimpleGraph almost_regular(int n, int r, uint64_t seed) {
    if (n <= 0 || r < 0 || r + 1 >= n) throw std::invalid_argument("almost_regular: need 0 <= r + 1 < n");
    if (n % 2 == 0 || r % 2 == 0) throw std::invalid_argument("almost_regular: n and r must both be odd");
    std::vector<int> degrees(n, r);
    degrees[0] = r + 1;
    return detail::random_graph_with_degrees(degrees, seed);
}

// Random graph repaired upward until every vertex has degree >= ceil(n / 2).
inline SimpleGraph dirac(int n, uint64_t seed) {
    if (n < 3) throw std::invalid_argument("dirac: need at least 3 vertices");
    SimpleGraph g = gnp(n, Rational{1, 2}, seed);
    const int need = (n + 1) / 2;
    for (int v = 0; v < n; ++v) {
        while (g.degree(v) < need) {
            int pick = -1;
            for (int u = 0; u < n; ++u) {
                if (u == v || g.has_edge(v, u)) continue;
                if (pick == -1 || g.degree(u) < g.degree(pick)) pick = u;
            }
            if (pick == -1) throw std::logic_error("dirac: no repair edge available");
            g.add_edge(v, pick);
        }
    }
    return g;
}

// Blow-up of a small template whose class-pair densities all sit at or above
// the target, then certify rather than trust the construction.
inline SimpleGraph quasirandom_blowup(int n, const Rational& p, const Rational& eps, uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("quasirandom_blowup: empty order");
    if (p.num <= 0 || p.num > p.den) throw std::invalid_argument("quasirandom_blowup: density outside (0, 1]");
    if (eps.num <= 0 || !(eps < p)) throw std::invalid_argument("quasirandom_blowup: need 0 < eps < p");
    const int t = 4;
    Rational slack = eps / Rational{2, 1};
    for (int attempt = 0; attempt < 8; ++attempt) {
        Rng rng(derive_seed(seed, static_cast<uint64_t>(attempt)));
        std::vector<std::vector<Rational>> dens(t, std::vector<Rational>(t, p));
        for (int a = 0; a < t; ++a)
            for (int b = a; b < t; ++b) {
                Rational d = p + slack * Rational{static_cast<long long>(rng.bounded(3)), 2};
                if (Rational{1, 1} < d) d = Rational{1, 1};
                dens[a][b] = dens[b][a] = d;
            }
        SimpleGraph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const Rational& d = dens[u % t][v % t];
                if (rng.chance(d.num, d.den)) g.add_edge(u, v);
            }
        auto verdict = is_lower_regular(g, p, eps, 12, 4000, derive_seed(seed, 100 + attempt));
        if (verdict.holds) return g;
    }
    throw std::runtime_error("quasirandom_blowup: no attempt certified as lower-regular");
}

// A clique on n - 3 vertices plus a triangle, each triangle vertex joined to
// its own near-third of the clique, every clique vertex used once: the clique
// sits at maximum degree n - 3 and any (n-3)-regular supergraph needs a
// 3-edge cut.
inline SimpleGraph counterexample_k3_gadget(int n) {
    if (n < 9) throw std::invalid_argument("counterexample_k3_gadget: need at least 9 vertices");
    const int base = n - 3;
    SimpleGraph g(n);
    for (int u = 0; u < base; ++u)
        for (int v = u + 1; v < base; ++v) g.add_edge(u, v);
    g.add_edge(base, base + 1);
    g.add_edge(base, base + 2);
    g.add_edge(base + 1, base + 2);
    for (int u = 0; u < base; ++u) g.add_edge(u, base + u % 3);
    if (max_degree(g) != n - 3)
        throw std::logic_error("counterexample_k3_gadget: maximum degree is not n - 3");
    return g;
}

namespace detail {

// Deterministic circulant: i adjacent to i +- 1 .. r/2 (mod m), r even.
inline void add_circulant(SimpleGraph& g, int offset, int m, int r) {
    for (int i = 0; i < m; ++i)
        for (int k = 1; k <= r / 2; ++k) g.add_edge(offset + i, offset + (i + k) % m);
}

}  // namespace detail

// Two large regular blocks (3*eps*n- and 5*eps*n-regular, each on n/2 - eps*n
// vertices) and one clique on 2*eps*n vertices, with full joins block1-block2
// and block1-block3: minimum degree n/2 + eps*n - 1, maximum n/2 + 4*eps*n,
// and any regular supergraph of the maximum degree blows up past 3n/2.
inline SimpleGraph counterexample_three_blocks(int n, const Rational& eps) {
    if (n % 2 != 0) throw std::invalid_argument("counterexample_three_blocks: n must be even");
    if (eps.num <= 0) throw std::invalid_argument("counterexample_three_blocks: eps must be positive");
    if ((eps.num * n) % eps.den != 0)
        throw std::invalid_argument("counterexample_three_blocks: eps * n is not an integer");
    const long long en = eps.num * n / eps.den;
    if (en % 2 != 0) throw std::invalid_argument("counterexample_three_blocks: eps * n must be even");
    if (!(eps < Rational{1, 12}))
        throw std::invalid_argument("counterexample_three_blocks: need eps < 1/12");
    const int e = static_cast<int>(en);
    const int m = n / 2 - e;
    SimpleGraph g(n);
    detail::add_circulant(g, 0, m, 3 * e);
    detail::add_circulant(g, m, m, 5 * e);
    for (int u = 2 * m; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    for (int u = 0; u < m; ++u) {
        for (int v = m; v < 2 * m; ++v) g.add_edge(u, v);
        for (int v = 2 * m; v < n; ++v) g.add_edge(u, v);
    }
    if (max_degree(g) != n / 2 + 4 * e || min_degree(g) != n / 2 + e - 1)
        throw std::logic_error("counterexample_three_blocks: degree envelope mismatch");
    return g;
}

inline SimpleGraph generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::gnp: return gnp(spec.n, spec.p, spec.seed);
        case Family::random_regular: return random_regular(spec.n, spec.r, spec.seed);
        case Family::almost_regular: return almost_regular(spec.n, spec.r, spec.seed);
        case Family::dirac: return dirac(spec.n, spec.seed);
        case Family::quasirandom_blowup: return quasirandom_blowup(spec.n, spec.p, spec.eps, spec.seed);
        case Family::counterexample_k3_gadget: return counterexample_k3_gadget(spec.n);
        case Family::counterexample_three_blocks: return counterexample_three_blocks(spec.n, spec.eps);
    }
    throw std::invalid_argument("unknown generator family");
}

}  // namespace linforest
