#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace linforest {

struct ExpanderParams {
    Rational nu;
    Rational tau;
};

struct ExpansionWitness {
    std::vector<int> set;       // violating S
    long long rn_size = 0;      // |RN(S)| observed
};

struct ExpansionVerdict {
    bool holds = true;
    std::optional<ExpansionWitness> witness;
    long long sets_checked = 0;
};

// RN_nu(S): all vertices with at least nu*n neighbors inside S.
inline std::vector<int> robust_neighborhood(const SimpleGraph& g, const std::vector<int>& s, const Rational& nu) {
    int n = g.size();
    std::vector<bool> in_s(n, false);
    for (int v : s) {
        g.check_vertex(v);
        in_s[v] = true;
    }
    std::vector<int> rn;
    for (int v = 0; v < n; ++v) {
        long long cnt = 0;
        for (int w : g.neighbors(v))
            if (in_s[w]) ++cnt;
        if (count_at_least(cnt, nu, n)) rn.push_back(v);
    }
    return rn;
}

// RN^+_nu(S): vertices with at least nu*n inneighbors inside S.
inline std::vector<int> robust_out_neighborhood(const DiGraph& d, const std::vector<int>& s, const Rational& nu) {
    int n = d.size();
    std::vector<bool> in_s(n, false);
    for (int v : s) {
        d.check_vertex(v);
        in_s[v] = true;
    }
    std::vector<int> rn;
    for (int v = 0; v < n; ++v) {
        long long cnt = 0;
        for (int w : d.in_neighbors(v))
            if (in_s[w]) ++cnt;
        if (count_at_least(cnt, nu, n)) rn.push_back(v);
    }
    return rn;
}

namespace detail {

// Admissible |S| range: tau*n <= |S| <= (1-tau)*n.
inline std::pair<long long, long long> admissible_sizes(int n, const Rational& tau) {
    long long lo = ceil_mul(tau, n);
    long long hi = n - lo;  // floor((1-tau)n) = n - ceil(tau*n)
    return {lo, hi};
}

inline std::vector<uint64_t> adjacency_masks(const SimpleGraph& g) {
    std::vector<uint64_t> rows(g.size(), 0);
    for (int v = 0; v < g.size(); ++v)
        for (int w : g.neighbors(v)) rows[v] |= 1ULL << w;
    return rows;
}

inline std::vector<uint64_t> in_adjacency_masks(const DiGraph& d) {
    std::vector<uint64_t> rows(d.size(), 0);
    for (int v = 0; v < d.size(); ++v)
        for (int w : d.in_neighbors(v)) rows[v] |= 1ULL << w;
    return rows;
}

inline std::vector<int> mask_to_set(uint64_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

// |RN| >= |S| + nu*n, exactly.
inline bool expansion_ok(long long rn, long long s, const Rational& nu, int n) {
    return (rn - s) * nu.den >= nu.num * n;
}

inline ExpansionVerdict exact_verdict(int n, const std::vector<uint64_t>& rows, const ExpanderParams& p, int cap) {
    if (n > cap) throw std::invalid_argument("expander check: order " + std::to_string(n) +
                                             " exceeds exhaustive cap " + std::to_string(cap));
    if (n > 62) throw std::invalid_argument("expander check: exhaustive mode limited to 62 vertices");
    auto [lo, hi] = admissible_sizes(n, p.tau);
    ExpansionVerdict v;
    if (lo > hi) return v;  // no admissible S: vacuously holds
    long long nbr_thr_num = p.nu.num * n;  // cnt >= nu*n  <=>  cnt*den >= num*n
    for (uint64_t mask = 1; mask < (1ULL << n); ++mask) {
        int sz = std::popcount(mask);
        if (sz < lo || sz > hi) continue;
        ++v.sets_checked;
        long long rn = 0;
        for (int u = 0; u < n; ++u)
            if (static_cast<long long>(std::popcount(rows[u] & mask)) * p.nu.den >= nbr_thr_num) ++rn;
        if (!expansion_ok(rn, sz, p.nu, n)) {
            v.holds = false;
            v.witness = ExpansionWitness{mask_to_set(mask), rn};
            return v;
        }
    }
    return v;
}

}  // namespace detail

inline ExpansionVerdict is_robust_expander_exact(const SimpleGraph& g, const ExpanderParams& p, int cap = 20) {
    return detail::exact_verdict(g.size(), detail::adjacency_masks(g), p, cap);
}

inline ExpansionVerdict is_robust_outexpander_exact(const DiGraph& d, const ExpanderParams& p, int cap = 20) {
    return detail::exact_verdict(d.size(), detail::in_adjacency_masks(d), p, cap);
}

// One-sided sampled check: "fails" always carries a re-verified witness,
// "holds" only means no violator was sampled.  Sizes are drawn uniformly from
// the admissible range; sets alternate between uniform draws and random
// cluster growth (expansion violations live in tightly-knit vertex sets, and
// a uniform draw essentially never lands inside one).
inline ExpansionVerdict is_robust_expander_sampled(const SimpleGraph& g, const ExpanderParams& p,
                                                   long long trials, uint64_t seed) {
    int n = g.size();
    auto [lo, hi] = detail::admissible_sizes(n, p.tau);
    ExpansionVerdict v;
    if (lo > hi || n == 0) return v;
    if (lo < 1) lo = 1;
    Rng rng(seed);
    std::vector<int> pool(n);
    for (long long t = 0; t < trials; ++t) {
        long long size = lo + static_cast<long long>(rng.bounded(static_cast<uint64_t>(hi - lo + 1)));
        std::vector<int> s;
        if (t % 2 == 0) {
            for (int i = 0; i < n; ++i) pool[i] = i;
            rng.shuffle(pool);
            s.assign(pool.begin(), pool.begin() + size);
        } else {
            std::vector<bool> in(n, false);
            std::vector<int> frontier;
            int start = static_cast<int>(rng.bounded(n));
            in[start] = true;
            s.push_back(start);
            for (int w : g.neighbors(start)) frontier.push_back(w);
            while (static_cast<long long>(s.size()) < size) {
                int pick = -1;
                while (!frontier.empty()) {
                    size_t j = rng.bounded(frontier.size());
                    int cand = frontier[j];
                    frontier[j] = frontier.back();
                    frontier.pop_back();
                    if (!in[cand]) { pick = cand; break; }
                }
                if (pick == -1) {
                    for (int u = 0; u < n && pick == -1; ++u)
                        if (!in[u]) pick = u;  // disconnected host: pad arbitrarily
                }
                in[pick] = true;
                s.push_back(pick);
                for (int w : g.neighbors(pick))
                    if (!in[w]) frontier.push_back(w);
            }
        }
        ++v.sets_checked;
        auto rn = robust_neighborhood(g, s, p.nu);
        if (!detail::expansion_ok(static_cast<long long>(rn.size()), size, p.nu, n)) {
            auto recheck = robust_neighborhood(g, s, p.nu);  // independent re-verification
            if (!detail::expansion_ok(static_cast<long long>(recheck.size()), size, p.nu, n)) {
                std::sort(s.begin(), s.end());
                v.holds = false;
                v.witness = ExpansionWitness{s, static_cast<long long>(recheck.size())};
                return v;
            }
        }
    }
    return v;
}

struct LowerRegularityWitness {
    std::vector<int> s, t;
    long long edges = 0;
};

struct LowerRegularityVerdict {
    bool holds = true;
    std::optional<LowerRegularityWitness> witness;
    long long pairs_checked = 0;
};

// e(S,T) >= (p - eps) |S||T| for all disjoint S,T with |S|,|T| >= eps*n.
inline LowerRegularityVerdict is_lower_regular(const SimpleGraph& g, const Rational& p, const Rational& eps,
                                               int exhaustive_cap = 12, long long trials = 2000,
                                               uint64_t seed = 1) {
    int n = g.size();
    LowerRegularityVerdict v;
    Rational bound = p - eps;
    auto rows = detail::adjacency_masks(g);
    auto cross = [&](uint64_t s, uint64_t t) {
        long long e = 0;
        uint64_t m = s;
        while (m) {
            int u = std::countr_zero(m);
            m &= m - 1;
            e += std::popcount(rows[u] & t);
        }
        return e;
    };
    auto ok = [&](long long e, long long ss, long long ts) {
        return e * bound.den >= bound.num * ss * ts;
    };
    if (n <= exhaustive_cap && n <= 30) {
        for (uint64_t s = 1; s < (1ULL << n); ++s) {
            long long ss = std::popcount(s);
            if (!count_at_least(ss, eps, n)) continue;
            uint64_t rest = ((1ULL << n) - 1) & ~s;
            // enumerate nonempty T subseteq rest
            for (uint64_t t = rest; t; t = (t - 1) & rest) {
                long long ts = std::popcount(t);
                if (!count_at_least(ts, eps, n)) continue;
                ++v.pairs_checked;
                long long e = cross(s, t);
                if (!ok(e, ss, ts)) {
                    v.holds = false;
                    v.witness = LowerRegularityWitness{detail::mask_to_set(s), detail::mask_to_set(t), e};
                    return v;
                }
            }
        }
        return v;
    }
    // sampled fallback for large graphs (one-sided, like the expander sampler)
    long long lo = std::max<long long>(1, ceil_mul(eps, n));
    if (2 * lo > n) return v;
    Rng rng(seed);
    std::vector<int> pool(n);
    for (long long it = 0; it < trials; ++it) {
        long long ss = lo + static_cast<long long>(rng.bounded(static_cast<uint64_t>(n - 2 * lo + 1)));
        long long maxt = n - ss;
        if (maxt < lo) continue;
        long long ts = lo + static_cast<long long>(rng.bounded(static_cast<uint64_t>(maxt - lo + 1)));
        for (int i = 0; i < n; ++i) pool[i] = i;
        rng.shuffle(pool);
        ++v.pairs_checked;
        long long e = 0;
        std::vector<bool> in_t(n, false);
        for (long long i = ss; i < ss + ts; ++i) in_t[pool[i]] = true;
        for (long long i = 0; i < ss; ++i)
            for (int w : g.neighbors(pool[i]))
                if (in_t[w]) ++e;
        if (!ok(e, ss, ts)) {
            std::vector<int> s(pool.begin(), pool.begin() + ss), t(pool.begin() + ss, pool.begin() + ss + ts);
            std::sort(s.begin(), s.end());
            std::sort(t.begin(), t.end());
            v.holds = false;
            v.witness = LowerRegularityWitness{s, t, e};
            return v;
        }
    }
    return v;
}

// Orientation with |d+ - d-| <= 1 at every vertex: pair odd-degree vertices
// with phantom edges (degrees become even), run Hierholzer on every component
// and orient each edge in the direction it is walked.  The walked edges
// decompose into closed trails, so in = out everywhere in the augmented
// multigraph; dropping a phantom shifts its two endpoints by one each.
// The seed permutes the phantom pairing and the walk order.
inline DiGraph orient_balanced(const MultiGraph& g, uint64_t seed) {
    int n = g.size();
    Rng rng(seed);
    struct Rec {
        int u, v;
        bool phantom;
    };
    std::vector<Rec> recs;
    for (const auto& e : g.edges()) recs.push_back({e.first, e.second, false});
    std::vector<int> odd;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) % 2 == 1) odd.push_back(v);
    rng.shuffle(odd);
    for (size_t i = 0; i + 1 < odd.size(); i += 2) recs.push_back({odd[i], odd[i + 1], true});

    std::vector<std::vector<std::pair<int, int>>> inc(n);  // (edge id, other endpoint)
    for (size_t i = 0; i < recs.size(); ++i) {
        inc[recs[i].u].push_back({static_cast<int>(i), recs[i].v});
        inc[recs[i].v].push_back({static_cast<int>(i), recs[i].u});
    }
    for (int v = 0; v < n; ++v) rng.shuffle(inc[v]);

    DiGraph d(n);
    std::vector<bool> used(recs.size(), false);
    std::vector<size_t> it(n, 0);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (inc[s].empty()) continue;
        stack.assign(1, s);
        while (!stack.empty()) {
            int v = stack.back();
            while (it[v] < inc[v].size() && used[inc[v][it[v]].first]) ++it[v];
            if (it[v] == inc[v].size()) {
                stack.pop_back();
            } else {
                auto [eid, w] = inc[v][it[v]];
                used[eid] = true;
                if (!recs[eid].phantom) d.add_arc(v, w);
                stack.push_back(w);
            }
        }
    }
    return d;
}

struct SplitResult {
    DiGraph g1, g2;
    double max_out_deviation = 0.0;  // max over v of |d+_{g1}(v) - lambda * d+(v)|
    double max_in_deviation = 0.0;
};

// Each arc lands in g1 independently with probability lambda (exact rational
// coin), else in g2.
inline SplitResult split_digraph(const DiGraph& d, const Rational& lambda, uint64_t seed) {
    if (lambda.num < 0 || lambda.num > lambda.den)
        throw std::invalid_argument("split: lambda outside [0,1]");
    int n = d.size();
    Rng rng(seed);
    SplitResult r{DiGraph(n), DiGraph(n), 0.0, 0.0};
    for (int u = 0; u < n; ++u)
        for (int v : d.out_neighbors(u)) {
            if (rng.chance(lambda.num, lambda.den))
                r.g1.add_arc(u, v);
            else
                r.g2.add_arc(u, v);
        }
    double lam = lambda.to_double();
    for (int v = 0; v < n; ++v) {
        r.max_out_deviation = std::max(r.max_out_deviation,
                                       std::abs(r.g1.out_degree(v) - lam * d.out_degree(v)));
        r.max_in_deviation = std::max(r.max_in_deviation,
                                      std::abs(r.g1.in_degree(v) - lam * d.in_degree(v)));
    }
    return r;
}

struct StabilityReport {
    ExpansionVerdict base;       // g at (nu, tau)
    ExpansionVerdict perturbed;  // perturbed graph at degraded parameters
    ExpanderParams degraded;
};

// Remove at most eps*n edges at each vertex: expansion degrades to
// (nu - eps, tau).  Requires 0 < eps <= nu.
inline StabilityReport stability_check_edges(const SimpleGraph& g, const ExpanderParams& p, const Rational& eps,
                                             const std::vector<Edge>& removed, int cap = 20) {
    if (eps.num <= 0) throw std::invalid_argument("stability: eps must be positive");
    if (p.nu < eps) throw std::invalid_argument("stability: eps exceeds nu");
    int n = g.size();
    std::vector<long long> per_vertex(n, 0);
    SimpleGraph h = g;
    for (const auto& e : removed) {
        h.remove_edge(e.first, e.second);
        ++per_vertex[e.first];
        ++per_vertex[e.second];
    }
    for (int v = 0; v < n; ++v)
        if (per_vertex[v] * eps.den > eps.num * n)
            throw std::invalid_argument("stability: more than eps*n removals at vertex " + std::to_string(v));
    StabilityReport r;
    r.degraded = ExpanderParams{p.nu - eps, p.tau};
    r.base = is_robust_expander_exact(g, p, cap);
    r.perturbed = is_robust_expander_exact(h, r.degraded, cap);
    return r;
}

// Remove at most eps*n vertices: expansion degrades to (nu - eps, 2*tau),
// valid only under the side condition tau >= (1 + 2*tau) * eps.
inline StabilityReport stability_check_vertices(const SimpleGraph& g, const ExpanderParams& p, const Rational& eps,
                                                const std::vector<int>& removed, int cap = 20) {
    if (eps.num <= 0) throw std::invalid_argument("stability: eps must be positive");
    if (p.nu < eps) throw std::invalid_argument("stability: eps exceeds nu");
    Rational side = (Rational(1) + p.tau * Rational(2)) * eps;
    if (p.tau < side)
        throw std::invalid_argument("stability: side condition tau >= (1+2tau)*eps violated");
    int n = g.size();
    if (static_cast<long long>(removed.size()) * eps.den > eps.num * n)
        throw std::invalid_argument("stability: more than eps*n vertices removed");
    std::vector<bool> drop(n, false);
    for (int v : removed) {
        g.check_vertex(v);
        drop[v] = true;
    }
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
        if (!drop[v]) keep.push_back(v);
    SimpleGraph h = g.induced(keep);
    StabilityReport r;
    r.degraded = ExpanderParams{p.nu - eps, p.tau * Rational(2)};
    r.base = is_robust_expander_exact(g, p, cap);
    r.perturbed = is_robust_expander_exact(h, r.degraded, cap);
    return r;
}

}  // namespace linforest
