#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "linforest/hamilton.hpp"
#include "oracle_helpers.hpp"

using namespace linforest;

namespace {

bool spans_all(const std::vector<int>& path, int n) {
    std::set<int> s(path.begin(), path.end());
    return static_cast<int>(path.size()) == n && static_cast<int>(s.size()) == n;
}

}  // namespace

TEST_CASE("status names") {
    REQUIRE(std::string(to_string(SearchStatus::Found)) == "found");
    REQUIRE(std::string(to_string(SearchStatus::None)) == "none");
    REQUIRE(std::string(to_string(SearchStatus::Unknown)) == "unknown");
}

TEST_CASE("hamilton paths between fixed ends") {
    SimpleGraph p4 = oracle::path_graph(4);
    SECTION("the spine itself") {
        auto r = hamilton_path(p4, 0, 3);
        REQUIRE(r.status == SearchStatus::Found);
        REQUIRE(r.path == std::vector<int>{0, 1, 2, 3});
        REQUIRE(is_path_in(p4, r.path));
    }
    SECTION("impossible ends are refuted") {
        auto r = hamilton_path(p4, 1, 3);
        REQUIRE(r.status == SearchStatus::None);
        REQUIRE(r.path.empty());
    }
    SECTION("equal ends are rejected") {
        REQUIRE_THROWS_AS(hamilton_path(p4, 2, 2), std::invalid_argument);
    }
    SECTION("complete graphs connect any pair") {
        SimpleGraph k5 = oracle::complete_graph(5);
        for (int y = 1; y < 5; ++y) {
            auto r = hamilton_path(k5, 0, y);
            REQUIRE(r.status == SearchStatus::Found);
            REQUIRE(spans_all(r.path, 5));
            REQUIRE(is_path_in(k5, r.path));
            REQUIRE(r.path.front() == 0);
            REQUIRE(r.path.back() == y);
        }
    }
    SECTION("a tiny budget reports unknown") {
        auto r = hamilton_path(oracle::complete_graph(8), 0, 1, SearchBudget::nodes(2));
        REQUIRE(r.status == SearchStatus::Unknown);
    }
}

TEST_CASE("hamilton cycles") {
    auto r = hamilton_cycle(oracle::cycle_graph(5));
    REQUIRE(r.status == SearchStatus::Found);
    REQUIRE(spans_all(r.path, 5));
    REQUIRE(hamilton_cycle(oracle::path_graph(5)).status == SearchStatus::None);
    REQUIRE(hamilton_cycle(oracle::star_graph(3)).status == SearchStatus::None);
    REQUIRE(hamilton_cycle(SimpleGraph(2)).status == SearchStatus::None);

    SECTION("agreement with the permutation oracle") {
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 4 + trial % 4;  // 4..7
            SimpleGraph g = gnp(n, Rational{1 + trial % 3, 4}, derive_seed(451, trial));
            const bool lib = hamilton_cycle(g).status == SearchStatus::Found;
            if (lib != oracle::brute_hamilton_cycle(g)) {
                CAPTURE(trial, n);
                FAIL("hamilton cycle existence disagrees with the oracle");
            }
        }
        SUCCEED("cycle existence agrees");
    }
}

TEST_CASE("hamilton decompositions") {
    SECTION("complete graphs of odd order") {
        auto r5 = hamilton_decomposition(oracle::complete_graph(5));
        REQUIRE(r5.status == SearchStatus::Found);
        REQUIRE(r5.cycles.size() == 2);
        auto r7 = hamilton_decomposition(oracle::complete_graph(7));
        REQUIRE(r7.status == SearchStatus::Found);
        REQUIRE(r7.cycles.size() == 3);
        // Cycles partition the edge set.
        std::set<Edge> used;
        for (const auto& c : r7.cycles) {
            REQUIRE(spans_all(c, 7));
            for (auto e : cycle_edges(c)) REQUIRE(used.insert(e).second);
        }
        REQUIRE(static_cast<long long>(used.size()) == oracle::complete_graph(7).edge_count());
    }
    SECTION("a cycle is its own decomposition") {
        auto r = hamilton_decomposition(oracle::cycle_graph(6));
        REQUIRE(r.status == SearchStatus::Found);
        REQUIRE(r.cycles.size() == 1);
    }
    SECTION("zero-regular graphs decompose into nothing") {
        auto r = hamilton_decomposition(SimpleGraph(4));
        REQUIRE(r.status == SearchStatus::Found);
        REQUIRE(r.cycles.empty());
    }
    SECTION("odd degree and irregularity are rejected") {
        REQUIRE_THROWS_AS(hamilton_decomposition(oracle::complete_graph(4)), std::invalid_argument);
        REQUIRE_THROWS_AS(hamilton_decomposition(oracle::path_graph(3)), std::invalid_argument);
    }
    SECTION("the size cap is enforced") {
        REQUIRE_THROWS_AS(hamilton_decomposition(oracle::cycle_graph(17)), std::invalid_argument);
        REQUIRE(hamilton_decomposition(oracle::cycle_graph(17), {}, 17).status == SearchStatus::Found);
    }
    SECTION("disconnected regular graphs are refuted, not crashed") {
        SimpleGraph g = oracle::disjoint_union(oracle::cycle_graph(5), oracle::cycle_graph(5));
        REQUIRE(hamilton_decomposition(g).status == SearchStatus::None);
    }
}

TEST_CASE("spanning linkages") {
    SECTION("single pair on a cycle") {
        SimpleGraph c6 = oracle::cycle_graph(6);
        auto good = k_linkage(c6, {{0, 1}});
        REQUIRE(good.status == SearchStatus::Found);
        REQUIRE(good.paths.size() == 1);
        REQUIRE(spans_all(good.paths[0], 6));
        // Ends 0 and 3 cut the cycle into two arcs; no spanning path exists.
        REQUIRE(k_linkage(c6, {{0, 3}}).status == SearchStatus::None);
    }
    SECTION("three pairs across a complete graph") {
        SimpleGraph k6 = oracle::complete_graph(6);
        auto r = k_linkage(k6, {{0, 1}, {2, 3}, {4, 5}});
        REQUIRE(r.status == SearchStatus::Found);
        REQUIRE(r.paths.size() == 3);
        std::set<int> covered;
        for (const auto& p : r.paths) {
            REQUIRE(p.size() >= 2);
            REQUIRE(is_path_in(k6, p));
            for (int v : p) REQUIRE(covered.insert(v).second);
        }
        REQUIRE(covered.size() == 6);
    }
    SECTION("degenerate requests") {
        SimpleGraph k4 = oracle::complete_graph(4);
        REQUIRE_THROWS_AS(k_linkage(k4, {{0, 0}}), std::invalid_argument);
        REQUIRE_THROWS_AS(k_linkage(k4, {{0, 1}, {1, 2}}), std::invalid_argument);
        REQUIRE(k_linkage(SimpleGraph(0), {}).status == SearchStatus::Found);
        REQUIRE(k_linkage(k4, {}).status == SearchStatus::None);
    }
}

TEST_CASE("layout validation") {
    std::string why;
    SECTION("a good two-path layout") {
        Layout lay;
        lay.paths = {{0, 1}, {1, 2}};
        lay.forced = {{0, 1}};
        REQUIRE(validate_layout(lay, 6, &why));
    }
    SECTION("paths must have two or more vertices") {
        Layout lay;
        lay.paths = {{0}};
        REQUIRE_FALSE(validate_layout(lay, 6, &why));
    }
    SECTION("isolated vertices may not sit on paths") {
        Layout lay;
        lay.paths = {{0, 1}};
        lay.isolated = {1};
        REQUIRE_FALSE(validate_layout(lay, 6, &why));
    }
    SECTION("forced edges must appear in the layout") {
        Layout lay;
        lay.paths = {{0, 1}};
        lay.forced = {{2, 3}};
        REQUIRE_FALSE(validate_layout(lay, 6, &why));
    }
    SECTION("at least one unforced edge is required") {
        Layout lay;
        lay.paths = {{0, 1}};
        lay.forced = {{0, 1}};
        REQUIRE_FALSE(validate_layout(lay, 6, &why));
        REQUIRE_FALSE(why.empty());
    }
}

TEST_CASE("spanning configurations realize layouts") {
    SimpleGraph k6 = oracle::complete_graph(6);
    SECTION("single edge grows into a spanning path") {
        Layout lay;
        lay.paths = {{0, 1}};
        auto [st, cfg] = spanning_configuration(k6, lay);
        REQUIRE(st == SearchStatus::Found);
        REQUIRE(validate_spanning_configuration(k6, lay, cfg));
        REQUIRE(cfg.realized.size() == 1);
        REQUIRE(cfg.realized[0].size() == 6);  // all four free vertices are interiors
    }
    SECTION("forced edges are kept verbatim") {
        Layout lay;
        lay.paths = {{0, 1}, {1, 2}};
        lay.forced = {{0, 1}};
        auto [st, cfg] = spanning_configuration(k6, lay);
        REQUIRE(st == SearchStatus::Found);
        REQUIRE(validate_spanning_configuration(k6, lay, cfg));
        bool saw_forced = false;
        for (std::size_t i = 0; i < cfg.realized.size(); ++i)
            if (cfg.forced[i]) {
                saw_forced = true;
                REQUIRE(cfg.realized[i].size() == 2);
            }
        REQUIRE(saw_forced);
    }
    SECTION("impossible packings are refuted with the stuck layout") {
        SimpleGraph c5 = oracle::cycle_graph(5);
        Layout lay;
        lay.paths = {{0, 2}};
        auto res = edge_disjoint_spanning_configs(c5, {lay});
        REQUIRE(res.status == SearchStatus::None);
        REQUIRE(res.stuck_layout == 0);
    }
    SECTION("two layouts stay edge disjoint") {
        Layout a;
        a.paths = {{0, 1}};
        Layout b;
        b.paths = {{2, 3}};
        auto res = edge_disjoint_spanning_configs(k6, {a, b});
        REQUIRE(res.status == SearchStatus::Found);
        REQUIRE(res.configs.size() == 2);
        std::set<Edge> used;
        long long used_count = 0;
        for (const auto& cfg : res.configs)
            for (std::size_t i = 0; i < cfg.realized.size(); ++i) {
                if (cfg.forced[i]) continue;
                const auto& p = cfg.realized[i];
                for (std::size_t j = 0; j + 1 < p.size(); ++j) {
                    REQUIRE(used.insert(make_edge(p[j], p[j + 1])).second);
                    ++used_count;
                }
            }
        REQUIRE(res.residual.edge_count() == k6.edge_count() - used_count);
    }
    SECTION("an exhausted budget reports unknown") {
        Layout lay;
        lay.paths = {{0, 1}};
        auto res = edge_disjoint_spanning_configs(oracle::complete_graph(9), {lay},
                                                  SearchBudget::nodes(1));
        REQUIRE(res.status == SearchStatus::Unknown);
    }
}

TEST_CASE("budgets derive from the environment scale") {
    REQUIRE(SearchBudget::nodes(7).node_limit == 7);
    REQUIRE(SearchBudget{}.node_limit == 200'000'000);
}
