#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "udg/errors.hpp"
#include "udg/oracle.hpp"

using namespace udg;

namespace {

SimpleGraph complete_graph(int n) {
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

SimpleGraph cycle_graph(int n) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

// Trace of A^3 counts each triangle six times.
long long triangle_trace(const SimpleGraph& g) {
    const int n = g.vertex_count();
    long long trace = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) trace += g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, a);
    return trace / 6;
}

// Longest path and cycle by trying every vertex order prefix.
std::pair<int, int> permutation_longest(const SimpleGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    int path = n > 0 ? 1 : 0, cycle = 0;
    do {
        int len = 1;
        while (len < n && g.has_edge(order[len - 1], order[len])) ++len;
        path = std::max(path, len);
        for (int l = 3; l <= len; ++l)
            if (g.has_edge(order[l - 1], order[0])) cycle = std::max(cycle, l);
    } while (std::next_permutation(order.begin(), order.end()));
    return {path, cycle};
}

// Minimum feedback vertex set by branching on a vertex of some cycle.
int branch_fvs(const SimpleGraph& g, std::vector<bool>& removed, int budget) {
    if (is_forest_without(g, removed)) return 0;
    if (budget <= 0) return 1 << 20;
    int best = 1 << 20;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (removed[v] || g.degree(v) < 2) continue;
        removed[v] = true;
        best = std::min(best, 1 + branch_fvs(g, removed, std::min(budget - 1, best - 2)));
        removed[v] = false;
    }
    return best;
}

}  // namespace

TEST_CASE("exact cycle") {
    CHECK(oracle::brute_exact_cycle(complete_graph(4), 3));
    CHECK(oracle::brute_exact_cycle(complete_graph(4), 4));
    CHECK_FALSE(oracle::brute_exact_cycle(complete_graph(4), 5));
    CHECK(oracle::enumerate_k_cycles(complete_graph(4), 3, 100).size() == 4);
    CHECK(oracle::enumerate_k_cycles(complete_graph(5), 5, 100).size() == 12);

    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = testing::random_graph(rng, 12, testing::uniform(rng, 0.05, 0.4));
        std::vector<Vertex> w;
        const bool has = oracle::brute_exact_cycle(g, 3, {}, &w);
        CHECK(has == (triangle_trace(g) > 0));
        if (has) CHECK(is_simple_cycle(g, w));
    }
}

TEST_CASE("longest path and cycle") {
    SimpleGraph p4(4);
    p4.add_edge(0, 1), p4.add_edge(1, 2), p4.add_edge(2, 3);
    CHECK(oracle::brute_longest_path(p4) == 4);
    CHECK(oracle::brute_longest_cycle(p4) == 0);
    CHECK(oracle::brute_longest_cycle(cycle_graph(5)) == 5);

    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = testing::random_graph(rng, 1 + static_cast<int>(rng() % 8), testing::uniform(rng, 0.15, 0.6));
        auto [path, cycle] = permutation_longest(g);
        CHECK(oracle::brute_longest_path(g) == path);
        CHECK(oracle::brute_longest_cycle(g) == cycle);
        auto lengths = oracle::cycle_lengths(g);
        for (int l = 3; l < static_cast<int>(lengths.size()); ++l)
            CHECK(lengths[l] == oracle::brute_exact_cycle(g, l));
        for (int k = 1; k <= 9; ++k) {
            std::vector<Vertex> w;
            CHECK(oracle::has_path_at_least(g, k, {}, &w) == (path >= k));
            if (path >= k) CHECK(is_simple_path(g, w));
            CHECK(oracle::has_cycle_at_least(g, k, {}, &w) == (cycle >= std::max(k, 3)));
        }
    }
}

TEST_CASE("feedback vertex set") {
    SimpleGraph tree(5);
    tree.add_edge(0, 1), tree.add_edge(0, 2), tree.add_edge(2, 3), tree.add_edge(2, 4);
    CHECK(oracle::brute_fvs(tree, 0));
    CHECK_FALSE(oracle::brute_fvs(complete_graph(4), 1));
    CHECK(oracle::brute_fvs(complete_graph(4), 2));

    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = testing::random_graph(rng, 1 + static_cast<int>(rng() % 14), testing::uniform(rng, 0.1, 0.4));
        std::vector<bool> removed(g.vertex_count(), false);
        const int expected = branch_fvs(g, removed, g.vertex_count());
        CHECK(oracle::brute_min_fvs(g) == expected);
        CHECK(oracle::brute_max_induced_forest(g) == g.vertex_count() - expected);
        std::vector<Vertex> w;
        REQUIRE(oracle::brute_fvs(g, expected, {}, &w));
        std::vector<bool> cut(g.vertex_count(), false);
        for (Vertex v : w) cut[v] = true;
        CHECK(is_forest_without(g, cut));
        if (expected > 0) CHECK_FALSE(oracle::brute_fvs(g, expected - 1));
    }
}

TEST_CASE("cycle packing") {
    SimpleGraph two(6);
    two.add_edge(0, 1), two.add_edge(1, 2), two.add_edge(0, 2);
    two.add_edge(3, 4), two.add_edge(4, 5), two.add_edge(3, 5);
    std::vector<std::vector<Vertex>> w;
    CHECK(oracle::brute_cycle_packing(two, 2, {}, &w));
    CHECK(w.size() == 2);
    CHECK_FALSE(oracle::brute_cycle_packing(cycle_graph(6), 2));
    CHECK(oracle::induced_cycles(complete_graph(4)).size() == 4);
}

TEST_CASE("treewidth") {
    SimpleGraph star(6);
    for (int i = 1; i < 6; ++i) star.add_edge(0, i);
    CHECK(oracle::brute_treewidth(star) == 1);
    CHECK(oracle::brute_treewidth(complete_graph(5)) == 4);
    SimpleGraph grid(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i < 2) grid.add_edge(3 * i + j, 3 * i + j + 3);
            if (j < 2) grid.add_edge(3 * i + j, 3 * i + j + 1);
        }
    CHECK(oracle::brute_treewidth(grid) == 3);
    CHECK(oracle::brute_treewidth(cycle_graph(7)) == 2);
}

TEST_CASE("budgets fail loudly") {
    CHECK_THROWS_AS(oracle::brute_longest_cycle(SimpleGraph(30)), BudgetError);
    CHECK_THROWS_AS(oracle::brute_treewidth(SimpleGraph(20)), BudgetError);
    oracle::Budget tight;
    tight.max_objects = 5;
    CHECK_THROWS_AS(oracle::enumerate_k_cycles(complete_graph(9), 9, 1u << 30, tight), BudgetError);
}
