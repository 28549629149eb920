#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "udg/decomp.hpp"
#include "udg/errors.hpp"
#include "udg/oracle.hpp"

using namespace udg;

namespace {

SimpleGraph path_graph(int n) {
    SimpleGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

SimpleGraph complete_graph(int n) {
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

SimpleGraph grid_graph(int r, int c) {
    SimpleGraph g(r * c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (i + 1 < r) g.add_edge(i * c + j, (i + 1) * c + j);
            if (j + 1 < c) g.add_edge(i * c + j, i * c + j + 1);
        }
    return g;
}

TreeDecomposition single_bag(int n) {
    TreeDecomposition td;
    TreeDecomposition::Node node;
    for (int v = 0; v < n; ++v) node.bag.push_back(v);
    td.nodes.push_back(node);
    td.root = 0;
    return td;
}

std::vector<Vertex> label_columns(const CliqueGridInstance& inst, int label, int k) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < inst.vertex_count(); ++v)
        if (column_label(inst.cell_of(v).col, ceil_sqrt(k)) == label) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("verify_decomposition basics") {
    auto k3 = complete_graph(3);
    CHECK(verify_decomposition(k3, single_bag(3)));

    TreeDecomposition missing;
    missing.nodes = {{{0, 1}, -1, {1}}, {{2}, 0, {}}};
    missing.root = 0;
    CHECK_FALSE(verify_decomposition(k3, missing));

    auto p3 = path_graph(3);
    TreeDecomposition split;
    split.nodes = {{{0, 1}, -1, {1}}, {{1, 2}, 0, {2}}, {{0}, 1, {}}};
    split.root = 0;
    CHECK_FALSE(verify_decomposition(p3, split));
    split.nodes[2].bag = {2};
    CHECK(verify_decomposition(p3, split));
}

TEST_CASE("exact_treewidth examples") {
    auto p5 = exact_treewidth(path_graph(5), 1);
    REQUIRE(p5.status == TreewidthStatus::Ok);
    CHECK(p5.decomposition.width() == 1);
    CHECK(verify_decomposition(path_graph(5), p5.decomposition));

    CHECK(exact_treewidth(grid_graph(3, 3), 2).status == TreewidthStatus::WidthExceeded);
    CHECK(oracle::brute_treewidth(grid_graph(3, 3)) == 3);
    auto grid = exact_treewidth(grid_graph(3, 3));
    REQUIRE(grid.status == TreewidthStatus::Ok);
    CHECK(grid.decomposition.width() == 3);

    auto k5 = exact_treewidth(complete_graph(5), 4);
    REQUIRE(k5.status == TreewidthStatus::Ok);
    CHECK(k5.decomposition.width() == 4);
}

TEST_CASE("exact_treewidth agrees with the subset DP") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        auto g = testing::random_graph(rng, n, testing::uniform(rng, 0.1, 0.7));
        const int tw = oracle::brute_treewidth(g);
        auto full = exact_treewidth(g);
        REQUIRE(full.status == TreewidthStatus::Ok);
        CHECK(full.exact);
        CHECK(full.decomposition.width() == tw);
        CHECK(verify_decomposition(g, full.decomposition));
        const int cap = static_cast<int>(rng() % 6);
        auto capped = exact_treewidth(g, cap);
        if (tw <= cap) {
            REQUIRE(capped.status == TreewidthStatus::Ok);
            CHECK(capped.decomposition.width() <= cap);
            CHECK(verify_decomposition(g, capped.decomposition));
        } else {
            CHECK(capped.status == TreewidthStatus::WidthExceeded);
        }
    }
}

TEST_CASE("a tiny node budget reports exhaustion instead of an answer") {
    std::mt19937_64 rng(32);
    auto g = testing::random_graph(rng, 40, 0.3);
    auto r = exact_treewidth(g, kUnboundedWidth, 3);
    CHECK(r.status != TreewidthStatus::WidthExceeded);
    if (r.status == TreewidthStatus::Ok) CHECK(verify_decomposition(g, r.decomposition));
}

TEST_CASE("make_nice keeps the width and validity") {
    auto nice = make_nice(single_bag(3));
    CHECK(verify_nice(complete_graph(3), nice));
    CHECK(nice.nodes[nice.root].bag.empty());
    CHECK(nice.width() == 2);

    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 80; ++trial) {
        auto g = testing::random_graph(rng, 1 + static_cast<int>(rng() % 14), testing::uniform(rng, 0.05, 0.6));
        auto r = exact_treewidth(g);
        REQUIRE(r.status == TreewidthStatus::Ok);
        auto ntd = make_nice(r.decomposition);
        CHECK(verify_nice(g, ntd));
        CHECK(verify_decomposition(g, ntd.as_tree()));
        CHECK(ntd.width() == r.decomposition.width());
        CHECK(ntd.nodes.size() <= 4 * (r.decomposition.nodes.size() + 1) * static_cast<std::size_t>(g.vertex_count() + 1));
    }
}

TEST_CASE("td files round-trip exactly") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = testing::random_graph(rng, 1 + static_cast<int>(rng() % 12), 0.35);
        auto td = exact_treewidth(g).decomposition;
        std::stringstream first;
        write_td(first, td, g.vertex_count());
        int n = -1;
        auto back = read_td(first, &n);
        CHECK(n == g.vertex_count());
        CHECK(verify_decomposition(g, back));
        std::stringstream second;
        write_td(second, back, n);
        CHECK(second.str() == first.str());
    }
    std::stringstream bad("s td 1 2 2\nb 1 1 2\nb 2 1\n");
    CHECK_THROWS_AS(read_td(bad), InputError);
}

TEST_CASE("cell NCTD examples") {
    auto one = CliqueGridInstance::from_cloud({{0, 0}, {0.1, 0.1}, {0.2, 0}}, Model::Disk);
    auto r = build_cell_nctd(one);
    REQUIRE(r.status == TreewidthStatus::Ok);
    CHECK(verify_cell_nctd(one, r.nctd));
    CHECK(r.nctd.cell_tree.width() == 0);
    CHECK(r.nctd.max_cells_per_bag() == 1);

    PointCloud row;
    for (int i = 0; i < 12; ++i) row.push_back({0.1, 0.1 + 1.45 * i});
    auto band = CliqueGridInstance::from_cloud(row, Model::Disk);
    CHECK(band.rep().rows == 1);
    auto rb = build_cell_nctd(band);
    REQUIRE(rb.status == TreewidthStatus::Ok);
    CHECK(rb.nctd.cell_tree.width() <= 2);
    CHECK(rb.nctd.cell_tree.width() == oracle::brute_treewidth(cell_graph(band).graph));
}

TEST_CASE("cell NCTDs lift every edge and respect the bag bound") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = testing::random_instance(rng, 10 + static_cast<int>(rng() % 50), 3.0 + static_cast<double>(trial % 6));
        auto r = build_cell_nctd(inst);
        REQUIRE(r.status == TreewidthStatus::Ok);
        const auto& nctd = r.nctd;
        CHECK(verify_cell_nctd(inst, nctd));
        CHECK(verify_nice(cell_graph(inst).graph, nctd.cell_tree));
        const std::size_t width = static_cast<std::size_t>(nctd.cell_tree.width());
        for (const auto& bag : nctd.bags) CHECK(bag.size() <= (width + 1) * static_cast<std::size_t>(inst.max_cell_size()));
        for (auto [u, v] : inst.graph().edges()) {
            bool covered = false;
            for (const auto& bag : nctd.bags)
                covered = covered || (std::binary_search(bag.begin(), bag.end(), u) &&
                                      std::binary_search(bag.begin(), bag.end(), v));
            CHECK(covered);
        }
        CHECK(verify_nice(inst.graph(), expand_to_vertices(inst, nctd)));
    }
}

TEST_CASE("cell NCTD width cap") {
    PointCloud pts;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) pts.push_back({0.1 + 1.45 * i, 0.1 + 1.45 * j});
    auto inst = CliqueGridInstance::from_cloud(pts, Model::Disk);
    const int tw = oracle::brute_treewidth(cell_graph(inst).graph);
    CHECK(build_cell_nctd(inst, tw - 1).status == TreewidthStatus::WidthExceeded);
    CHECK(build_cell_nctd(inst, tw).status == TreewidthStatus::Ok);
}

TEST_CASE("Baker decompositions") {
    CHECK(ceil_sqrt(1) == 1);
    CHECK(ceil_sqrt(4) == 2);
    CHECK(ceil_sqrt(5) == 3);
    CHECK(column_label(1, 3) == column_label(2, 3));
    CHECK(column_label(3, 3) != column_label(1, 3));

    SUBCASE("one window, no kept vertices: bags are row triples") {
        PointCloud pts;
        for (int i = 0; i < 5; ++i) pts.push_back({0.1 + 1.45 * i, 0.1});
        auto inst = CliqueGridInstance::from_cloud(pts, Model::Disk);
        // Column 1 carries label 1 when k = 4, so label 0 deletes nothing.
        auto ncpd = build_baker_ncpd(inst, {}, {}, 4);
        CHECK(ncpd.label == 0);
        CHECK(verify_baker_ncpd(inst, {}, ncpd, 4));
        REQUIRE(ncpd.bags.size() == 3);
        for (std::size_t b = 0; b < 3; ++b) {
            std::set<int> rows;
            for (int unit : ncpd.bags[b]) rows.insert(ncpd.units[unit].cell.row);
            CHECK(rows == std::set<int>{static_cast<int>(b) + 1, static_cast<int>(b) + 2, static_cast<int>(b) + 3});
        }
    }

    SUBCASE("random instances, every label and kept set") {
        std::mt19937_64 rng(36);
        for (int trial = 0; trial < 40; ++trial) {
            auto inst = testing::random_instance(rng, 10 + static_cast<int>(rng() % 40), 3.0 + static_cast<double>(trial % 5));
            const int k = 1 + static_cast<int>(rng() % 12);
            const int L = ceil_sqrt(k);
            for (int label = 0; label < L; ++label) {
                auto cols = label_columns(inst, label, k);
                std::vector<Vertex> kept;
                for (Vertex v : cols)
                    if (static_cast<int>(kept.size()) < L && rng() % 2) kept.push_back(v);
                std::vector<Vertex> deleted;
                std::set_difference(cols.begin(), cols.end(), kept.begin(), kept.end(), std::back_inserter(deleted));
                auto ncpd = build_baker_ncpd(inst, deleted, kept, k);
                CHECK(verify_baker_ncpd(inst, deleted, ncpd, k));
                for (const auto& bag : ncpd.vertex_bags())
                    for (Vertex y : kept) CHECK(std::binary_search(bag.begin(), bag.end(), y));
                for (const auto& bag : ncpd.bags) CHECK(bag.size() <= static_cast<std::size_t>(6 * L));
            }
        }
    }

    SUBCASE("precondition violations") {
        PointCloud pts;
        for (int i = 0; i < 6; ++i) pts.push_back({0.1, 0.1 + 1.45 * i});
        auto inst = CliqueGridInstance::from_cloud(pts, Model::Disk);
        const std::vector<Vertex> first{0};
        CHECK_THROWS_AS(build_baker_ncpd(inst, first, {}, 4), ConstructionError);
        CHECK_THROWS_AS(build_baker_ncpd(inst, {}, {}, 0), ConstructionError);
    }
}
