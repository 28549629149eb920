#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "udg/kernel.hpp"
#include "udg/oracle.hpp"

using namespace udg;

namespace {

PointCloud colocated(int n) { return PointCloud(n, Point{0.5, 0.5}); }

// Cycle threading `cells` consecutive columns: two rows of points joined at both ends.
PointCloud long_band_cycle(int cells) {
    PointCloud pts;
    for (int j = 0; j < cells; ++j) pts.push_back({0.1, 0.1 + 1.4 * j});
    for (int j = cells - 1; j >= 0; --j) pts.push_back({1.9, 0.1 + 1.4 * j});
    return pts;
}

bool window_spans_at_most(const KernelWindow& w, int limit) {
    for (const auto& c : w.instance.cells())
        if (c.row < 1 || c.col < 1 || c.row > limit || c.col > limit) return false;
    return true;
}

}  // namespace

TEST_CASE("large clique cells") {
    auto inst = CliqueGridInstance::from_cloud(colocated(9), Model::Disk);
    REQUIRE(large_clique_cell(inst, 9).has_value());
    CHECK(*large_clique_cell(inst, 9) == Cell{1, 1});
    CHECK_FALSE(large_clique_cell(inst, 10).has_value());
}

TEST_CASE("stretched detection") {
    PointCloud tree;
    for (int i = 0; i < 20; ++i) tree.push_back({0.1, 0.1 + 1.9 * i});
    CHECK_FALSE(detect_stretched(CliqueGridInstance::from_cloud(tree, Model::Disk), 2));

    auto band = CliqueGridInstance::from_cloud(long_band_cycle(8), Model::Disk);
    std::vector<Vertex> cycle;
    REQUIRE(detect_stretched(band, 2, &cycle));
    CHECK(is_simple_cycle(band.graph(), cycle));
    int lo = 1 << 30, hi = 0;
    for (Vertex v : cycle) lo = std::min(lo, band.cell_of(v).col), hi = std::max(hi, band.cell_of(v).col);
    CHECK(hi - lo >= 4);

    // A 4-cycle confined to a 2x2 block of cells.
    auto small = CliqueGridInstance::from_cloud({{0.1, 0.1}, {0.1, 1.6}, {1.6, 1.6}, {1.6, 0.1}}, Model::Disk);
    CHECK(oracle::brute_longest_cycle(small.graph()) == 4);
    CHECK_FALSE(detect_stretched(small, 2));
}

TEST_CASE("stretched detection matches cycle enumeration") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = testing::random_instance(rng, 6 + static_cast<int>(rng() % 12), 2.5 + static_cast<double>(trial % 4));
        const int k = 1 + static_cast<int>(rng() % 3);
        bool expected = false;
        for (int len = 3; len <= inst.vertex_count() && !expected; ++len)
            for (const auto& c : oracle::enumerate_k_cycles(inst.graph(), len, 1u << 20)) {
                int rlo = 1 << 30, rhi = 0, clo = 1 << 30, chi = 0;
                for (Vertex v : c) {
                    rlo = std::min(rlo, inst.cell_of(v).row), rhi = std::max(rhi, inst.cell_of(v).row);
                    clo = std::min(clo, inst.cell_of(v).col), chi = std::max(chi, inst.cell_of(v).col);
                }
                if (rhi - rlo >= 2 * k || chi - clo >= 2 * k) {
                    expected = true;
                    break;
                }
            }
        CHECK(detect_stretched(inst, k) == expected);
    }
}

TEST_CASE("kernel shortcuts and small instances") {
    auto big = CliqueGridInstance::from_cloud(colocated(5), Model::Disk);
    auto out = turing_kernel(big, 5, KernelProblem::SubgraphIsomorphism);
    CHECK(out.shortcut);
    CHECK(out.reason == "clique-cell");

    std::mt19937_64 rng(42);
    PointCloud pts = testing::random_cloud(rng, 12, 4.0);
    auto inst = CliqueGridInstance::from_cloud(pts, Model::Disk);
    REQUIRE(inst.rep().rows <= 6);
    REQUIRE(inst.rep().cols <= 6);
    if (inst.max_cell_size() < 3) {
        auto small = turing_kernel(inst, 3, KernelProblem::SubgraphIsomorphism);
        REQUIRE_FALSE(small.shortcut);
        REQUIRE(small.windows.size() == 1);
        CHECK(small.windows[0].instance.vertex_count() == inst.vertex_count());
        CHECK(small.windows[0].instance.graph().edge_count() == inst.graph().edge_count());
    }
}

TEST_CASE("kernel windows are bounded and OR-equivalent for longest cycle") {
    std::mt19937_64 rng(43);
    int windowed = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 3 + static_cast<int>(rng() % 4);
        auto inst = testing::random_instance(rng, 10 + static_cast<int>(rng() % 30), 2.0 + static_cast<double>(trial % 4));
        const bool expected = oracle::has_cycle_at_least(inst.graph(), k);
        auto out = turing_kernel(inst, k, KernelProblem::LongestCycle);
        if (out.shortcut) {
            CHECK(expected);
            if (out.reason == "stretched") CHECK(is_simple_cycle(inst.graph(), out.stretched_cycle));
            continue;
        }
        ++windowed;
        bool any = false;
        std::set<std::vector<Vertex>> seen;
        for (const auto& w : out.windows) {
            CHECK(window_spans_at_most(w, 2 * k));
            CHECK(verify_representation(w.instance.graph(), w.instance.rep()));
            CHECK(static_cast<long long>(w.instance.vertex_count()) <= kernel_vertex_bound(k));
            CHECK(static_cast<long long>(w.instance.graph().edge_count()) <= kernel_edge_bound(k));
            auto vs = w.to_original;
            std::sort(vs.begin(), vs.end());
            CHECK(seen.insert(vs).second);
            any = any || oracle::has_cycle_at_least(w.instance.graph(), k);
        }
        CHECK(any == expected);
    }
    CHECK(windowed > 30);
}

TEST_CASE("small connected patterns are never stretched") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = testing::random_instance(rng, 8 + static_cast<int>(rng() % 10), 3.0);
        const int k = 3 + static_cast<int>(rng() % 3);
        for (const auto& c : oracle::enumerate_k_cycles(inst.graph(), k, 200)) {
            int rlo = 1 << 30, rhi = 0, clo = 1 << 30, chi = 0;
            for (Vertex v : c) {
                rlo = std::min(rlo, inst.cell_of(v).row), rhi = std::max(rhi, inst.cell_of(v).row);
                clo = std::min(clo, inst.cell_of(v).col), chi = std::max(chi, inst.cell_of(v).col);
            }
            CHECK(rhi - rlo < 2 * k);
            CHECK(chi - clo < 2 * k);
        }
    }
}

TEST_CASE("kernel report mentions every window") {
    std::mt19937_64 rng(45);
    auto inst = testing::random_instance(rng, 40, 3.0);
    auto out = turing_kernel(inst, 3, KernelProblem::LongestCycle);
    auto text = kernel_report(out, 3);
    CHECK_FALSE(text.empty());
    CHECK(kernel_vertex_bound(3) == 36 * 2);
}
