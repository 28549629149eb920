// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "udg/cliquegrid.hpp"
#include "udg/constants.hpp"
#include "udg/cycles.hpp"
#include "udg/decomp.hpp"
#include "udg/geometry.hpp"
#include "udg/hitting_packing.hpp"
#include "udg/kernel.hpp"
#include "udg/oracle.hpp"

using namespace udg;

namespace {

// Pinned tolerances.
constexpr double kSuiteSeconds = 600.0;
constexpr int kExactSuite = 300;
constexpr int kPathCycleSuite = 200;
constexpr int kFvsSuite = 200;
constexpr int kPackingSuite = 200;
constexpr int kRepresentationSuite = 1000;
constexpr int kKernelSuite = 100;
constexpr int kRerouteInstances = 50;
constexpr int kContractionInstances = 50;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct WitnessTally {
    std::size_t yes = 0;
    std::size_t failures = 0;
    void add(const SimpleGraph& g, const SolveResult& r, Problem problem, int k) {
        if (!r.answer) return;
        ++yes;
        if (!r.witness || !verify_witness(g, *r.witness, problem, k)) ++failures;
    }
};

struct Report {
    int failed = 0;
    void line(int id, const std::string& name, bool ok, const std::string& detail) {
        std::printf("[%s] %2d %-34s %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
        std::fflush(stdout);
        failed += !ok;
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int pick(std::mt19937_64& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

CliqueGridInstance random_mixed(std::mt19937_64& rng, int n_lo, int n_hi, double deg_lo, double deg_hi) {
    const int n = pick(rng, n_lo, n_hi);
    const Model model = rng() % 3 == 0 ? Model::Square : Model::Disk;
    const double degree = testing::uniform(rng, deg_lo, deg_hi);
    // Square clouds use a smaller region.
    const double side = testing::side_for_degree(n, degree) * (model == Model::Square ? 0.56 : 1.0);
    return CliqueGridInstance::from_cloud(testing::random_cloud(rng, n, side), model);
}

// Every adjacent cell pair keeps a witnessing edge inside `keep`.
bool backbone_sound(const CliqueGridInstance& inst, const std::vector<bool>& keep) {
    std::set<std::pair<Cell, Cell>> need, have;
    for (auto [u, v] : inst.graph().edges()) {
        Cell a = inst.cell_of(u), b = inst.cell_of(v);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        need.insert({a, b});
        if (keep[u] && keep[v]) have.insert({a, b});
    }
    return need == have;
}

struct BackboneAudit {
    std::size_t instances = 0;
    std::size_t violations = 0;
    int worst_cell = 0;
    int worst_degree = 0;
    void check(const CliqueGridInstance& inst) {
        ++instances;
        auto bb = minimal_backbone(inst);
        std::vector<bool> keep(inst.vertex_count(), false);
        for (Vertex v : bb.vertices) keep[v] = true;
        bool ok = backbone_sound(inst, keep);
        for (Vertex v : bb.vertices) {
            keep[v] = false;
            ok = ok && !backbone_sound(inst, keep);
            keep[v] = true;
        }
        std::map<Cell, int> per_cell;
        for (Vertex v : bb.vertices) worst_cell = std::max(worst_cell, ++per_cell[inst.cell_of(v)]);
        worst_degree = std::max(worst_degree, bb.graph.max_degree());
        ok = ok && worst_cell <= kBackboneCellBound && worst_degree <= kBackboneDegreeBound;
        violations += !ok;
    }
};

struct DecompAudit {
    std::size_t checked = 0;
    std::size_t failures = 0;
    void tree(const SimpleGraph& g) {
        auto r = exact_treewidth(g);
        if (r.status != TreewidthStatus::Ok) {
            ++failures;
            return;
        }
        checked += 3;
        failures += !verify_decomposition(g, r.decomposition);
        failures += !verify_nice(g, make_nice(r.decomposition));
        std::ostringstream first;
        write_td(first, r.decomposition, g.vertex_count());
        std::istringstream in(first.str());
        auto back = read_td(in);
        std::ostringstream second;
        write_td(second, back, g.vertex_count());
        failures += first.str() != second.str();
    }
    void cells(const CliqueGridInstance& inst) {
        auto r = build_cell_nctd(inst);
        ++checked;
        failures += r.status != TreewidthStatus::Ok || !verify_cell_nctd(inst, r.nctd) ||
                    !verify_nice(inst.graph(), expand_to_vertices(inst, r.nctd));
    }
    void baker(const CliqueGridInstance& inst, int k) {
        if (inst.max_cell_size() >= k) return;
        GoodFamily family(inst, k, FamilyMode::Full);
        for (std::size_t i = 0; i < family.size(); ++i) {
            const auto& m = family.member(i);
            auto ncpd = build_baker_ncpd(inst, m.deleted, m.kept, k);
            ++checked;
            failures += !verify_baker_ncpd(inst, m.deleted, ncpd, k);
        }
    }
};

// Ring of `positions` sites, some doubled, with no chords between sites.
PointCloud thick_ring(std::mt19937_64& rng, int positions) {
    const double pi = 3.14159265358979;
    const double spacing = 1.8;
    const double radius = spacing / (2.0 * std::sin(pi / positions));
    PointCloud pts;
    for (int i = 0; i < positions; ++i) {
        const double a = 2 * pi * i / positions;
        const double x = radius + 1 + radius * std::cos(a) + testing::uniform(rng, -0.03, 0.03);
        const double y = radius + 1 + radius * std::sin(a) + testing::uniform(rng, -0.03, 0.03);
        pts.push_back({x, y});
        if (rng() % 3 != 0) pts.push_back({x + 0.04, y + 0.04});
    }
    return pts;
}

// Two tight clusters side by side; the cycle alternates between them.
std::pair<CliqueGridInstance, std::vector<Vertex>> zigzag(std::mt19937_64& rng, int half) {
    PointCloud pts;
    for (int i = 0; i < half; ++i) pts.push_back({0.2 + testing::uniform(rng, 0, 0.1), 0.2 + testing::uniform(rng, 0, 0.1)});
    for (int i = 0; i < half; ++i) pts.push_back({1.7 + testing::uniform(rng, 0, 0.1), 0.2 + testing::uniform(rng, 0, 0.1)});
    auto inst = CliqueGridInstance::from_cloud(pts, Model::Disk);
    std::vector<Vertex> cycle;
    for (int i = 0; i < half; ++i) cycle.push_back(i), cycle.push_back(half + i);
    return {inst, cycle};
}

}  // namespace

int main() {
    Report report;
    WitnessTally witnesses;
    BackboneAudit backbones;
    DecompAudit decomps;

    {  // 1
        std::mt19937_64 rng(1001);
        auto t0 = Clock::now();
        int agree = 0, yes = 0;
        for (int trial = 0; trial < kExactSuite; ++trial) {
            auto inst = random_mixed(rng, 6, 40, 1.5, 8.0);
            const int k = pick(rng, 3, 8);
            auto r = exact_k_cycle(inst, k);
            agree += r.answer == oracle::brute_exact_cycle(inst.graph(), k);
            yes += r.answer;
            witnesses.add(inst.graph(), r, Problem::ExactCycle, k);
            backbones.check(inst);
            if (trial % 10 == 0) decomps.baker(inst, k);
        }
        const double s = seconds_since(t0);
        report.line(1, "exact k-cycle vs oracle", agree == kExactSuite && s <= kSuiteSeconds,
                    fmt("%d/%d agree, %d yes, %.1fs", agree, kExactSuite, yes, s));
    }

    {  // 2
        std::mt19937_64 rng(1002);
        auto t0 = Clock::now();
        int path_agree = 0, path_yes = 0;
        for (int trial = 0; trial < kPathCycleSuite; ++trial) {
            auto inst = random_mixed(rng, 6, 40, 1.0, 5.0);
            const int k = pick(rng, 1, 8);
            auto r = longest_path(inst, k);
            path_agree += r.answer == oracle::has_path_at_least(inst.graph(), k);
            path_yes += r.answer;
            witnesses.add(inst.graph(), r, Problem::LongestPath, k);
            backbones.check(inst);
        }
        const double path_s = seconds_since(t0);
        t0 = Clock::now();
        int cycle_agree = 0, cycle_yes = 0;
        for (int trial = 0; trial < kPathCycleSuite; ++trial) {
            auto inst = random_mixed(rng, 6, 40, 1.0, 5.0);
            const int k = pick(rng, 3, 8);
            auto r = longest_cycle(inst, k);
            cycle_agree += r.answer == oracle::has_cycle_at_least(inst.graph(), k);
            cycle_yes += r.answer;
            witnesses.add(inst.graph(), r, Problem::LongestCycle, k);
            backbones.check(inst);
        }
        const double cycle_s = seconds_since(t0);
        report.line(2, "longest path / cycle vs oracle",
                    path_agree == kPathCycleSuite && cycle_agree == kPathCycleSuite && path_s <= kSuiteSeconds &&
                        cycle_s <= kSuiteSeconds,
                    fmt("path %d/%d (%d yes, %.1fs), cycle %d/%d (%d yes, %.1fs)", path_agree, kPathCycleSuite,
                        path_yes, path_s, cycle_agree, kPathCycleSuite, cycle_yes, cycle_s));
    }

    {  // 3
        std::mt19937_64 rng(1003);
        int agree = 0, dual = 0, yes = 0;
        for (int trial = 0; trial < kFvsSuite; ++trial) {
            auto inst = random_mixed(rng, 4, 22, 1.5, 7.0);
            const int k = pick(rng, 0, 6);
            auto r = fvs(inst, k);
            agree += r.answer == oracle::brute_fvs(inst.graph(), k);
            yes += r.answer;
            witnesses.add(inst.graph(), r, Problem::Fvs, k);
            auto nctd = build_cell_nctd(inst);
            if (nctd.status == TreewidthStatus::Ok)
                dual += mif_dp(inst, nctd.nctd).max_forest + oracle::brute_min_fvs(inst.graph()) == inst.vertex_count();
            backbones.check(inst);
            decomps.cells(inst);
        }
        report.line(3, "fvs vs oracle, mif duality", agree == kFvsSuite && dual == kFvsSuite,
                    fmt("%d/%d agree, %d yes, duality %d/%d", agree, kFvsSuite, yes, dual, kFvsSuite));
    }

    {  // 4
        std::mt19937_64 rng(1004);
        int agree = 0, yes = 0;
        for (int trial = 0; trial < kPackingSuite; ++trial) {
            auto inst = random_mixed(rng, 4, 18, 1.5, 7.0);
            const int k = pick(rng, 1, 3);
            auto r = cycle_packing(inst, k);
            agree += r.answer == oracle::brute_cycle_packing(inst.graph(), k);
            yes += r.answer;
            witnesses.add(inst.graph(), r, Problem::CyclePacking, k);
            backbones.check(inst);
            decomps.cells(inst);
        }
        report.line(4, "cycle packing vs oracle", agree == kPackingSuite,
                    fmt("%d/%d agree, %d yes", agree, kPackingSuite, yes));
    }

    {  // 5
        std::mt19937_64 rng(1005);
        int valid = 0;
        for (int trial = 0; trial < kRepresentationSuite; ++trial) {
            const Model model = trial % 2 ? Model::Square : Model::Disk;
            const int n = pick(rng, 1, 500);
            auto pts = testing::random_cloud(rng, n, testing::uniform(rng, 1.0, 60.0));
            valid += verify_representation(build_geometric_graph(pts, model), compute_representation(pts, model));
        }
        const bool boundary = build_geometric_graph({{0, 0}, {2, 0}}, Model::Disk).edge_count() == 1 &&
                              build_geometric_graph({{0, 0}, {0, -2}}, Model::Disk).edge_count() == 1 &&
                              build_geometric_graph({{0, 0}, {2.0000001, 0}}, Model::Disk).edge_count() == 0 &&
                              build_geometric_graph({{0, 0}, {1, 1}}, Model::Square).edge_count() == 1 &&
                              build_geometric_graph({{0, 0}, {1, 1.0000001}}, Model::Square).edge_count() == 0;
        report.line(5, "representation validity", valid == kRepresentationSuite && boundary,
                    fmt("%d/%d verified, boundary cases %s", valid, kRepresentationSuite, boundary ? "ok" : "wrong"));
    }

    {  // 6
        std::mt19937_64 rng(1006);
        for (int trial = 0; trial < 20; ++trial) backbones.check(random_mixed(rng, 200, 500, 5.0, 30.0));
        report.line(6, "backbone bounds", backbones.violations == 0,
                    fmt("%zu instances, %zu violations, max per cell %d (<= %d), max degree %d (<= %d)",
                        backbones.instances, backbones.violations, backbones.worst_cell, kBackboneCellBound,
                        backbones.worst_degree, kBackboneDegreeBound));
    }

    {  // 7
        std::mt19937_64 rng(1007);
        int agree = 0, bounded = 0, shortcuts = 0;
        std::size_t windows = 0;
        for (int trial = 0; trial < kKernelSuite; ++trial) {
            auto inst = random_mixed(rng, 10, 40, 1.5, 5.0);
            const int k = pick(rng, 3, 6);
            const bool expected = oracle::has_cycle_at_least(inst.graph(), k);
            auto out = turing_kernel(inst, k, KernelProblem::LongestCycle);
            bool any = out.shortcut, ok = true;
            shortcuts += out.shortcut;
            for (const auto& w : out.windows) {
                ++windows;
                for (const auto& c : w.instance.cells()) ok = ok && c.row <= 2 * k && c.col <= 2 * k;
                ok = ok && verify_representation(w.instance.graph(), w.instance.rep());
                if (inst.max_cell_size() < k) ok = ok && w.instance.vertex_count() <= kernel_vertex_bound(k);
                any = any || oracle::has_cycle_at_least(w.instance.graph(), k);
            }
            agree += any == expected;
            bounded += ok;
        }
        report.line(7, "turing kernel contract", agree == kKernelSuite && bounded == kKernelSuite,
                    fmt("%d/%d OR-equivalent, %d/%d bounded, %zu windows, %d shortcuts", agree, kKernelSuite, bounded,
                        kKernelSuite, windows, shortcuts));
    }

    {  // 8
        std::mt19937_64 rng(1008);
        int instances = 0, cycles = 0, good = 0, rerouted = 0;
        auto audit = [&](const CliqueGridInstance& inst, const std::vector<Vertex>& cycle) {
            ++cycles;
            auto trace = reroute_crossings(inst, cycle, kCrossingsPerCellPair);
            bool ok = trace.cycle.size() == cycle.size() && is_simple_cycle(inst.graph(), trace.cycle) &&
                      max_pair_crossings(inst, trace.cycle) <= kCrossingsPerCellPair;
            for (std::size_t i = 1; i < trace.cross_counts.size(); ++i)
                ok = ok && trace.cross_counts[i] < trace.cross_counts[i - 1];
            good += ok;
            rerouted += trace.cross_counts.size() > 1;
        };
        while (instances < kRerouteInstances) {
            auto inst = random_mixed(rng, 8, 18, 5.0, 10.0);
            const int k = pick(rng, 4, 10);
            auto found = oracle::enumerate_k_cycles(inst.graph(), k, 200);
            if (found.empty()) continue;
            ++instances;
            for (const auto& c : found) audit(inst, c);
        }
        for (int half = 3; half <= 8; ++half) {
            auto [inst, cycle] = zigzag(rng, half);
            ++instances;
            audit(inst, cycle);
            for (const auto& c : oracle::enumerate_k_cycles(inst.graph(), 2 * half, 100)) audit(inst, c);
        }
        report.line(8, "crossing normalizer", good == cycles && rerouted > 0,
                    fmt("%d instances, %d/%d cycles normalized, %d needed rerouting", instances, good, cycles,
                        rerouted));
    }

    {  // 9
        std::mt19937_64 rng(1009);
        int exact_runs = 0, exact_agree = 0, mif_runs = 0, mif_agree = 0, pack_runs = 0, pack_agree = 0;
        for (int trial = 0; trial < 150; ++trial) {
            auto inst = random_mixed(rng, 4, 16, 1.5, 7.0);
            const int k = pick(rng, 3, 7);
            if (inst.max_cell_size() < k) {
                GoodFamily family(inst, k, FamilyMode::Full);
                for (std::size_t i = 0; i < family.size(); ++i) {
                    auto fi = family.materialize(i);
                    const bool a = dp_exact_cycle(fi.graph, fi.ncpd, k, {.limits = DpLimits::faithful(k)}).found;
                    const bool b = dp_exact_cycle(fi.graph, fi.ncpd, k, {.limits = DpLimits::unbounded()}).found;
                    ++exact_runs;
                    exact_agree += a == b;
                }
            }
            auto nctd = build_cell_nctd(inst);
            if (nctd.status != TreewidthStatus::Ok) continue;
            ++mif_runs;
            MifOptions no_prune;
            no_prune.prune = false;
            mif_agree += mif_dp(inst, nctd.nctd).max_forest == mif_dp(inst, nctd.nctd, no_prune).max_forest;
            const int kp = pick(rng, 1, 3);
            if (inst.max_cell_size() >= 3 * kp) continue;
            const bool unpruned = packing_dp(inst, nctd.nctd, kp, {.cap = PackingCap::Unpruned}).found;
            pack_runs += 2;
            pack_agree += packing_dp(inst, nctd.nctd, kp, {.cap = PackingCap::Faithful}).found == unpruned;
            pack_agree += packing_dp(inst, nctd.nctd, kp, {.cap = PackingCap::Adaptive}).found == unpruned;
        }
        report.line(9, "pruning safety",
                    exact_agree == exact_runs && mif_agree == mif_runs && pack_agree == pack_runs,
                    fmt("exact-cycle %d/%d, mif %d/%d, packing %d/%d", exact_agree, exact_runs, mif_agree, mif_runs,
                        pack_agree, pack_runs));
    }

    {  // 10
        std::mt19937_64 rng(1010);
        for (int trial = 0; trial < 100; ++trial) {
            auto inst = random_mixed(rng, 5, 40, 2.0, 8.0);
            decomps.tree(inst.graph());
            decomps.tree(cell_graph(inst).graph);
            decomps.cells(inst);
            decomps.baker(inst, pick(rng, 3, 9));
        }
        report.line(10, "decomposition validity", decomps.failures == 0,
                    fmt("%zu decompositions checked, %zu failures", decomps.checked, decomps.failures));
    }

    {  // 11
        std::mt19937_64 rng(1011);
        int instances = 0, steps = 0, preserved = 0, answered = 0, with_contraction = 0;
        while (instances < kContractionInstances) {
            const int k = pick(rng, 5, 7);
            const int positions = pick(rng, 2 * k, 2 * k + 4);
            auto inst = CliqueGridInstance::from_cloud(thick_ring(rng, positions), Model::Disk);
            if (inst.vertex_count() > 30) continue;
            // Every cycle is local (at most 4 vertices) or goes around the ring.
            bool shape = true;
            for (int l = k; l < 2 * k && shape; ++l) shape = !oracle::brute_exact_cycle(inst.graph(), l);
            if (!shape) continue;
            ++instances;
            const bool expected = oracle::has_cycle_at_least(inst.graph(), k);
            int local_steps = 0;
            bool ok = true;
            auto observer = [&](const CliqueGridInstance& h) {
                ++local_steps;
                ok = ok && oracle::has_cycle_at_least(h.graph(), k) == expected;
            };
            auto r = contraction_loop(inst, k, {}, observer);
            steps += local_steps;
            with_contraction += local_steps > 0;
            preserved += ok;
            auto full = longest_cycle(inst, k);
            // The loop alone may end undecided but never with a false YES.
            answered += full.answer == expected && (!r.answer || expected);
            witnesses.add(inst.graph(), full, Problem::LongestCycle, k);
            witnesses.add(inst.graph(), r, Problem::LongestCycle, k);
        }
        report.line(11, "contraction safety",
                    preserved == instances && answered == instances && with_contraction >= instances / 2,
                    fmt("%d instances (%d contracted), %d steps, %d/%d preserved, %d/%d answered", instances,
                        with_contraction, steps, preserved, instances, answered, instances));
    }

    report.line(12, "witness soundness", witnesses.failures == 0,
                fmt("%zu yes answers, %zu witness failures", witnesses.yes, witnesses.failures));

    return report.failed;
}
