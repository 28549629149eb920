#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "udg/cycles.hpp"
#include "udg/errors.hpp"
#include "udg/kernel.hpp"
#include "udg/oracle.hpp"

namespace udg {

namespace {

// Lowest index in [0, count) for which `test` holds. Indices above the best
// hit so far are skipped, so the answer does not depend on `jobs`.
template <class Test>
std::optional<std::size_t> first_success(std::size_t count, int jobs, Test&& test) {
    std::atomic<std::size_t> next{0}, best{count};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || i >= best.load()) return;
            if (test(i)) {
                std::size_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (best.load() == count) return std::nullopt;
    return best.load();
}

struct Goal {
    bool path = false;
    int lo = 0;
    int hi = 0;
};

// Vertex sets (in inst ids) worth solving: blocks or components of each
// window with at least `min_size` vertices, dropping sets contained in
// another kept set.
std::vector<std::vector<Vertex>> pieces_of(const std::vector<KernelWindow>& windows, bool components,
                                           int min_size) {
    std::vector<std::vector<Vertex>> all;
    for (const auto& w : windows) {
        const auto parts = components ? connected_components(w.instance.graph())
                                      : biconnected_blocks(w.instance.graph());
        for (const auto& part : parts) {
            if (static_cast<int>(part.size()) < min_size) continue;
            std::vector<Vertex> mapped;
            for (Vertex v : part) mapped.push_back(w.to_original[v]);
            std::sort(mapped.begin(), mapped.end());
            all.push_back(std::move(mapped));
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<std::vector<Vertex>> kept;
    for (auto& p : all) {
        const bool covered = std::any_of(kept.begin(), kept.end(), [&](const auto& q) {
            return std::includes(q.begin(), q.end(), p.begin(), p.end());
        });
        if (!covered) kept.push_back(std::move(p));
    }
    return kept;
}

DpOptions dp_options(const CycleSolveOptions& opts, int hi) {
    DpOptions d;
    d.limits = opts.faithful_caps ? DpLimits::faithful(hi) : DpLimits::unbounded();
    d.witness = opts.witness;
    d.validate = false;
    return d;
}

// Good family plus DP on one piece; the witness comes back in piece ids.
std::optional<std::vector<Vertex>> solve_piece(const CliqueGridInstance& piece, Goal goal,
                                               const CycleSolveOptions& opts, SolverStats& stats) {
    GoodFamily family(piece, goal.hi, opts.family_mode);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < family.size() && members.empty(); ++i)
        if (family.member(i).deleted.empty()) members.push_back(i);
    if (members.empty())
        for (std::size_t i = 0; i < family.size(); ++i) members.push_back(i);

    const DpOptions dopts = dp_options(opts, goal.hi);
    std::vector<DpResult> results(members.size());
    std::vector<std::vector<Vertex>> to_source(members.size());
    std::vector<bool> ran(members.size(), false);
    auto hit = first_success(members.size(), opts.jobs, [&](std::size_t i) {
        FamilyInstance fi = family.materialize(members[i]);
        results[i] = goal.path ? dp_path(fi.graph, fi.ncpd, goal.hi, dopts)
                               : dp_cycle_range(fi.graph, fi.ncpd, goal.lo, goal.hi, dopts);
        to_source[i] = std::move(fi.to_source);
        ran[i] = true;
        return results[i].found;
    });
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (!ran[i]) continue;
        ++stats.family_members;
        ++stats.dp_runs;
        stats.dp_states += results[i].states;
        stats.peak_table = std::max(stats.peak_table, results[i].peak_table);
    }
    if (!hit) return std::nullopt;
    std::vector<Vertex> w;
    for (Vertex v : results[*hit].witness) w.push_back(to_source[*hit][v]);
    return w;
}

SolveResult solve_windows(const CliqueGridInstance& inst, const std::vector<KernelWindow>& windows, Goal goal,
                          int min_piece, const CycleSolveOptions& opts) {
    SolveResult res;
    res.stats.windows = windows.size();
    for (const auto& piece : pieces_of(windows, goal.path, min_piece)) {
        const CliqueGridInstance sub = inst.induced(piece);
        auto w = solve_piece(sub, goal, opts, res.stats);
        if (!w) continue;
        res.answer = true;
        res.decided_by = "family-dp";
        if (opts.witness) {
            Witness wit{goal.path ? WitnessKind::Path : WitnessKind::Cycle, {}, {}};
            for (Vertex v : *w) wit.vertices.push_back(piece[v]);
            res.witness = std::move(wit);
        }
        return res;
    }
    res.decided_by = "family-dp";
    return res;
}

std::optional<std::size_t> big_cell(const CliqueGridInstance& inst, int k) {
    for (std::size_t c = 0; c < inst.cells().size(); ++c)
        if (static_cast<int>(inst.members(c).size()) >= k) return c;
    return std::nullopt;
}

SolveResult clique_answer(const CliqueGridInstance& inst, std::size_t cell, int k, WitnessKind kind,
                          bool witness) {
    SolveResult res;
    res.answer = true;
    res.decided_by = "clique-cell";
    if (witness) {
        auto m = inst.members(cell);
        res.witness = Witness{kind, {m.begin(), m.begin() + k}, {}};
    }
    return res;
}

// Cycle in `cycle` (ids of the contracted instance) mapped to the instance
// before the contraction.
std::vector<Vertex> lift_through(const Contraction& c, const SimpleGraph& before, const std::vector<Vertex>& cycle) {
    const Vertex merged = c.old_to_new[c.kept];
    std::vector<Vertex> back(c.instance.vertex_count(), -1);
    for (Vertex v = 0; v < static_cast<Vertex>(c.old_to_new.size()); ++v)
        if (c.old_to_new[v] != merged) back[c.old_to_new[v]] = v;
    std::vector<Vertex> out;
    const std::size_t m = cycle.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (cycle[i] != merged) {
            out.push_back(back[cycle[i]]);
            continue;
        }
        const Vertex prev = back[cycle[(i + m - 1) % m]], next = back[cycle[(i + 1) % m]];
        const Vertex a = c.kept, b = c.absorbed;
        auto adj = [&](Vertex x, Vertex y) { return before.has_edge(x, y); };
        if (adj(prev, a) && adj(b, next)) out.insert(out.end(), {a, b});
        else if (adj(prev, b) && adj(a, next)) out.insert(out.end(), {b, a});
        else if (adj(prev, a) && adj(a, next)) out.push_back(a);
        else if (adj(prev, b) && adj(b, next)) out.push_back(b);
        else throw StructureError("contracted cycle does not lift");
    }
    return out;
}

// Cycle of the cell graph lifted to the instance: consecutive cells are
// joined by one edge and each cell contributes its entry and exit vertex.
std::vector<Vertex> lift_cell_cycle(const CliqueGridInstance& inst, const CellGraph& cg,
                                    const std::vector<Vertex>& cells) {
    const std::size_t m = cells.size();
    std::vector<Vertex> exit(m, -1), entry(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t a = *inst.find_cell(cg.cells[cells[i]]);
        const std::size_t b = *inst.find_cell(cg.cells[cells[(i + 1) % m]]);
        for (Vertex u : inst.members(a)) {
            for (Vertex v : inst.members(b))
                if (inst.graph().has_edge(u, v)) {
                    exit[i] = u;
                    entry[(i + 1) % m] = v;
                    break;
                }
            if (exit[i] >= 0) break;
        }
    }
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < m; ++i) {
        out.push_back(entry[i]);
        if (exit[i] != entry[i]) out.push_back(exit[i]);
    }
    return out;
}

std::size_t pair_key_count(const CliqueGridInstance& inst, std::span<const Vertex> cycle,
                           std::map<std::pair<std::size_t, std::size_t>, int>* per_pair) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const std::size_t a = inst.cell_index(cycle[i]), b = inst.cell_index(cycle[(i + 1) % cycle.size()]);
        if (a == b) continue;
        ++n;
        if (per_pair) ++(*per_pair)[{std::min(a, b), std::max(a, b)}];
    }
    return n;
}

}  // namespace

SolveResult exact_k_cycle(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts) {
    if (k < 3) throw ParameterError("exact cycle length must be at least 3");
    if (auto c = big_cell(inst, k)) return clique_answer(inst, *c, k, WitnessKind::Cycle, opts.witness);
    const KernelOutput kernel = turing_kernel(inst, k, KernelProblem::SubgraphIsomorphism);
    return solve_windows(inst, kernel.windows, Goal{false, k, k}, k, opts);
}

SolveResult longest_path(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts) {
    if (k < 1) throw ParameterError("path length must be at least 1");
    if (auto c = big_cell(inst, k)) return clique_answer(inst, *c, k, WitnessKind::Path, opts.witness);
    const KernelOutput kernel = turing_kernel(inst, k, KernelProblem::SubgraphIsomorphism);
    return solve_windows(inst, kernel.windows, Goal{true, k, k}, k, opts);
}

SolveResult near_k_cycle(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts) {
    const int lo = std::max(k, 3), hi = 2 * k;
    if (hi < lo) return SolveResult{false, std::nullopt, {}, "range-empty"};
    if (auto c = big_cell(inst, lo)) return clique_answer(inst, *c, lo, WitnessKind::Cycle, opts.witness);
    const KernelOutput kernel = turing_kernel(inst, hi, KernelProblem::SubgraphIsomorphism);
    return solve_windows(inst, kernel.windows, Goal{false, lo, hi}, lo, opts);
}

SolveResult contraction_loop(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts,
                             const ContractionObserver& observer) {
    std::vector<Contraction> history;
    std::vector<CliqueGridInstance> before{inst};
    SolverStats stats;
    for (;;) {
        SolveResult r = near_k_cycle(before.back(), k, opts);
        stats.absorb(r.stats);
        if (r.answer) {
            if (r.witness)
                for (std::size_t i = history.size(); i-- > 0;)
                    r.witness->vertices = lift_through(history[i], before[i].graph(), r.witness->vertices);
            r.stats = stats;
            r.decided_by = history.empty() ? "near-k" : "contraction";
            return r;
        }
        auto pair = first_contractible_pair(before.back());
        if (!pair) break;
        history.push_back(contract_pair(before.back(), pair->first, pair->second));
        ++stats.contractions;
        before.push_back(history.back().instance);
        if (observer) observer(before.back());
    }
    return SolveResult{false, std::nullopt, stats, "contraction"};
}

SolveResult longest_cycle(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts) {
    k = std::max(k, 3);
    const KernelOutput kernel = turing_kernel(inst, k, KernelProblem::LongestCycle);
    if (kernel.shortcut) {
        SolveResult res;
        res.answer = true;
        res.decided_by = kernel.reason;
        if (opts.witness) {
            std::vector<Vertex> cycle = kernel.stretched_cycle;
            if (kernel.clique_cell) {
                auto m = inst.members(*inst.find_cell(*kernel.clique_cell));
                cycle.assign(m.begin(), m.begin() + k);
            }
            res.witness = Witness{WitnessKind::Cycle, std::move(cycle), {}};
        }
        return res;
    }
    SolveResult res;
    res.stats.windows = kernel.windows.size();
    for (const auto& piece : pieces_of(kernel.windows, false, k)) {
        const CliqueGridInstance sub = inst.induced(piece);
        auto finish = [&](std::vector<Vertex> cycle, const std::string& by) {
            res.answer = true;
            res.decided_by = by;
            if (opts.witness) {
                for (Vertex& v : cycle) v = piece[v];
                res.witness = Witness{WitnessKind::Cycle, std::move(cycle), {}};
            }
            return res;
        };

        const CellGraph cg = cell_graph(sub);
        const TreewidthResult tw = exact_treewidth(cg.graph, opts.cell_width_cap, opts.treewidth_budget);
        if (tw.status == TreewidthStatus::Ok) {
            const TwCycleResult r = tw_longest_cycle(cg.graph, make_nice(tw.decomposition), k, opts.witness);
            if (r.found) return finish(opts.witness ? lift_cell_cycle(sub, cg, r.cycle) : std::vector<Vertex>{},
                                       "cell-graph-dp");
        } else {
            std::vector<Vertex> cells;
            if (oracle::has_cycle_at_least(cg.graph, k, {}, opts.witness ? &cells : nullptr))
                return finish(opts.witness ? lift_cell_cycle(sub, cg, cells) : std::vector<Vertex>{},
                              "cell-graph-oracle");
        }

        SolveResult r = contraction_loop(sub, k, opts);
        res.stats.absorb(r.stats);
        if (r.answer) return finish(r.witness ? r.witness->vertices : std::vector<Vertex>{}, r.decided_by);
    }
    res.decided_by = "contraction";
    return res;
}

std::size_t count_cross_edges(const CliqueGridInstance& inst, std::span<const Vertex> cycle) {
    return pair_key_count(inst, cycle, nullptr);
}

int max_pair_crossings(const CliqueGridInstance& inst, std::span<const Vertex> cycle) {
    std::map<std::pair<std::size_t, std::size_t>, int> per_pair;
    pair_key_count(inst, cycle, &per_pair);
    int best = 0;
    for (const auto& [key, n] : per_pair) best = std::max(best, n);
    return best;
}

RerouteTrace reroute_crossings(const CliqueGridInstance& inst, std::vector<Vertex> cycle, int max_per_pair) {
    if (max_per_pair < 1) throw ParameterError("crossing bound must be positive");
    RerouteTrace trace;
    for (;;) {
        const std::size_t m = cycle.size();
        trace.cross_counts.push_back(count_cross_edges(inst, cycle));
        std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> directed;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t a = inst.cell_index(cycle[i]), b = inst.cell_index(cycle[(i + 1) % m]);
            if (a != b) directed[{a, b}].push_back(i);
        }
        std::optional<std::pair<std::size_t, std::size_t>> swap;
        for (const auto& [key, pos] : directed) {
            const auto reverse = directed.find({key.second, key.first});
            const std::size_t total = pos.size() + (reverse == directed.end() ? 0 : reverse->second.size());
            if (static_cast<int>(total) > max_per_pair && pos.size() >= 2) {
                swap = std::pair{pos[0], pos[1]};
                break;
            }
        }
        if (!swap) break;
        // Edges (c_i, c_i+1) and (c_j, c_j+1) become (c_i, c_j) and (c_i+1, c_j+1).
        std::reverse(cycle.begin() + static_cast<std::ptrdiff_t>(swap->first + 1),
                     cycle.begin() + static_cast<std::ptrdiff_t>(swap->second + 1));
    }
    trace.cycle = std::move(cycle);
    return trace;
}

}  // namespace udg
