#include "udg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <string>
#include <unordered_map>

#include "udg/errors.hpp"

namespace udg::oracle {

namespace {

using Mask = std::uint32_t;

void check_size(const SimpleGraph& g, int limit, const char* what) {
    if (g.vertex_count() > limit)
        throw BudgetError(std::string(what) + ": graph has " + std::to_string(g.vertex_count()) +
                          " vertices, limit is " + std::to_string(limit));
}

struct Counter {
    std::uint64_t used = 0;
    std::uint64_t limit;
    explicit Counter(const Budget& b) : limit(b.max_objects) {}
    void tick() {
        if (++used > limit) throw BudgetError("oracle object budget exhausted");
    }
};

std::vector<Mask> adjacency_masks(const SimpleGraph& g) {
    std::vector<Mask> adj(g.vertex_count(), 0);
    for (auto [u, v] : g.edges()) adj[u] |= Mask{1} << v, adj[v] |= Mask{1} << u;
    return adj;
}

// DFS for simple cycles with smallest vertex `path[0]`. `visit` gets each
// closing (path ends adjacent to the start, length >= 3) and returns true to stop.
bool cycle_dfs(const SimpleGraph& g, std::vector<Vertex>& path, std::vector<bool>& on_path, int max_len,
               Counter& counter, const std::function<bool(const std::vector<Vertex>&)>& visit) {
    counter.tick();
    const Vertex s = path.front(), last = path.back();
    if (path.size() >= 3 && g.has_edge(last, s) && visit(path)) return true;
    if (static_cast<int>(path.size()) >= max_len) return false;
    for (Vertex w : g.neighbors(last)) {
        if (w <= s || on_path[w]) continue;
        on_path[w] = true;
        path.push_back(w);
        const bool stop = cycle_dfs(g, path, on_path, max_len, counter, visit);
        path.pop_back();
        on_path[w] = false;
        if (stop) return true;
    }
    return false;
}

bool for_each_cycle(const SimpleGraph& g, int max_len, const Budget& budget,
                    const std::function<bool(const std::vector<Vertex>&)>& visit) {
    check_size(g, budget.max_vertices, "cycle enumeration");
    Counter counter(budget);
    std::vector<bool> on_path(g.vertex_count(), false);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        std::vector<Vertex> path{s};
        on_path[s] = true;
        const bool stop = cycle_dfs(g, path, on_path, max_len, counter, visit);
        on_path[s] = false;
        if (stop) return true;
    }
    return false;
}

// Held-Karp tables. paths[m]: vertices v such that some path covers exactly
// m and ends at v. cycles_from_min[m]: vertices v with a path over m from
// min(m) to v.
struct HeldKarp {
    std::vector<Mask> paths;
    std::vector<Mask> rooted;
    std::vector<Mask> adj;
    int n = 0;

    HeldKarp(const SimpleGraph& g, bool want_paths, bool want_cycles) : adj(adjacency_masks(g)), n(g.vertex_count()) {
        const std::size_t size = std::size_t{1} << n;
        if (want_paths) paths.assign(size, 0);
        if (want_cycles) rooted.assign(size, 0);
        for (std::size_t m = 1; m < size; ++m) {
            const Mask mask = static_cast<Mask>(m);
            const int s = std::countr_zero(mask);
            if (std::popcount(mask) == 1) {
                if (want_paths) paths[m] = mask;
                if (want_cycles) rooted[m] = mask;
                continue;
            }
            for (Mask rest = mask; rest; rest &= rest - 1) {
                const int v = std::countr_zero(rest);
                const Mask prev = mask & ~(Mask{1} << v);
                if (want_paths && (paths[prev] & adj[v])) paths[m] |= Mask{1} << v;
                if (want_cycles && v != s && (rooted[prev] & adj[v])) rooted[m] |= Mask{1} << v;
            }
        }
    }

    bool has_cycle(Mask mask) const {
        if (std::popcount(mask) < 3) return false;
        return rooted[mask] & adj[std::countr_zero(mask)];
    }

    std::vector<Vertex> trace_path(Mask mask, Vertex end) const {
        std::vector<Vertex> seq{end};
        while (std::popcount(mask) > 1) {
            const Mask prev = mask & ~(Mask{1} << end);
            const Mask options = paths[prev] & adj[end];
            end = std::countr_zero(options);
            mask = prev;
            seq.push_back(end);
        }
        return seq;
    }

    std::vector<Vertex> trace_cycle(Mask mask) const {
        const int s = std::countr_zero(mask);
        Vertex end = std::countr_zero(rooted[mask] & adj[s]);
        std::vector<Vertex> seq{end};
        while (std::popcount(mask) > 1) {
            const Mask prev = mask & ~(Mask{1} << end);
            end = std::countr_zero(rooted[prev] & adj[end]);
            mask = prev;
            seq.push_back(end);
        }
        return seq;
    }
};

constexpr int kHeldKarpLimit = 24;
constexpr int kHeldKarpPieceLimit = 22;

std::vector<Vertex> map_back(const std::vector<Vertex>& seq, const std::vector<Vertex>& piece) {
    std::vector<Vertex> out;
    for (Vertex v : seq) out.push_back(piece[v]);
    return out;
}

}  // namespace

bool brute_exact_cycle(const SimpleGraph& g, int k, const Budget& budget, std::vector<Vertex>* witness) {
    if (k < 3) return false;
    return for_each_cycle(g, k, budget, [&](const std::vector<Vertex>& path) {
        if (static_cast<int>(path.size()) != k) return false;
        if (witness) *witness = path;
        return true;
    });
}

std::vector<std::vector<Vertex>> enumerate_k_cycles(const SimpleGraph& g, int k, std::size_t limit,
                                                    const Budget& budget) {
    std::vector<std::vector<Vertex>> out;
    if (k < 3 || limit == 0) return out;
    for_each_cycle(g, k, budget, [&](const std::vector<Vertex>& path) {
        if (static_cast<int>(path.size()) == k && path[1] < path.back()) out.push_back(path);
        return out.size() >= limit;
    });
    return out;
}

int brute_longest_path(const SimpleGraph& g, const Budget& budget) {
    check_size(g, std::min(budget.max_vertices, kHeldKarpLimit), "Held-Karp");
    if (g.vertex_count() == 0) return 0;
    HeldKarp hk(g, true, false);
    int best = 0;
    for (std::size_t m = 1; m < hk.paths.size(); ++m)
        if (hk.paths[m]) best = std::max(best, std::popcount(static_cast<Mask>(m)));
    return best;
}

std::vector<bool> cycle_lengths(const SimpleGraph& g, const Budget& budget) {
    check_size(g, std::min(budget.max_vertices, kHeldKarpLimit), "Held-Karp");
    std::vector<bool> lengths(g.vertex_count() + 1, false);
    if (g.vertex_count() < 3) return lengths;
    HeldKarp hk(g, false, true);
    for (std::size_t m = 1; m < hk.rooted.size(); ++m)
        if (hk.has_cycle(static_cast<Mask>(m))) lengths[std::popcount(static_cast<Mask>(m))] = true;
    return lengths;
}

int brute_longest_cycle(const SimpleGraph& g, const Budget& budget) {
    auto lengths = cycle_lengths(g, budget);
    for (int l = static_cast<int>(lengths.size()) - 1; l >= 3; --l)
        if (lengths[l]) return l;
    return 0;
}

bool has_path_at_least(const SimpleGraph& g, int k, const Budget& budget, std::vector<Vertex>* witness) {
    check_size(g, budget.max_vertices, "path search");
    if (k <= 0) k = 1;
    for (const auto& comp : connected_components(g)) {
        if (static_cast<int>(comp.size()) < k) continue;
        const SimpleGraph h = induced_subgraph(g, comp);
        if (h.vertex_count() <= kHeldKarpPieceLimit) {
            HeldKarp hk(h, true, false);
            for (std::size_t m = 1; m < hk.paths.size(); ++m) {
                const Mask mask = static_cast<Mask>(m);
                if (std::popcount(mask) < k || !hk.paths[m]) continue;
                if (witness) *witness = map_back(hk.trace_path(mask, std::countr_zero(hk.paths[m])), comp);
                return true;
            }
            continue;
        }
        // Any longer path contains a k-vertex subpath, so depth k suffices.
        Counter counter(budget);
        std::vector<Vertex> path;
        std::vector<bool> on(h.vertex_count(), false);
        std::function<bool()> grow = [&]() {
            counter.tick();
            if (static_cast<int>(path.size()) >= k) return true;
            for (Vertex w : h.neighbors(path.back())) {
                if (on[w]) continue;
                on[w] = true;
                path.push_back(w);
                if (grow()) return true;
                path.pop_back();
                on[w] = false;
            }
            return false;
        };
        for (Vertex s = 0; s < h.vertex_count(); ++s) {
            path = {s};
            on.assign(h.vertex_count(), false);
            on[s] = true;
            if (grow()) {
                if (witness) *witness = map_back(path, comp);
                return true;
            }
        }
    }
    return false;
}

bool has_cycle_at_least(const SimpleGraph& g, int k, const Budget& budget, std::vector<Vertex>* witness) {
    check_size(g, budget.max_vertices, "cycle search");
    k = std::max(k, 3);
    for (const auto& block : biconnected_blocks(g)) {
        if (static_cast<int>(block.size()) < k) continue;
        const SimpleGraph h = induced_subgraph(g, block);
        if (h.vertex_count() <= kHeldKarpPieceLimit) {
            HeldKarp hk(h, false, true);
            for (std::size_t m = 1; m < hk.rooted.size(); ++m) {
                const Mask mask = static_cast<Mask>(m);
                if (std::popcount(mask) < k || !hk.has_cycle(mask)) continue;
                if (witness) *witness = map_back(hk.trace_cycle(mask), block);
                return true;
            }
            continue;
        }
        std::vector<Vertex> found;
        const bool hit = for_each_cycle(h, h.vertex_count(), budget, [&](const std::vector<Vertex>& path) {
            if (static_cast<int>(path.size()) < k) return false;
            found = path;
            return true;
        });
        if (hit) {
            if (witness) *witness = map_back(found, block);
            return true;
        }
    }
    return false;
}

bool brute_fvs(const SimpleGraph& g, int k, const Budget& budget, std::vector<Vertex>* witness) {
    check_size(g, budget.max_vertices, "FVS enumeration");
    const int n = g.vertex_count();
    if (k < 0) return false;
    Counter counter(budget);
    std::vector<bool> removed(n, false);
    std::vector<Vertex> chosen;
    std::function<bool(int, int)> pick = [&](int from, int left) {
        counter.tick();
        if (left == 0) return is_forest_without(g, removed);
        for (int v = from; v < n; ++v) {
            removed[v] = true;
            chosen.push_back(v);
            if (pick(v + 1, left - 1)) return true;
            chosen.pop_back();
            removed[v] = false;
        }
        return false;
    };
    for (int size = 0; size <= std::min(k, n); ++size) {
        chosen.clear();
        if (pick(0, size)) {
            if (witness) *witness = chosen;
            return true;
        }
    }
    return false;
}

int brute_min_fvs(const SimpleGraph& g, const Budget& budget) {
    for (int k = 0;; ++k)
        if (brute_fvs(g, k, budget)) return k;
}

int brute_max_induced_forest(const SimpleGraph& g, const Budget& budget) {
    return g.vertex_count() - brute_min_fvs(g, budget);
}

std::vector<std::vector<Vertex>> induced_cycles(const SimpleGraph& g, const Budget& budget) {
    check_size(g, budget.max_vertices, "induced cycle enumeration");
    Counter counter(budget);
    const int n = g.vertex_count();
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> path;
    std::vector<bool> on(n, false);
    // Extending the path by w is allowed only if w sees no path vertex other
    // than the last one and, when closing, the start.
    std::function<void()> grow = [&]() {
        counter.tick();
        const Vertex s = path.front(), last = path.back();
        for (Vertex w : g.neighbors(last)) {
            if (w <= s || on[w]) continue;
            bool chord = false;
            for (std::size_t i = 1; i + 1 < path.size() && !chord; ++i) chord = g.has_edge(w, path[i]);
            if (chord) continue;
            if (path.size() >= 2 && g.has_edge(w, s)) {
                if (path[1] < w) {
                    out.push_back(path);
                    out.back().push_back(w);
                }
                continue;
            }
            on[w] = true;
            path.push_back(w);
            grow();
            path.pop_back();
            on[w] = false;
        }
    };
    for (Vertex s = 0; s < n; ++s) {
        path = {s};
        on[s] = true;
        grow();
        on[s] = false;
    }
    return out;
}

namespace {

bool pack(const std::vector<std::vector<Mask>>& cycles_at, Mask avail, int need, Counter& counter,
          std::unordered_map<std::uint64_t, bool>& memo, std::vector<Mask>& chosen) {
    if (need == 0) return true;
    if (std::popcount(avail) < 3 * need) return false;
    const std::uint64_t key = (std::uint64_t{avail} << 8) | static_cast<std::uint64_t>(need);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    counter.tick();
    const int v = std::countr_zero(avail);
    bool ok = pack(cycles_at, avail & ~(Mask{1} << v), need, counter, memo, chosen);
    for (std::size_t i = 0; !ok && i < cycles_at[v].size(); ++i) {
        const Mask c = cycles_at[v][i];
        if ((c & avail) != c) continue;
        chosen.push_back(c);
        ok = pack(cycles_at, avail & ~c, need - 1, counter, memo, chosen);
        if (!ok) chosen.pop_back();
    }
    memo[key] = ok;
    return ok;
}

}  // namespace

bool brute_cycle_packing(const SimpleGraph& g, int k, const Budget& budget,
                         std::vector<std::vector<Vertex>>* witness) {
    check_size(g, std::min(budget.max_vertices, 30), "cycle packing");
    if (k <= 0) {
        if (witness) witness->clear();
        return true;
    }
    const auto cycles = induced_cycles(g, budget);
    std::vector<std::vector<Mask>> cycles_at(g.vertex_count());
    std::unordered_map<Mask, std::size_t> index;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        Mask m = 0;
        for (Vertex v : cycles[i]) m |= Mask{1} << v;
        index[m] = i;
        cycles_at[cycles[i].front()].push_back(m);
    }
    Counter counter(budget);
    std::unordered_map<std::uint64_t, bool> memo;
    std::vector<Mask> chosen;
    const Mask all = g.vertex_count() == 32 ? ~Mask{0} : (Mask{1} << g.vertex_count()) - 1;
    const bool ok = pack(cycles_at, all, k, counter, memo, chosen);
    if (ok && witness) {
        witness->clear();
        for (Mask m : chosen) witness->push_back(cycles[index.at(m)]);
    }
    return ok;
}

bool brute_cycle_packing_unrestricted(const SimpleGraph& g, int k, const Budget& budget) {
    check_size(g, std::min(budget.max_vertices, 16), "unrestricted cycle packing");
    if (k <= 0) return true;
    HeldKarp hk(g, false, true);
    std::vector<std::vector<Mask>> cycles_at(g.vertex_count());
    for (std::size_t m = 1; m < hk.rooted.size(); ++m)
        if (hk.has_cycle(static_cast<Mask>(m))) cycles_at[std::countr_zero(static_cast<Mask>(m))].push_back(static_cast<Mask>(m));
    Counter counter(budget);
    std::unordered_map<std::uint64_t, bool> memo;
    std::vector<Mask> chosen;
    return pack(cycles_at, static_cast<Mask>(hk.rooted.size() - 1), k, counter, memo, chosen);
}

int brute_treewidth(const SimpleGraph& g, const Budget& budget) {
    check_size(g, std::min(budget.max_vertices, 16), "treewidth DP");
    const int n = g.vertex_count();
    if (n == 0) return -1;
    const auto adj = adjacency_masks(g);
    // q(S, v): vertices outside S + v reachable from v through S.
    auto q = [&](Mask s, int v) {
        Mask seen = Mask{1} << v, frontier = seen, out = 0;
        while (frontier) {
            const int x = std::countr_zero(frontier);
            frontier &= frontier - 1;
            for (Mask nb = adj[x] & ~seen; nb; nb &= nb - 1) {
                const int y = std::countr_zero(nb);
                seen |= Mask{1} << y;
                if (s >> y & 1) frontier |= Mask{1} << y;
                else out |= Mask{1} << y;
            }
        }
        return std::popcount(out);
    };
    const std::size_t size = std::size_t{1} << n;
    std::vector<int> tw(size, 1 << 20);
    tw[0] = -1;
    Counter counter(budget);
    for (std::size_t m = 1; m < size; ++m) {
        const Mask s = static_cast<Mask>(m);
        for (Mask rest = s; rest; rest &= rest - 1) {
            counter.tick();
            const int v = std::countr_zero(rest);
            const Mask prev = s & ~(Mask{1} << v);
            tw[m] = std::min(tw[m], std::max(tw[prev], q(prev, v)));
        }
    }
    return tw[size - 1];
}

}  // namespace udg::oracle
