#include "udg/kernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <set>
#include <sstream>

#include "udg/errors.hpp"

namespace udg {

std::optional<Cell> large_clique_cell(const CliqueGridInstance& inst, int threshold) {
    if (threshold < 1) throw ParameterError("clique threshold must be positive");
    for (std::size_t c = 0; c < inst.cells().size(); ++c)
        if (static_cast<int>(inst.members(c).size()) >= threshold) return inst.cells()[c];
    return std::nullopt;
}

namespace {

// Unit-capacity flow on the split-vertex digraph: v_in = 2v, v_out = 2v + 1.
class SplitFlow {
public:
    SplitFlow(const SimpleGraph& g, Vertex s, Vertex t) : s_(s), t_(t), head_(2 * g.vertex_count(), -1) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) add_arc(2 * v, 2 * v + 1, (v == s || v == t) ? 2 : 1);
        for (Vertex u = 0; u < g.vertex_count(); ++u)
            for (Vertex w : g.neighbors(u)) add_arc(2 * u + 1, 2 * w, 1);
    }

    // Up to two augmenting paths from s_out to t_in, BFS in arc order.
    int run() {
        int flow = 0;
        while (flow < 2 && augment()) ++flow;
        return flow;
    }

    // Decomposes the flow into vertex paths s..t.
    std::vector<std::vector<Vertex>> paths() {
        std::vector<std::vector<Vertex>> out;
        for (int round = 0; round < 2; ++round) {
            std::vector<Vertex> path{s_};
            int node = 2 * s_ + 1;
            while (node != 2 * t_) {
                int next = -1;
                for (int a = head_[node]; a >= 0; a = arcs_[a].next)
                    if (arcs_[a].original && arcs_[a].cap == 0 && !arcs_[a].used) {
                        arcs_[a].used = true;
                        next = arcs_[a].to;
                        break;
                    }
                if (next < 0) return {};
                if (next % 2 == 0) {
                    path.push_back(next / 2);
                    if (next == 2 * t_) break;
                    node = next + 1;
                } else {
                    node = next;
                }
            }
            out.push_back(path);
        }
        return out;
    }

private:
    struct Arc {
        int to, cap, next;
        bool original;
        bool used = false;
    };

    void add_arc(int from, int to, int cap) {
        arcs_.push_back({to, cap, head_[from], true});
        head_[from] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, 0, head_[to], false});
        head_[to] = static_cast<int>(arcs_.size()) - 1;
    }

    bool augment() {
        std::vector<int> via(head_.size(), -1);
        std::vector<bool> seen(head_.size(), false);
        std::queue<int> q;
        const int source = 2 * s_ + 1, sink = 2 * t_;
        q.push(source);
        seen[source] = true;
        while (!q.empty() && !seen[sink]) {
            int x = q.front();
            q.pop();
            for (int a = head_[x]; a >= 0; a = arcs_[a].next)
                if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = true;
                    via[arcs_[a].to] = a;
                    q.push(arcs_[a].to);
                }
        }
        if (!seen[sink]) return false;
        for (int x = sink; x != source;) {
            const int a = via[x];
            arcs_[a].cap -= 1;
            arcs_[a ^ 1].cap += 1;
            x = arcs_[a ^ 1].to;
        }
        return true;
    }

    Vertex s_, t_;
    std::vector<int> head_;
    std::vector<Arc> arcs_;
};

}  // namespace

bool detect_stretched(const CliqueGridInstance& inst, int k, std::vector<Vertex>* cycle) {
    const SimpleGraph& g = inst.graph();
    const int n = g.vertex_count();
    // Two vertices lie on a common cycle iff they share a block of >= 3
    // vertices; the block test only filters candidates for the flow test.
    std::vector<std::vector<int>> blocks_of(n);
    const auto blocks = biconnected_blocks(g);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (blocks[b].size() >= 3)
            for (Vertex v : blocks[b]) blocks_of[v].push_back(static_cast<int>(b));
    auto share_block = [&](Vertex u, Vertex v) {
        for (int b : blocks_of[u])
            if (std::binary_search(blocks[b].begin(), blocks[b].end(), v)) return true;
        return false;
    };
    for (Vertex u = 0; u < n; ++u) {
        if (blocks_of[u].empty()) continue;
        for (Vertex v = u + 1; v < n; ++v) {
            const Cell a = inst.cell_of(u), b = inst.cell_of(v);
            if (std::abs(a.row - b.row) < 2 * k && std::abs(a.col - b.col) < 2 * k) continue;
            if (!share_block(u, v)) continue;
            SplitFlow flow(g, u, v);
            if (flow.run() < 2) continue;
            if (cycle) {
                auto ps = flow.paths();
                if (ps.size() != 2) throw StructureError("flow decomposition failed");
                *cycle = ps[0];
                for (std::size_t i = ps[1].size() - 1; i-- > 1;) cycle->push_back(ps[1][i]);
            }
            return true;
        }
    }
    return false;
}

KernelOutput turing_kernel(const CliqueGridInstance& inst, int k, KernelProblem problem) {
    if (k < 1) throw ParameterError("kernel parameter must be positive");
    KernelOutput out;
    if (auto cell = large_clique_cell(inst, k)) {
        out.shortcut = true;
        out.reason = "clique-cell";
        out.clique_cell = cell;
        return out;
    }
    if (problem == KernelProblem::LongestCycle && detect_stretched(inst, k, &out.stretched_cycle)) {
        out.shortcut = true;
        out.reason = "stretched";
        return out;
    }
    const int t = inst.rep().rows, tp = inst.rep().cols;
    std::set<std::vector<Vertex>> seen;
    std::vector<std::pair<Cell, std::vector<Vertex>>> candidates;
    for (int p = 1; p <= t; ++p)
        for (int q = 1; q <= tp; ++q) {
            std::vector<Vertex> keep;
            for (std::size_t c = 0; c < inst.cells().size(); ++c) {
                const Cell cell = inst.cells()[c];
                if (cell.row >= p && cell.row < p + 2 * k && cell.col >= q && cell.col < q + 2 * k) {
                    auto m = inst.members(c);
                    keep.insert(keep.end(), m.begin(), m.end());
                }
            }
            if (keep.empty()) continue;
            std::sort(keep.begin(), keep.end());
            if (seen.insert(keep).second) candidates.push_back({{p, q}, std::move(keep)});
        }
    // Drop windows contained in another window.
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& keep = candidates[i].second;
        bool dominated = false;
        for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
            const auto& other = candidates[j].second;
            dominated = j != i && other.size() > keep.size() &&
                        std::includes(other.begin(), other.end(), keep.begin(), keep.end());
        }
        if (dominated) continue;
        const auto [p, q] = candidates[i].first;
        Representation rep{{}, std::min(2 * k, t), std::min(2 * k, tp)};
        for (Vertex v : keep) rep.cell_of.push_back({inst.cell_of(v).row - p + 1, inst.cell_of(v).col - q + 1});
        KernelWindow w{{p, q},
                       CliqueGridInstance(induced_subgraph(inst.graph(), keep), std::move(rep),
                                          CliqueGridInstance::AssumeValid{}),
                       keep};
        out.windows.push_back(std::move(w));
    }
    return out;
}

long long kernel_vertex_bound(int k) { return 4LL * k * k * (k - 1); }

long long kernel_edge_bound(int k) {
    const long long max_degree = std::max(0LL, 25LL * (k - 1) - 1);
    return kernel_vertex_bound(k) * max_degree / 2;
}

std::string kernel_report(const KernelOutput& out, int k) {
    std::ostringstream os;
    if (out.shortcut) {
        os << "shortcut=YES reason=" << out.reason << '\n';
        if (out.clique_cell) os << "cell=" << out.clique_cell->row << ',' << out.clique_cell->col << '\n';
        return os.str();
    }
    const long long vb = kernel_vertex_bound(k), eb = kernel_edge_bound(k);
    bool all_ok = true;
    os << "windows=" << out.windows.size() << " vertex_bound=" << vb << " edge_bound=" << eb << '\n';
    for (const auto& w : out.windows) {
        const auto nv = w.instance.vertex_count();
        const auto ne = w.instance.graph().edge_count();
        const bool ok = nv <= vb && static_cast<long long>(ne) <= eb;
        all_ok = all_ok && ok;
        os << "window origin=" << w.origin.row << ',' << w.origin.col << " vertices=" << nv << " edges=" << ne
           << " within_bound=" << (ok ? "yes" : "no") << '\n';
    }
    os << "audit=" << (all_ok ? "pass" : "fail") << '\n';
    return os.str();
}

}  // namespace udg
