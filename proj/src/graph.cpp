#include "udg/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "udg/errors.hpp"

namespace udg {

SimpleGraph::SimpleGraph(int vertex_count) {
    if (vertex_count < 0) throw InputError("negative vertex count");
    adj_.resize(vertex_count);
}

bool SimpleGraph::add_edge(Vertex u, Vertex v) {
    const int n = vertex_count();
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw InputError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return false;
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
    return true;
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const Vertex target = &a == &adj_[u] ? v : u;
    return std::binary_search(a.begin(), a.end(), target);
}

int SimpleGraph::max_degree() const {
    int best = 0;
    for (const auto& a : adj_) best = std::max(best, static_cast<int>(a.size()));
    return best;
}

std::vector<Edge> SimpleGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

SimpleGraph graph_from_edges(int vertex_count, std::span<const Edge> edges) {
    SimpleGraph g(vertex_count);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

SimpleGraph induced_subgraph(const SimpleGraph& g, std::span<const Vertex> keep) {
    std::vector<int> pos(g.vertex_count(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    SimpleGraph h(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (Vertex w : g.neighbors(keep[i]))
            if (pos[w] > static_cast<int>(i)) h.add_edge(static_cast<Vertex>(i), pos[w]);
    return h;
}

std::vector<std::vector<Vertex>> connected_components(const SimpleGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (Vertex w : g.neighbors(v))
                if (comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

std::vector<std::vector<Vertex>> biconnected_blocks(const SimpleGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<Edge> edge_stack;
    std::vector<std::vector<Vertex>> blocks;
    int timer = 0;

    struct Frame {
        Vertex v;
        Vertex parent;
        std::size_t next;
    };
    std::vector<Frame> stack;
    for (Vertex root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        disc[root] = low[root] = timer++;
        stack.push_back({root, -1, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto nb = g.neighbors(f.v);
            if (f.next < nb.size()) {
                Vertex w = nb[f.next++];
                if (w == f.parent) continue;
                if (disc[w] < 0) {
                    edge_stack.emplace_back(f.v, w);
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, f.v, 0});
                } else if (disc[w] < disc[f.v]) {
                    edge_stack.emplace_back(f.v, w);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
                continue;
            }
            const Vertex v = f.v;
            const Vertex p = f.parent;
            stack.pop_back();
            if (p < 0) continue;
            low[p] = std::min(low[p], low[v]);
            if (low[v] >= disc[p]) {
                std::vector<Vertex> block;
                while (!edge_stack.empty()) {
                    Edge e = edge_stack.back();
                    edge_stack.pop_back();
                    block.push_back(e.first);
                    block.push_back(e.second);
                    if (e == Edge{p, v}) break;
                }
                std::sort(block.begin(), block.end());
                block.erase(std::unique(block.begin(), block.end()), block.end());
                blocks.push_back(std::move(block));
            }
        }
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

bool is_forest_without(const SimpleGraph& g, const std::vector<bool>& removed) {
    const int n = g.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Vertex u = 0; u < n; ++u) {
        if (!removed.empty() && removed[u]) continue;
        for (Vertex v : g.neighbors(u)) {
            if (v <= u || (!removed.empty() && removed[v])) continue;
            int a = find(u), b = find(v);
            if (a == b) return false;
            parent[a] = b;
        }
    }
    return true;
}

bool is_forest(const SimpleGraph& g) { return is_forest_without(g, {}); }

namespace {

bool distinct_in_range(const SimpleGraph& g, std::span<const Vertex> seq) {
    std::vector<Vertex> sorted(seq.begin(), seq.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    return sorted.empty() || (sorted.front() >= 0 && sorted.back() < g.vertex_count());
}

}  // namespace

bool is_simple_cycle(const SimpleGraph& g, std::span<const Vertex> cycle) {
    if (cycle.size() < 3 || !distinct_in_range(g, cycle)) return false;
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
    return true;
}

bool is_simple_path(const SimpleGraph& g, std::span<const Vertex> path) {
    if (path.empty() || !distinct_in_range(g, path)) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!g.has_edge(path[i], path[i + 1])) return false;
    return true;
}

namespace {

std::map<Vertex, std::vector<Vertex>> edge_adjacency(std::span<const Edge> edges) {
    std::map<Vertex, std::vector<Vertex>> adj;
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

std::vector<Vertex> walk(const std::map<Vertex, std::vector<Vertex>>& adj, Vertex start) {
    std::vector<Vertex> seq{start};
    Vertex prev = -1, cur = start;
    while (true) {
        const auto& nb = adj.at(cur);
        Vertex next = -1;
        for (Vertex w : nb)
            if (w != prev) {
                next = w;
                break;
            }
        if (next < 0 || next == start) break;
        seq.push_back(next);
        prev = cur;
        cur = next;
        if (seq.size() > adj.size()) return {};
    }
    return seq;
}

}  // namespace

std::vector<Vertex> cycle_from_edges(std::span<const Edge> edges) {
    if (edges.size() < 3) return {};
    auto adj = edge_adjacency(edges);
    for (const auto& [v, nb] : adj)
        if (nb.size() != 2) return {};
    auto seq = walk(adj, adj.begin()->first);
    if (seq.size() != adj.size() || seq.size() != edges.size()) return {};
    return seq;
}

std::vector<Vertex> path_from_edges(std::span<const Edge> edges) {
    if (edges.empty()) return {};
    auto adj = edge_adjacency(edges);
    Vertex start = -1;
    for (const auto& [v, nb] : adj) {
        if (nb.size() > 2) return {};
        if (nb.size() == 1 && start < 0) start = v;
    }
    if (start < 0) return {};
    auto seq = walk(adj, start);
    if (seq.size() != adj.size() || seq.size() != edges.size() + 1) return {};
    return seq;
}

}  // namespace udg
