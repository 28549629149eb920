#include "udg/cliquegrid.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "udg/errors.hpp"

namespace udg {

CliqueGridInstance::CliqueGridInstance(SimpleGraph graph, Representation rep)
    : graph_(std::move(graph)), rep_(std::move(rep)) {
    if (!verify_representation(graph_, rep_)) throw InputError("representation does not fit the graph");
    index_cells();
}

CliqueGridInstance::CliqueGridInstance(SimpleGraph graph, Representation rep, AssumeValid)
    : graph_(std::move(graph)), rep_(std::move(rep)) {
    index_cells();
}

CliqueGridInstance CliqueGridInstance::from_cloud(const PointCloud& cloud, Model model) {
    return CliqueGridInstance(build_geometric_graph(cloud, model), compute_representation(cloud, model),
                              AssumeValid{});
}

void CliqueGridInstance::index_cells() {
    const int n = graph_.vertex_count();
    cells_ = rep_.cell_of;
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    members_.assign(cells_.size(), {});
    cell_index_.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        auto idx = static_cast<std::size_t>(std::lower_bound(cells_.begin(), cells_.end(), rep_.cell_of[v]) -
                                            cells_.begin());
        cell_index_[v] = idx;
        members_[idx].push_back(v);
    }
}

std::optional<std::size_t> CliqueGridInstance::find_cell(Cell c) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
    if (it == cells_.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - cells_.begin());
}

int CliqueGridInstance::max_cell_size() const {
    std::size_t best = 0;
    for (const auto& m : members_) best = std::max(best, m.size());
    return static_cast<int>(best);
}

CliqueGridInstance CliqueGridInstance::induced(std::span<const Vertex> keep) const {
    Representation rep{{}, rep_.rows, rep_.cols};
    rep.cell_of.reserve(keep.size());
    for (Vertex v : keep) rep.cell_of.push_back(rep_.cell_of[v]);
    return CliqueGridInstance(induced_subgraph(graph_, keep), std::move(rep), AssumeValid{});
}

CellGraph cell_graph(const CliqueGridInstance& inst) {
    CellGraph cg;
    cg.cells = inst.cells();
    cg.graph = SimpleGraph(static_cast<int>(cg.cells.size()));
    cg.cell_vertex_of.resize(inst.vertex_count());
    for (Vertex v = 0; v < inst.vertex_count(); ++v) cg.cell_vertex_of[v] = static_cast<int>(inst.cell_index(v));
    for (auto [u, v] : inst.graph().edges()) {
        const int a = cg.cell_vertex_of[u], b = cg.cell_vertex_of[v];
        if (a != b) cg.graph.add_edge(a, b);
    }
    return cg;
}

namespace {

// Witness count per adjacent cell pair, keyed by ordered cell-index pair.
using PairCounts = std::map<std::pair<std::size_t, std::size_t>, int>;

std::pair<std::size_t, std::size_t> cell_pair(const CliqueGridInstance& inst, Vertex u, Vertex v) {
    auto a = inst.cell_index(u), b = inst.cell_index(v);
    return a < b ? std::pair(a, b) : std::pair(b, a);
}

}  // namespace

bool is_backbone(const CliqueGridInstance& inst, const std::vector<bool>& keep) {
    PairCounts needed, witnessed;
    for (auto [u, v] : inst.graph().edges()) {
        if (inst.cell_index(u) == inst.cell_index(v)) continue;
        auto key = cell_pair(inst, u, v);
        needed[key] = 1;
        if (keep[u] && keep[v]) witnessed[key] = 1;
    }
    return needed.size() == witnessed.size();
}

Backbone minimal_backbone(const CliqueGridInstance& inst) {
    const int n = inst.vertex_count();
    const SimpleGraph& g = inst.graph();
    std::vector<bool> keep(n, true);
    PairCounts count;
    for (auto [u, v] : g.edges())
        if (inst.cell_index(u) != inst.cell_index(v)) ++count[cell_pair(inst, u, v)];

    // Removing v drops every witness edge at v; v stays iff that would leave
    // some cell pair unwitnessed. Deletions only shrink counts, so a vertex
    // kept once can never become removable later: the result is minimal.
    for (Vertex v = 0; v < n; ++v) {
        std::map<std::pair<std::size_t, std::size_t>, int> loss;
        for (Vertex w : g.neighbors(v))
            if (keep[w] && inst.cell_index(w) != inst.cell_index(v)) ++loss[cell_pair(inst, v, w)];
        bool removable = true;
        for (const auto& [key, lost] : loss)
            if (count[key] == lost) {
                removable = false;
                break;
            }
        if (!removable) continue;
        keep[v] = false;
        for (const auto& [key, lost] : loss) count[key] -= lost;
    }

    Backbone out;
    for (Vertex v = 0; v < n; ++v)
        if (keep[v]) out.vertices.push_back(v);
    out.graph = induced_subgraph(g, out.vertices);
    return out;
}

Contraction contract_pair(const CliqueGridInstance& inst, Vertex u, Vertex v) {
    const int n = inst.vertex_count();
    if (u < 0 || v < 0 || u >= n || v >= n || u == v || inst.cell_of(u) != inst.cell_of(v))
        throw ContractionError("pair (" + std::to_string(u) + ", " + std::to_string(v) + ") is not contractible");
    Contraction out;
    out.kept = std::min(u, v);
    out.absorbed = std::max(u, v);
    out.old_to_new.resize(n);
    for (Vertex w = 0; w < n; ++w)
        out.old_to_new[w] = w < out.absorbed ? w : (w == out.absorbed ? out.kept : w - 1);
    SimpleGraph g(n - 1);
    for (auto [a, b] : inst.graph().edges()) {
        const Vertex x = out.old_to_new[a], y = out.old_to_new[b];
        if (x != y) g.add_edge(x, y);
    }
    Representation rep{{}, inst.rep().rows, inst.rep().cols};
    for (Vertex w = 0; w < n; ++w)
        if (w != out.absorbed) rep.cell_of.push_back(inst.cell_of(w));
    out.instance = CliqueGridInstance(std::move(g), std::move(rep), CliqueGridInstance::AssumeValid{});
    return out;
}

std::optional<Edge> first_contractible_pair(const CliqueGridInstance& inst) {
    std::optional<Edge> best;
    for (std::size_t c = 0; c < inst.cells().size(); ++c) {
        auto m = inst.members(c);
        if (m.size() >= 2 && (!best || Edge{m[0], m[1]} < *best)) best = Edge{m[0], m[1]};
    }
    return best;
}

}  // namespace udg
