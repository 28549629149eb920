#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace udg {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(int vertex_count);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    // Returns false when the edge was already present. Self-loops and
    // out-of-range endpoints throw InputError.
    bool add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;

    // Edges as (u, v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t edge_count_ = 0;
};

SimpleGraph graph_from_edges(int vertex_count, std::span<const Edge> edges);

// Subgraph induced by `keep`; vertex keep[i] becomes vertex i.
SimpleGraph induced_subgraph(const SimpleGraph& g, std::span<const Vertex> keep);

// Connected components as sorted vertex lists, ordered by smallest vertex.
std::vector<std::vector<Vertex>> connected_components(const SimpleGraph& g);

// Vertex sets of the biconnected blocks that contain at least one edge.
// Every cycle of g lies inside exactly one of them.
std::vector<std::vector<Vertex>> biconnected_blocks(const SimpleGraph& g);

bool is_forest(const SimpleGraph& g);

// True iff g minus the vertices flagged in `removed` has no cycle.
bool is_forest_without(const SimpleGraph& g, const std::vector<bool>& removed);

// Sequence checks used by witness verification.
bool is_simple_cycle(const SimpleGraph& g, std::span<const Vertex> cycle);
bool is_simple_path(const SimpleGraph& g, std::span<const Vertex> path);

// Orders an edge set forming a single cycle (or a single path) into a vertex
// sequence. Returns an empty vector if the edges do not form one.
std::vector<Vertex> cycle_from_edges(std::span<const Edge> edges);
std::vector<Vertex> path_from_edges(std::span<const Edge> edges);

}  // namespace udg
