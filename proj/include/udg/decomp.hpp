#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "udg/cliquegrid.hpp"
#include "udg/graph.hpp"

namespace udg {

struct TreeDecomposition {
    struct Node {
        std::vector<Vertex> bag;  // sorted
        int parent = -1;
        std::vector<int> children;
    };
    std::vector<Node> nodes;
    int root = -1;

    int width() const;  // max bag size minus one; -1 when there are no vertices
};

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceTreeDecomposition {
    struct Node {
        NodeKind kind = NodeKind::Leaf;
        std::vector<Vertex> bag;  // sorted
        std::vector<int> children;
        Vertex vertex = -1;  // introduced or forgotten vertex
    };
    std::vector<Node> nodes;
    int root = -1;

    int width() const;
    TreeDecomposition as_tree() const;
    std::vector<int> postorder() const;  // children before parents
};

bool verify_decomposition(const SimpleGraph& g, const TreeDecomposition& td);
bool verify_nice(const SimpleGraph& g, const NiceTreeDecomposition& ntd);
// Bags in order must form a path decomposition of g.
bool verify_path_decomposition(const SimpleGraph& g, std::span<const std::vector<Vertex>> bags);

inline constexpr int kUnboundedWidth = std::numeric_limits<int>::max();
inline constexpr std::uint64_t kDefaultTreewidthBudget = 500'000;

enum class TreewidthStatus { Ok, WidthExceeded, BudgetExhausted };

struct TreewidthResult {
    TreewidthStatus status = TreewidthStatus::Ok;
    TreeDecomposition decomposition;  // set when status == Ok
    int lower_bound = 0;
    int upper_bound = 0;
    bool exact = false;  // decomposition width equals the treewidth
    std::uint64_t explored = 0;
};

// Branch and bound over elimination orderings. With status Ok the width is
// <= cap (and optimal when `exact`); WidthExceeded proves treewidth > cap;
// BudgetExhausted means the node budget ran out before either was settled.
TreewidthResult exact_treewidth(const SimpleGraph& g, int cap = kUnboundedWidth,
                                std::uint64_t node_budget = kDefaultTreewidthBudget);

TreeDecomposition decomposition_from_ordering(const SimpleGraph& g, std::span<const Vertex> order);

NiceTreeDecomposition make_nice(const TreeDecomposition& td);

// Nice decomposition of the cell graph, lifted to vertex bags.
struct CellNCTD {
    NiceTreeDecomposition cell_tree;          // over cell-vertices
    std::vector<Cell> cells;                  // cell-vertex -> cell
    std::vector<std::vector<Vertex>> bags;    // per node: union of its cells' members
    std::size_t max_cells_per_bag() const;
};

struct CellNCTDResult {
    TreewidthStatus status = TreewidthStatus::Ok;
    CellNCTD nctd;
};

CellNCTDResult build_cell_nctd(const CliqueGridInstance& inst, int cap = kUnboundedWidth,
                               std::uint64_t node_budget = kDefaultTreewidthBudget);

bool verify_cell_nctd(const CliqueGridInstance& inst, const CellNCTD& nctd);

// Vertex-level nice decomposition obtained by expanding each cell step of a
// CellNCTD into one step per member vertex.
NiceTreeDecomposition expand_to_vertices(const CliqueGridInstance& inst, const CellNCTD& nctd);

// Baker-style path decomposition of G \ S where S together with Y is the
// vertex set of all columns carrying one label. Units are the DP's atoms: a
// full cell of G \ S, or the part of Y inside one cell.
struct BakerNCPD {
    struct Unit {
        Cell cell;
        std::vector<Vertex> vertices;  // sorted
        bool from_y = false;
    };
    enum class StepKind { Introduce, Forget };
    struct Step {
        StepKind kind;
        int unit;
    };

    int label = 0;
    int label_count = 1;
    std::vector<Vertex> y;                    // sorted
    std::vector<Unit> units;
    std::vector<std::vector<int>> bags;       // coarse bags: full-cell unit ids
    std::vector<int> y_units;
    std::vector<Step> steps;                  // nice refinement, empty to empty

    std::vector<std::vector<Vertex>> vertex_bags() const;  // coarse bags with Y added
};

int ceil_sqrt(int k);
// Column label: columns 2b-1 and 2b form block b, labelled b mod L.
int column_label(int col, int label_count);

// Ids in the returned NCPD are the instance's own vertex ids.
BakerNCPD build_baker_ncpd(const CliqueGridInstance& inst, std::span<const Vertex> deleted,
                           std::span<const Vertex> kept, int k);

// Checks that the coarse bags and the refinement are path decompositions of
// inst minus `deleted`, every coarse bag has <= 6*ceil_sqrt(k) full cells
// plus Y, every unit lies in one cell, and full units are whole cells.
bool verify_baker_ncpd(const CliqueGridInstance& inst, std::span<const Vertex> deleted, const BakerNCPD& ncpd,
                       int k);

// Renames vertices through `map` (old id -> new id, -1 for absent).
BakerNCPD remap(const BakerNCPD& ncpd, std::span<const Vertex> map);

// PACE ".td": "s td <#bags> <width+1> <n>", "b <id> <vertices>", then tree
// edges. Nodes are written in BFS order from the root, which is bag 1.
void write_td(std::ostream& out, const TreeDecomposition& td, int vertex_count);
TreeDecomposition read_td(std::istream& in, int* vertex_count = nullptr);

}  // namespace udg
