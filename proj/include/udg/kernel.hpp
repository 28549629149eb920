#pragma once

#include <optional>
#include <string>
#include <vector>

#include "udg/cliquegrid.hpp"

namespace udg {

// A cell of size >= threshold, the smallest such in (row, col) order.
std::optional<Cell> large_clique_cell(const CliqueGridInstance& inst, int threshold);

// True iff some cycle contains two vertices whose cells are >= 2k apart in a
// coordinate. On success `cycle` receives such a cycle (it has > k vertices).
bool detect_stretched(const CliqueGridInstance& inst, int k, std::vector<Vertex>* cycle = nullptr);

struct KernelWindow {
    Cell origin;
    CliqueGridInstance instance;     // cells re-indexed so origin becomes (1,1)
    std::vector<Vertex> to_original;  // window vertex -> instance vertex
};

enum class KernelProblem { SubgraphIsomorphism, LongestCycle };

struct KernelOutput {
    bool shortcut = false;
    std::string reason;                 // "clique-cell" or "stretched" when shortcut
    std::optional<Cell> clique_cell;
    std::vector<Vertex> stretched_cycle;
    std::vector<KernelWindow> windows;
};

// Windows cover [p, p+2k) x [q, q+2k) cells. Windows with identical vertex
// sets are emitted once; empty windows and windows whose vertex set lies
// inside another window's are dropped.
KernelOutput turing_kernel(const CliqueGridInstance& inst, int k, KernelProblem problem);

// Window vertex bound (2k)^2 (k-1) and edge bound from degree <= 25(k-1) - 1.
long long kernel_vertex_bound(int k);
long long kernel_edge_bound(int k);

std::string kernel_report(const KernelOutput& out, int k);

}  // namespace udg
