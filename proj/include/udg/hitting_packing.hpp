#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "udg/cliquegrid.hpp"
#include "udg/decomp.hpp"
#include "udg/witness.hpp"

namespace udg {

// ---------------------------------------------------------------------------
// Maximum induced forest

struct MifOptions {
    // At most two chosen vertices per cell in every bag.
    bool prune = true;
    // Drop states whose subtree already misses more than this many vertices.
    std::optional<int> deletion_budget;
    bool witness = true;
};

struct MifResult {
    int max_forest = -1;        // -1 when the deletion budget rules everything out
    std::vector<Vertex> forest;  // sorted
    std::uint64_t states = 0;
    std::size_t peak_table = 0;
    std::size_t max_chosen_in_bag = 0;
};

MifResult mif_dp(const CliqueGridInstance& inst, const CellNCTD& nctd, const MifOptions& opts = {});

struct HittingOptions {
    bool witness = true;
    bool prune = true;
    std::uint64_t treewidth_budget = kDefaultTreewidthBudget;
};

SolveResult fvs(const CliqueGridInstance& inst, int k, const HittingOptions& opts = {});

// ---------------------------------------------------------------------------
// Cycle packing

// Faithful caps the open endpoints of a state at 2304 per cell of the bag;
// Adaptive caps the touched vertices of each cell at 3k.
enum class PackingCap { Faithful, Adaptive, Unpruned };

struct PackingOptions {
    PackingCap cap = PackingCap::Adaptive;
    bool witness = true;
    std::uint64_t treewidth_budget = kDefaultTreewidthBudget;
};

struct PackingResult {
    bool found = false;
    std::vector<std::vector<Vertex>> cycles;  // induced, pairwise disjoint
    std::uint64_t states = 0;
    std::size_t peak_table = 0;
};

PackingResult packing_dp(const CliqueGridInstance& inst, const CellNCTD& nctd, int k,
                         const PackingOptions& opts = {});

SolveResult cycle_packing(const CliqueGridInstance& inst, int k, const PackingOptions& opts = {});

// Repeatedly replaces the cycle by the shorter side of a chord.
std::vector<Vertex> shortcut_to_induced(const SimpleGraph& g, std::vector<Vertex> cycle);

}  // namespace udg
