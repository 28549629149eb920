#pragma once

#include <cstdint>
#include <vector>

#include "udg/graph.hpp"

// Brute-force reference implementations. Every routine is exact within its
// budget and throws BudgetError otherwise.
namespace udg::oracle {

struct Budget {
    int max_vertices = 64;
    std::uint64_t max_objects = 2'000'000'000ULL;
    std::uint64_t seed = 0;  // reserved for randomized tie-breaking; unused by exact routines
};

// DFS over simple cycles whose smallest vertex is the start.
bool brute_exact_cycle(const SimpleGraph& g, int k, const Budget& budget = {},
                       std::vector<Vertex>* witness = nullptr);

// All k-cycles (each listed once, smallest vertex first), up to `limit`.
std::vector<std::vector<Vertex>> enumerate_k_cycles(const SimpleGraph& g, int k, std::size_t limit,
                                                    const Budget& budget = {});

// Held-Karp bitmask DP; n <= 24. Sizes count vertices; 0 when none exists.
int brute_longest_path(const SimpleGraph& g, const Budget& budget = {});
int brute_longest_cycle(const SimpleGraph& g, const Budget& budget = {});

// lengths[l] is true iff g has a cycle on exactly l vertices (n <= 24).
std::vector<bool> cycle_lengths(const SimpleGraph& g, const Budget& budget = {});

// Decision forms that split into components (paths) or blocks (cycles) and
// run Held-Karp on pieces of at most 22 vertices, exhaustive DFS otherwise.
bool has_path_at_least(const SimpleGraph& g, int k, const Budget& budget = {},
                       std::vector<Vertex>* witness = nullptr);
bool has_cycle_at_least(const SimpleGraph& g, int k, const Budget& budget = {},
                        std::vector<Vertex>* witness = nullptr);

// All subsets of size <= k, smallest first.
bool brute_fvs(const SimpleGraph& g, int k, const Budget& budget = {}, std::vector<Vertex>* witness = nullptr);
int brute_min_fvs(const SimpleGraph& g, const Budget& budget = {});
int brute_max_induced_forest(const SimpleGraph& g, const Budget& budget = {});

// Chordless cycles, each listed once with its smallest vertex first.
std::vector<std::vector<Vertex>> induced_cycles(const SimpleGraph& g, const Budget& budget = {});

// Packing over induced cycles with memoized search on the free vertex set.
bool brute_cycle_packing(const SimpleGraph& g, int k, const Budget& budget = {},
                         std::vector<std::vector<Vertex>>* witness = nullptr);
// Same question over all cycles (n <= 16), for cross-checking.
bool brute_cycle_packing_unrestricted(const SimpleGraph& g, int k, const Budget& budget = {});

// Elimination-order DP over vertex subsets (n <= 16).
int brute_treewidth(const SimpleGraph& g, const Budget& budget = {});

}  // namespace udg::oracle
