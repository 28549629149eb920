#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

enum class Problem { ExactCycle, LongestPath, LongestCycle, Fvs, CyclePacking };

Problem parse_problem(std::string_view name);
std::string to_string(Problem problem);

enum class WitnessKind { Cycle, Path, VertexSet, CycleFamily };

struct Witness {
    WitnessKind kind = WitnessKind::Cycle;
    std::vector<Vertex> vertices;             // cycle / path order, or the vertex set
    std::vector<std::vector<Vertex>> cycles;  // CycleFamily only
};

// Checks a witness against the problem's definition on g:
//   ExactCycle   simple cycle on exactly k vertices
//   LongestPath  simple path on >= k vertices
//   LongestCycle simple cycle on >= k vertices
//   Fvs          at most k distinct vertices whose removal leaves a forest
//   CyclePacking k pairwise vertex-disjoint simple cycles
bool verify_witness(const SimpleGraph& g, const Witness& w, Problem problem, int k);

struct SolverStats {
    std::size_t windows = 0;
    std::size_t family_members = 0;
    std::size_t dp_runs = 0;
    std::uint64_t dp_states = 0;
    std::size_t peak_table = 0;
    std::size_t contractions = 0;

    void absorb(const SolverStats& other);
};

struct SolveResult {
    bool answer = false;
    std::optional<Witness> witness;
    SolverStats stats;
    std::string decided_by;  // which pipeline stage settled the answer
};

}  // namespace udg
