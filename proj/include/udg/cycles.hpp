#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "udg/cliquegrid.hpp"
#include "udg/constants.hpp"
#include "udg/decomp.hpp"
#include "udg/witness.hpp"

namespace udg {

// ---------------------------------------------------------------------------
// Clique path profiles

using EndpointSet = std::pair<Vertex, Vertex>;  // first <= second; equal for a single vertex

struct CliquePathProfile {
    std::vector<EndpointSet> family;  // sorted, pairwise disjoint
    int edges = 0;
    bool feasible = false;
};

// A family with p two-vertex sets and w covered vertices is realizable by
// vertex-disjoint paths with exactly r edges inside an m-clique iff
// p == r, or 1 <= p < r and p + (m - w) >= r.
bool clique_profile_feasible(std::size_t cell_size, std::span<const EndpointSet> family, int r);

// Every feasible family over `cell` with r edges and at most
// `endpoint_budget` covered vertices, the empty family included.
std::vector<CliquePathProfile> enumerate_clique_profiles(std::span<const Vertex> cell, int r,
                                                         std::size_t endpoint_budget = kProfileEndpointBudget);

// ---------------------------------------------------------------------------
// Endpoint-profile DP over a Baker decomposition

struct DpLimits {
    std::optional<std::size_t> endpoint_cap;   // |union of profile sets|
    std::optional<std::size_t> connector_cap;  // edges joining a unit to older vertices

    static DpLimits faithful(int k);  // 840 * ceil(sqrt k) and 120
    static DpLimits unbounded() { return {}; }
};

// VertexSweep introduces a unit one vertex at a time: the edges chosen inside
// the unit form its clique profile and the edges to older endpoints form the
// connecting set. ProfileEnumeration transcribes the recurrence literally,
// enumerating clique profiles and connecting sets per unit; it is slow and
// kept as a reference for cross-checking.
enum class DpEngine { VertexSweep, ProfileEnumeration };

struct DpOptions {
    DpLimits limits;
    bool witness = true;
    DpEngine engine = DpEngine::VertexSweep;
    bool validate = true;  // verify the decomposition first
};

struct DpResult {
    bool found = false;
    std::vector<Vertex> witness;  // cycle or path order in the DP instance's ids
    std::uint64_t states = 0;
    std::size_t peak_table = 0;
    std::size_t max_endpoint_union = 0;
};

// Cycle on exactly k vertices.
DpResult dp_exact_cycle(const CliqueGridInstance& h, const BakerNCPD& ncpd, int k, const DpOptions& opts = {});
// Cycle whose vertex count lies in [lo, hi].
DpResult dp_cycle_range(const CliqueGridInstance& h, const BakerNCPD& ncpd, int lo, int hi,
                        const DpOptions& opts = {});
// Path on exactly k vertices.
DpResult dp_path(const CliqueGridInstance& h, const BakerNCPD& ncpd, int k, const DpOptions& opts = {});

// ---------------------------------------------------------------------------
// Good family

struct FamilyMember {
    int label = 0;
    std::vector<Vertex> deleted;  // S
    std::vector<Vertex> kept;     // Y
};

struct FamilyInstance {
    FamilyMember member;
    CliqueGridInstance graph;        // instance minus S
    std::vector<Vertex> to_source;   // graph vertex -> source instance vertex
    BakerNCPD ncpd;                  // in graph's vertex ids
};

// Full emits every Y of size <= ceil(sqrt k); MaximalKept emits only Y of
// size min(ceil(sqrt k), m_label). Each MaximalKept Y contains a Full Y, so
// both families keep the covering property.
enum class FamilyMode { Full, MaximalKept };

class GoodFamily {
public:
    // Throws ConfigurationError if some cell has >= k vertices.
    GoodFamily(const CliqueGridInstance& source, int k, FamilyMode mode = FamilyMode::Full);

    int label_count() const { return label_count_; }
    std::size_t size() const { return members_.size(); }
    const FamilyMember& member(std::size_t i) const { return members_[i]; }
    FamilyInstance materialize(std::size_t i) const;
    // Population of each label's columns.
    const std::vector<std::size_t>& label_population() const { return population_; }

private:
    const CliqueGridInstance* source_;
    int k_;
    int label_count_;
    std::vector<std::size_t> population_;
    std::vector<FamilyMember> members_;
};

// Counting bound: L * sum_{i <= L} C(m_label, i) summed per label.
std::uint64_t good_family_size_bound(const GoodFamily& family);

// ---------------------------------------------------------------------------
// Solvers

struct CycleSolveOptions {
    bool witness = true;
    bool faithful_caps = false;  // use the 840 sqrt(k) / 120 limits in the DP
    int jobs = 1;
    FamilyMode family_mode = FamilyMode::MaximalKept;
    bool exact_path_length = false;  // longest_path: exactly k instead of >= k
    std::uint64_t treewidth_budget = kDefaultTreewidthBudget;
    // longest_cycle runs the treewidth DP on the cell graph only up to this
    // width and asks the oracle otherwise.
    int cell_width_cap = 8;
};

SolveResult exact_k_cycle(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts = {});
SolveResult longest_path(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts = {});
SolveResult near_k_cycle(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts = {});
SolveResult longest_cycle(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts = {});

// The contraction phase alone: repeat {near_k_cycle; contract the first
// contractible pair} until YES or no pair remains. The observer sees every
// contracted instance.
using ContractionObserver = std::function<void(const CliqueGridInstance&)>;
SolveResult contraction_loop(const CliqueGridInstance& inst, int k, const CycleSolveOptions& opts = {},
                             const ContractionObserver& observer = {});

// Treewidth DP for a cycle on >= k vertices; the witness is a cycle in g.
struct TwCycleResult {
    bool found = false;
    std::vector<Vertex> cycle;
    std::uint64_t states = 0;
};
TwCycleResult tw_longest_cycle(const SimpleGraph& g, const NiceTreeDecomposition& ntd, int k, bool witness = true);

// ---------------------------------------------------------------------------
// Crossing normalization

// Edges of the cycle whose endpoints lie in different cells.
std::size_t count_cross_edges(const CliqueGridInstance& inst, std::span<const Vertex> cycle);
int max_pair_crossings(const CliqueGridInstance& inst, std::span<const Vertex> cycle);

struct RerouteTrace {
    std::vector<Vertex> cycle;
    std::vector<std::size_t> cross_counts;  // before each step, and the final count
};

// While some cell pair carries more than `max_per_pair` crossing edges, two
// same-direction crossing edges u1->v1, u2->v2 are replaced by u1u2 and v1v2
// (both inside a cell), reversing the segment between them. Each step removes
// two crossing edges and keeps the length.
RerouteTrace reroute_crossings(const CliqueGridInstance& inst, std::vector<Vertex> cycle,
                               int max_per_pair = kCrossingsPerCellPair);

}  // namespace udg
