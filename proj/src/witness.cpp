#include "udg/witness.hpp"

#include <algorithm>

#include "udg/errors.hpp"

namespace udg {

Problem parse_problem(std::string_view name) {
    if (name == "exact-cycle") return Problem::ExactCycle;
    if (name == "longest-path") return Problem::LongestPath;
    if (name == "longest-cycle") return Problem::LongestCycle;
    if (name == "fvs") return Problem::Fvs;
    if (name == "cycle-packing") return Problem::CyclePacking;
    throw InputError("unknown problem: " + std::string(name));
}

std::string to_string(Problem problem) {
    switch (problem) {
        case Problem::ExactCycle: return "exact-cycle";
        case Problem::LongestPath: return "longest-path";
        case Problem::LongestCycle: return "longest-cycle";
        case Problem::Fvs: return "fvs";
        case Problem::CyclePacking: return "cycle-packing";
    }
    return "unknown";
}

bool verify_witness(const SimpleGraph& g, const Witness& w, Problem problem, int k) {
    const int size = static_cast<int>(w.vertices.size());
    switch (problem) {
        case Problem::ExactCycle:
            return w.kind == WitnessKind::Cycle && size == k && is_simple_cycle(g, w.vertices);
        case Problem::LongestCycle:
            return w.kind == WitnessKind::Cycle && size >= k && is_simple_cycle(g, w.vertices);
        case Problem::LongestPath:
            return w.kind == WitnessKind::Path && size >= k && is_simple_path(g, w.vertices);
        case Problem::Fvs: {
            if (w.kind != WitnessKind::VertexSet || size > k) return false;
            std::vector<bool> removed(g.vertex_count(), false);
            for (Vertex v : w.vertices) {
                if (v < 0 || v >= g.vertex_count() || removed[v]) return false;
                removed[v] = true;
            }
            return is_forest_without(g, removed);
        }
        case Problem::CyclePacking: {
            if (w.kind != WitnessKind::CycleFamily || static_cast<int>(w.cycles.size()) < k) return false;
            std::vector<bool> used(g.vertex_count(), false);
            for (const auto& cycle : w.cycles) {
                if (!is_simple_cycle(g, cycle)) return false;
                for (Vertex v : cycle) {
                    if (used[v]) return false;
                    used[v] = true;
                }
            }
            return true;
        }
    }
    return false;
}

void SolverStats::absorb(const SolverStats& other) {
    windows += other.windows;
    family_members += other.family_members;
    dp_runs += other.dp_runs;
    dp_states += other.dp_states;
    peak_table = std::max(peak_table, other.peak_table);
    contractions += other.contractions;
}

}  // namespace udg
