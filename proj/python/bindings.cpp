#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "udg/cycles.hpp"
#include "udg/errors.hpp"
#include "udg/geometry.hpp"
#include "udg/hitting_packing.hpp"
#include "udg/kernel.hpp"
#include "udg/oracle.hpp"

namespace py = pybind11;
using namespace udg;

namespace {

using PointList = std::vector<std::pair<double, double>>;
using EdgeList = std::vector<std::pair<int, int>>;

PointCloud to_cloud(const PointList& pts) {
    PointCloud cloud;
    for (auto [x, y] : pts) cloud.push_back({x, y});
    return cloud;
}

CliqueGridInstance to_instance(const PointList& pts, const std::string& model) {
    return CliqueGridInstance::from_cloud(to_cloud(pts), parse_model(model));
}

SimpleGraph to_graph(int n, const EdgeList& edges) {
    SimpleGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

py::dict to_dict(const SolveResult& r) {
    py::dict d;
    d["answer"] = r.answer;
    d["decided_by"] = r.decided_by;
    if (r.witness) {
        d["witness"] = r.witness->kind == WitnessKind::CycleFamily ? py::cast(r.witness->cycles)
                                                                   : py::cast(r.witness->vertices);
    } else {
        d["witness"] = py::none();
    }
    py::dict stats;
    stats["windows"] = r.stats.windows;
    stats["family_members"] = r.stats.family_members;
    stats["dp_runs"] = r.stats.dp_runs;
    stats["dp_states"] = r.stats.dp_states;
    stats["peak_table"] = r.stats.peak_table;
    stats["contractions"] = r.stats.contractions;
    d["stats"] = stats;
    return d;
}

using CycleSolver = SolveResult (*)(const CliqueGridInstance&, int, const CycleSolveOptions&);

void def_cycle_solver(py::module_& m, const char* name, CycleSolver solver, const char* doc) {
    m.def(
        name,
        [solver](const PointList& pts, int k, const std::string& model, bool witness, int jobs, bool faithful_caps) {
            CycleSolveOptions o;
            o.witness = witness;
            o.jobs = jobs;
            o.faithful_caps = faithful_caps;
            const auto inst = to_instance(pts, model);
            py::gil_scoped_release release;
            auto r = solver(inst, k, o);
            py::gil_scoped_acquire acquire;
            return to_dict(r);
        },
        py::arg("points"), py::arg("k"), py::arg("model") = "disk", py::arg("witness") = true, py::arg("jobs") = 1,
        py::arg("faithful_caps") = false, doc);
}

}  // namespace

PYBIND11_MODULE(udgcycles, m) {
    m.doc() = "Cycle problems on unit disk and unit square graphs";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

    m.def(
        "build_graph",
        [](const PointList& pts, const std::string& model) {
            return build_geometric_graph(to_cloud(pts), parse_model(model)).edges();
        },
        py::arg("points"), py::arg("model") = "disk", "Edges (u < v) of the intersection graph.");

    m.def(
        "representation",
        [](const PointList& pts, const std::string& model) {
            const Representation rep = compute_representation(to_cloud(pts), parse_model(model));
            std::vector<std::pair<int, int>> cells;
            for (const Cell& c : rep.cell_of) cells.emplace_back(c.row, c.col);
            return py::make_tuple(cells, rep.rows, rep.cols);
        },
        py::arg("points"), py::arg("model") = "disk", "Cell of every point plus the grid size.");

    def_cycle_solver(m, "exact_k_cycle", &exact_k_cycle, "Cycle on exactly k vertices.");
    def_cycle_solver(m, "longest_path", &longest_path, "Path on at least k vertices.");
    def_cycle_solver(m, "longest_cycle", &longest_cycle, "Cycle on at least k vertices.");
    def_cycle_solver(m, "near_k_cycle", &near_k_cycle, "Cycle with between k and 2k vertices.");

    m.def(
        "fvs",
        [](const PointList& pts, int k, const std::string& model, bool witness) {
            HittingOptions o;
            o.witness = witness;
            return to_dict(fvs(to_instance(pts, model), k, o));
        },
        py::arg("points"), py::arg("k"), py::arg("model") = "disk", py::arg("witness") = true,
        "At most k vertices whose removal leaves a forest.");

    m.def(
        "cycle_packing",
        [](const PointList& pts, int k, const std::string& model, bool witness) {
            PackingOptions o;
            o.witness = witness;
            return to_dict(cycle_packing(to_instance(pts, model), k, o));
        },
        py::arg("points"), py::arg("k"), py::arg("model") = "disk", py::arg("witness") = true,
        "k vertex-disjoint cycles.");

    m.def(
        "kernel",
        [](const PointList& pts, int k, const std::string& problem, const std::string& model) {
            const auto inst = to_instance(pts, model);
            const auto kp = parse_problem(problem) == Problem::LongestCycle ? KernelProblem::LongestCycle
                                                                           : KernelProblem::SubgraphIsomorphism;
            const KernelOutput out = turing_kernel(inst, k, kp);
            py::dict d;
            d["shortcut"] = out.shortcut;
            d["reason"] = out.reason;
            std::vector<std::vector<Vertex>> windows;
            for (const auto& w : out.windows) windows.push_back(w.to_original);
            d["windows"] = windows;
            d["vertex_bound"] = kernel_vertex_bound(k);
            return d;
        },
        py::arg("points"), py::arg("k"), py::arg("problem") = "longest-cycle", py::arg("model") = "disk",
        "Kernel windows as lists of original vertices.");

    m.def(
        "treewidth",
        [](int n, const EdgeList& edges) {
            const TreewidthResult r = exact_treewidth(to_graph(n, edges));
            if (r.status != TreewidthStatus::Ok) throw BudgetError("treewidth search ran out of budget");
            return py::make_tuple(r.decomposition.width(), r.exact);
        },
        py::arg("n"), py::arg("edges"), "Width of the best decomposition found and whether it is optimal.");

    m.def(
        "verify_witness",
        [](int n, const EdgeList& edges, const std::string& problem, int k, py::object witness) {
            const Problem p = parse_problem(problem);
            Witness w;
            if (p == Problem::CyclePacking) {
                w.kind = WitnessKind::CycleFamily;
                w.cycles = witness.cast<std::vector<std::vector<Vertex>>>();
            } else {
                w.kind = p == Problem::Fvs           ? WitnessKind::VertexSet
                         : p == Problem::LongestPath ? WitnessKind::Path
                                                     : WitnessKind::Cycle;
                w.vertices = witness.cast<std::vector<Vertex>>();
            }
            return verify_witness(to_graph(n, edges), w, p, k);
        },
        py::arg("n"), py::arg("edges"), py::arg("problem"), py::arg("k"), py::arg("witness"));

    auto o = m.def_submodule("oracle", "Brute-force reference answers");
    o.def("exact_cycle", [](int n, const EdgeList& e, int k) { return oracle::brute_exact_cycle(to_graph(n, e), k); });
    o.def("longest_path", [](int n, const EdgeList& e) { return oracle::brute_longest_path(to_graph(n, e)); });
    o.def("longest_cycle", [](int n, const EdgeList& e) { return oracle::brute_longest_cycle(to_graph(n, e)); });
    o.def("min_fvs", [](int n, const EdgeList& e) { return oracle::brute_min_fvs(to_graph(n, e)); });
    o.def("cycle_packing",
          [](int n, const EdgeList& e, int k) { return oracle::brute_cycle_packing(to_graph(n, e), k); });
}
