#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "udg/cycles.hpp"
#include "udg/errors.hpp"
#include "udg/geometry.hpp"
#include "udg/hitting_packing.hpp"
#include "udg/kernel.hpp"
#include "udg/oracle.hpp"

using namespace udg;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;
constexpr int kExitDisagree = 3;

struct RunConfig {
    std::string problem = "exact-cycle";
    int k = 3;
    std::string model = "disk";
    std::string input;
    std::string output;
    std::string json;
    std::uint64_t seed = 1;
    bool check = false;
    bool witness = true;
    bool faithful_caps = false;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    // gen / bench
    int n = 20;
    double side = 0;  // 0: pick a side for the requested average degree
    double degree = 4.0;
    int seeds = 10;
    std::string kind = "tree";
};

// mt19937_64 seeded once; doubles take the top 53 bits.
double next_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

PointCloud generate(int n, double side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PointCloud pts;
    for (int i = 0; i < n; ++i) {
        const double x = next_unit(rng) * side;
        const double y = next_unit(rng) * side;
        pts.push_back({x, y});
    }
    return pts;
}

double side_for(const RunConfig& cfg) {
    if (cfg.side > 0) return cfg.side;
    return std::sqrt(4.0 * 3.14159265358979 / cfg.degree * std::max(cfg.n, 1));
}

PointCloud load_points(const std::string& path) {
    if (path.empty() || path == "-") return read_points(std::cin);
    return read_points_file(path);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw InputError("cannot write " + path);
    return file;
}

SolveResult dispatch(const CliqueGridInstance& inst, Problem problem, int k, const RunConfig& cfg) {
    CycleSolveOptions copts;
    copts.witness = cfg.witness;
    copts.faithful_caps = cfg.faithful_caps;
    copts.jobs = cfg.jobs;
    switch (problem) {
        case Problem::ExactCycle:
            return exact_k_cycle(inst, k, copts);
        case Problem::LongestPath:
            return longest_path(inst, k, copts);
        case Problem::LongestCycle:
            return longest_cycle(inst, k, copts);
        case Problem::Fvs: {
            HittingOptions h;
            h.witness = cfg.witness;
            return fvs(inst, k, h);
        }
        case Problem::CyclePacking: {
            PackingOptions p;
            p.witness = cfg.witness;
            p.cap = cfg.faithful_caps ? PackingCap::Faithful : PackingCap::Adaptive;
            return cycle_packing(inst, k, p);
        }
    }
    throw ParameterError("unknown problem");
}

bool oracle_answer(const SimpleGraph& g, Problem problem, int k) {
    switch (problem) {
        case Problem::ExactCycle:
            return oracle::brute_exact_cycle(g, k);
        case Problem::LongestPath:
            return oracle::has_path_at_least(g, k);
        case Problem::LongestCycle:
            return oracle::has_cycle_at_least(g, std::max(k, 3));
        case Problem::Fvs:
            return oracle::brute_fvs(g, k);
        case Problem::CyclePacking:
            return oracle::brute_cycle_packing(g, k);
    }
    return false;
}

std::string join_one_indexed(const std::vector<Vertex>& vs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i] + 1;
    return os.str();
}

int cmd_gen(const RunConfig& cfg) {
    std::ofstream file;
    std::ostream& out = open_output(cfg.output, file);
    write_points(out, generate(cfg.n, side_for(cfg), cfg.seed));
    return kExitYes;
}

int cmd_solve(const RunConfig& cfg) {
    const Problem problem = parse_problem(cfg.problem);
    const Model model = parse_model(cfg.model);
    const PointCloud cloud = load_points(cfg.input);
    const auto start = std::chrono::steady_clock::now();
    const CliqueGridInstance inst = CliqueGridInstance::from_cloud(cloud, model);
    const SolveResult res = dispatch(inst, problem, cfg.k, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    nlohmann::json record;
    record["problem"] = to_string(problem);
    record["model"] = to_string(model);
    record["k"] = cfg.k;
    record["n"] = inst.vertex_count();
    record["m"] = inst.graph().edge_count();
    record["answer"] = res.answer ? "YES" : "NO";
    record["decided_by"] = res.decided_by;
    record["windows"] = res.stats.windows;
    record["family_members"] = res.stats.family_members;
    record["dp_runs"] = res.stats.dp_runs;
    record["dp_states"] = res.stats.dp_states;
    record["peak_table"] = res.stats.peak_table;
    record["contractions"] = res.stats.contractions;
    record["time_ms"] = ms;

    int code = res.answer ? kExitYes : kExitNo;
    if (res.witness) {
        const bool ok = verify_witness(inst.graph(), *res.witness, problem, problem == Problem::LongestCycle
                                                                                 ? std::max(cfg.k, 3)
                                                                                 : cfg.k);
        record["witness_valid"] = ok;
        if (res.witness->kind == WitnessKind::CycleFamily) {
            std::string joined;
            for (std::size_t i = 0; i < res.witness->cycles.size(); ++i)
                joined += (i ? ";" : "") + join_one_indexed(res.witness->cycles[i]);
            record["witness"] = joined;
        } else {
            record["witness"] = join_one_indexed(res.witness->vertices);
        }
        if (!ok) code = kExitError;
    }
    if (cfg.check) {
        try {
            const bool expected = oracle_answer(inst.graph(), problem, cfg.k);
            record["check"] = expected == res.answer ? "agreement" : "disagreement";
            if (expected != res.answer) code = kExitDisagree;
        } catch (const BudgetError& e) {
            record["check"] = "unavailable";
        }
    }

    for (const char* key : {"problem", "model", "k", "n", "m", "answer", "decided_by", "witness", "witness_valid",
                            "check", "windows", "family_members", "dp_runs", "dp_states", "peak_table",
                            "contractions", "time_ms"}) {
        if (!record.contains(key)) continue;
        const auto& v = record[key];
        std::cout << key << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    if (!cfg.json.empty()) {
        std::ofstream jf(cfg.json);
        jf << record.dump(2) << '\n';
    }
    return code;
}

int cmd_kernelize(const RunConfig& cfg) {
    const Problem problem = parse_problem(cfg.problem);
    if (problem != Problem::ExactCycle && problem != Problem::LongestPath && problem != Problem::LongestCycle)
        throw ParameterError("kernelize supports exact-cycle, longest-path and longest-cycle");
    const CliqueGridInstance inst = CliqueGridInstance::from_cloud(load_points(cfg.input), parse_model(cfg.model));
    const KernelOutput out = turing_kernel(
        inst, cfg.k,
        problem == Problem::LongestCycle ? KernelProblem::LongestCycle : KernelProblem::SubgraphIsomorphism);
    const std::string report = kernel_report(out, cfg.k);
    std::cout << report;
    if (!cfg.output.empty()) {
        std::filesystem::create_directories(cfg.output);
        for (std::size_t i = 0; i < out.windows.size(); ++i) {
            const auto base = std::filesystem::path(cfg.output) / ("window_" + std::to_string(i + 1));
            std::ofstream gr(base.string() + ".gr"), cells(base.string() + ".cells"), map(base.string() + ".map");
            write_gr(gr, out.windows[i].instance.graph());
            write_representation(cells, out.windows[i].instance.rep());
            for (Vertex v : out.windows[i].to_original) map << v + 1 << '\n';
        }
        std::ofstream(std::filesystem::path(cfg.output) / "report.txt") << report;
    }
    return report.find("audit=fail") == std::string::npos ? kExitYes : kExitError;
}

int cmd_decompose(const RunConfig& cfg) {
    const CliqueGridInstance inst = CliqueGridInstance::from_cloud(load_points(cfg.input), parse_model(cfg.model));
    std::ofstream file;
    std::ostream& out = open_output(cfg.output, file);
    if (cfg.kind == "tree") {
        const TreewidthResult tw = exact_treewidth(inst.graph());
        if (tw.status != TreewidthStatus::Ok) throw BudgetError("treewidth search ran out of budget");
        write_td(out, tw.decomposition, inst.vertex_count());
        std::cerr << "width=" << tw.decomposition.width() << " exact=" << (tw.exact ? 1 : 0) << '\n';
    } else if (cfg.kind == "nctd") {
        const CellNCTDResult r = build_cell_nctd(inst);
        if (r.status != TreewidthStatus::Ok) throw BudgetError("cell decomposition ran out of budget");
        TreeDecomposition lifted = r.nctd.cell_tree.as_tree();
        for (std::size_t i = 0; i < lifted.nodes.size(); ++i) lifted.nodes[i].bag = r.nctd.bags[i];
        write_td(out, lifted, inst.vertex_count());
        std::cerr << "cells_per_bag=" << r.nctd.max_cells_per_bag() << '\n';
    } else if (cfg.kind == "cell-graph") {
        write_gr(out, cell_graph(inst).graph);
    } else if (cfg.kind == "backbone") {
        const Backbone bb = minimal_backbone(inst);
        write_gr(out, bb.graph);
        std::vector<int> per_cell(inst.cells().size(), 0);
        for (Vertex v : bb.vertices) ++per_cell[inst.cell_index(v)];
        const int cell_max = per_cell.empty() ? 0 : *std::max_element(per_cell.begin(), per_cell.end());
        const int degree = bb.graph.max_degree();
        std::cerr << "vertices=" << bb.vertices.size() << " cell_max=" << cell_max << " max_degree=" << degree
                  << " audit=" << (cell_max <= kBackboneCellBound && degree <= kBackboneDegreeBound ? "pass" : "fail")
                  << '\n';
    } else if (cfg.kind == "representation") {
        write_representation(out, inst.rep());
    } else {
        throw ParameterError("unknown decomposition kind: " + cfg.kind);
    }
    return kExitYes;
}

int cmd_bench(const RunConfig& cfg) {
    const Problem problem = parse_problem(cfg.problem);
    const Model model = parse_model(cfg.model);
    std::cout << "seed\tn\tm\tanswer\ttime_ms\tdp_states\tpeak_table\n";
    int code = kExitYes;
    for (int i = 0; i < cfg.seeds; ++i) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
        const PointCloud cloud = generate(cfg.n, side_for(cfg), seed);
        if (cloud.empty()) continue;
        const auto start = std::chrono::steady_clock::now();
        const CliqueGridInstance inst = CliqueGridInstance::from_cloud(cloud, model);
        const SolveResult res = dispatch(inst, problem, cfg.k, cfg);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::string answer = res.answer ? "YES" : "NO";
        if (cfg.check) {
            try {
                if (oracle_answer(inst.graph(), problem, cfg.k) != res.answer) {
                    answer += "!";
                    code = kExitDisagree;
                }
            } catch (const BudgetError&) {
            }
        }
        std::cout << seed << '\t' << inst.vertex_count() << '\t' << inst.graph().edge_count() << '\t' << answer
                  << '\t' << ms << '\t' << res.stats.dp_states << '\t' << res.stats.peak_table << '\n';
    }
    return code;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--model", cfg.model, "disk or square")->envname("UDG_MODEL");
    cmd->add_option("--seed", cfg.seed, "generator seed")->envname("UDG_SEED");
}

void add_solver_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--problem", cfg.problem, "exact-cycle, longest-path, longest-cycle, fvs, cycle-packing")
        ->envname("UDG_PROBLEM");
    cmd->add_option("-k,--k", cfg.k, "parameter")->envname("UDG_K");
    cmd->add_flag("--check,!--no-check", cfg.check, "compare against the brute-force oracle")->envname("UDG_CHECK");
    cmd->add_flag("--witness,!--no-witness", cfg.witness, "emit and verify a witness")->envname("UDG_WITNESS");
    cmd->add_flag("--faithful-caps", cfg.faithful_caps, "use the theoretical DP caps")->envname("UDG_FAITHFUL_CAPS");
    cmd->add_option("--jobs", cfg.jobs, "worker threads")->envname("UDG_JOBS")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle problems on unit disk and unit square graphs"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* gen = app.add_subcommand("gen", "uniform random points in a square");
    gen->add_option("-n,--n", cfg.n, "number of points")->check(CLI::NonNegativeNumber);
    gen->add_option("--side", cfg.side, "side length of the square region");
    gen->add_option("--degree", cfg.degree, "target average degree when --side is absent");
    gen->add_option("-o,--output", cfg.output, "output file (default stdout)");
    add_common(gen, cfg);

    auto* solve = app.add_subcommand("solve", "solve one instance");
    solve->add_option("input", cfg.input, "point file ('-' for stdin)");
    solve->add_option("--json", cfg.json, "also write the record as JSON");
    add_common(solve, cfg);
    add_solver_flags(solve, cfg);

    auto* kern = app.add_subcommand("kernelize", "Turing kernel windows and size audit");
    kern->add_option("input", cfg.input, "point file");
    kern->add_option("-o,--output", cfg.output, "directory for window files");
    add_common(kern, cfg);
    kern->add_option("--problem", cfg.problem, "exact-cycle, longest-path or longest-cycle")->envname("UDG_PROBLEM");
    kern->add_option("-k,--k", cfg.k, "parameter")->envname("UDG_K");

    auto* dec = app.add_subcommand("decompose", "export decompositions");
    dec->add_option("input", cfg.input, "point file");
    dec->add_option("--kind", cfg.kind, "tree, nctd, cell-graph, backbone or representation");
    dec->add_option("-o,--output", cfg.output, "output file (default stdout)");
    add_common(dec, cfg);

    auto* bench = app.add_subcommand("bench", "run a seeded suite and print a table");
    bench->add_option("-n,--n", cfg.n, "points per instance");
    bench->add_option("--seeds", cfg.seeds, "number of instances")->check(CLI::NonNegativeNumber);
    bench->add_option("--side", cfg.side, "side length of the square region");
    bench->add_option("--degree", cfg.degree, "target average degree when --side is absent");
    add_common(bench, cfg);
    add_solver_flags(bench, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }
    try {
        if (*gen) return cmd_gen(cfg);
        if (*solve) return cmd_solve(cfg);
        if (*kern) return cmd_kernelize(cfg);
        if (*dec) return cmd_decompose(cfg);
        if (*bench) return cmd_bench(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
