#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "udg/errors.hpp"
#include "udg/hitting_packing.hpp"
#include "udg/oracle.hpp"

namespace udg {

namespace {

constexpr char kOut = -1;

// Relabels blocks in order of first appearance along the sorted bag.
void canonicalize(std::string& labels) {
    char map[128];
    std::fill(std::begin(map), std::end(map), kOut);
    char next = 0;
    for (char& c : labels) {
        if (c == kOut) continue;
        if (map[static_cast<int>(c)] == kOut) map[static_cast<int>(c)] = next++;
        c = map[static_cast<int>(c)];
    }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

struct MifBack {
    int left = -1;
    int right = -1;
    bool chosen = false;
};

struct MifTable {
    std::vector<std::string> states;
    std::vector<int> values;
    std::vector<MifBack> backs;
    std::unordered_map<std::string, int> index;

    void offer(std::string s, int value, MifBack back) {
        auto [it, fresh] = index.try_emplace(s, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back(std::move(s));
            values.push_back(value);
            backs.push_back(back);
        } else if (values[it->second] < value) {
            values[it->second] = value;
            backs[it->second] = back;
        }
    }
};

class MifDp {
public:
    MifDp(const CliqueGridInstance& inst, const NiceTreeDecomposition& ntd, const MifOptions& opts)
        : inst_(inst), ntd_(ntd), opts_(opts), tables_(ntd.nodes.size()), count_(ntd.nodes.size(), 0) {}

    MifResult run() {
        for (int x : ntd_.postorder()) {
            process(x);
            auto& t = tables_[x];
            result_.states += t.states.size();
            result_.peak_table = std::max(result_.peak_table, t.states.size());
            for (const auto& s : t.states)
                result_.max_chosen_in_bag = std::max<std::size_t>(
                    result_.max_chosen_in_bag, static_cast<std::size_t>(std::count_if(
                                                   s.begin(), s.end(), [](char c) { return c != kOut; })));
            if (!opts_.witness)
                for (int c : ntd_.nodes[x].children) tables_[c] = {};
        }
        const MifTable& root = tables_[ntd_.root];
        int best = -1;
        for (std::size_t i = 0; i < root.states.size(); ++i)
            if (best < 0 || root.values[i] > root.values[best]) best = static_cast<int>(i);
        if (best < 0) return result_;
        result_.max_forest = root.values[best];
        if (opts_.witness) collect(ntd_.root, best);
        std::sort(result_.forest.begin(), result_.forest.end());
        result_.forest.erase(std::unique(result_.forest.begin(), result_.forest.end()), result_.forest.end());
        return result_;
    }

private:
    void process(int x) {
        const auto& node = ntd_.nodes[x];
        MifTable next;
        switch (node.kind) {
            case NodeKind::Leaf:
                count_[x] = static_cast<int>(node.bag.size());
                leaf(node.bag, next);
                break;
            case NodeKind::Introduce:
                count_[x] = count_[node.children[0]] + 1;
                introduce(x, next);
                break;
            case NodeKind::Forget:
                count_[x] = count_[node.children[0]];
                forget(x, next);
                break;
            case NodeKind::Join:
                count_[x] = count_[node.children[0]] + count_[node.children[1]] - static_cast<int>(node.bag.size());
                join(x, next);
                break;
        }
        if (opts_.deletion_budget) {
            MifTable kept;
            for (std::size_t i = 0; i < next.states.size(); ++i)
                if (count_[x] - next.values[i] <= *opts_.deletion_budget)
                    kept.offer(next.states[i], next.values[i], next.backs[i]);
            next = std::move(kept);
        }
        tables_[x] = std::move(next);
    }

    bool cell_full(const std::vector<Vertex>& bag, const std::string& s, Vertex v) const {
        if (!opts_.prune) return false;
        int in_cell = 0;
        for (std::size_t p = 0; p < bag.size(); ++p)
            in_cell += s[p] != kOut && bag[p] != v && inst_.cell_index(bag[p]) == inst_.cell_index(v);
        return in_cell >= 2;
    }

    // Leaves normally have empty bags; otherwise every subset is a start.
    void leaf(const std::vector<Vertex>& bag, MifTable& out) {
        out.offer(std::string(bag.size(), kOut), 0, {});
        for (std::size_t p = 0; p < bag.size(); ++p) {
            MifTable grown = out;
            for (std::size_t i = 0; i < out.states.size(); ++i) {
                std::string s = out.states[i];
                if (cell_full(bag, s, bag[p])) continue;
                s[p] = static_cast<char>(p + 64);
                canonicalize(s);
                if (!forms_cycle(bag, s)) grown.offer(s, out.values[i] + 1, {});
            }
            out = std::move(grown);
        }
    }

    bool forms_cycle(const std::vector<Vertex>& bag, std::string& s) const {
        UnionFind uf(bag.size());
        for (std::size_t p = 0; p < bag.size(); ++p)
            for (std::size_t q = p + 1; q < bag.size(); ++q)
                if (s[p] != kOut && s[q] != kOut && inst_.graph().has_edge(bag[p], bag[q]) && !uf.unite(p, q))
                    return true;
        return false;
    }

    void introduce(int x, MifTable& out) {
        const auto& node = ntd_.nodes[x];
        const MifTable& in = tables_[node.children[0]];
        const auto p = static_cast<std::size_t>(std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex) -
                                                node.bag.begin());
        for (std::size_t i = 0; i < in.states.size(); ++i) {
            std::string s = in.states[i];
            s.insert(s.begin() + static_cast<std::ptrdiff_t>(p), kOut);
            out.offer(s, in.values[i], {static_cast<int>(i), -1, false});
            if (cell_full(node.bag, s, node.vertex)) continue;
            s[p] = 100;
            canonicalize(s);
            out.offer(std::move(s), in.values[i] + 1, {static_cast<int>(i), -1, true});
        }
    }

    void forget(int x, MifTable& out) {
        const auto& node = ntd_.nodes[x];
        const auto& cbag = ntd_.nodes[node.children[0]].bag;
        const MifTable& in = tables_[node.children[0]];
        const auto pv = static_cast<std::size_t>(std::lower_bound(cbag.begin(), cbag.end(), node.vertex) -
                                                 cbag.begin());
        for (std::size_t i = 0; i < in.states.size(); ++i) {
            std::string s = in.states[i];
            if (s[pv] != kOut) {
                UnionFind uf(cbag.size());
                bool cycle = false;
                for (std::size_t q = 0; q < cbag.size() && !cycle; ++q)
                    if (q != pv && s[q] != kOut && inst_.graph().has_edge(node.vertex, cbag[q]))
                        cycle = !uf.unite(s[pv], s[q]);
                if (cycle) continue;
                for (char& c : s)
                    if (c != kOut) c = static_cast<char>(uf.find(c));
            }
            s.erase(s.begin() + static_cast<std::ptrdiff_t>(pv));
            canonicalize(s);
            out.offer(std::move(s), in.values[i], {static_cast<int>(i), -1, false});
        }
    }

    void join(int x, MifTable& out) {
        const auto& node = ntd_.nodes[x];
        const MifTable& left = tables_[node.children[0]];
        const MifTable& right = tables_[node.children[1]];
        const std::size_t m = node.bag.size();
        std::unordered_map<std::string, std::vector<int>> right_by_set;
        for (std::size_t j = 0; j < right.states.size(); ++j) {
            std::string key(m, '0');
            for (std::size_t p = 0; p < m; ++p) key[p] = right.states[j][p] == kOut ? '0' : '1';
            right_by_set[key].push_back(static_cast<int>(j));
        }
        for (std::size_t i = 0; i < left.states.size(); ++i) {
            const std::string& l = left.states[i];
            std::string key(m, '0');
            int chosen = 0;
            for (std::size_t p = 0; p < m; ++p) {
                key[p] = l[p] == kOut ? '0' : '1';
                chosen += l[p] != kOut;
            }
            auto it = right_by_set.find(key);
            if (it == right_by_set.end()) continue;
            for (int j : it->second) {
                const std::string& r = right.states[j];
                UnionFind uf(m);
                bool cycle = false;
                for (const std::string* side : {&l, &r}) {
                    std::vector<int> first(m, -1);
                    for (std::size_t p = 0; p < m && !cycle; ++p) {
                        const char c = (*side)[p];
                        if (c == kOut) continue;
                        if (first[c] < 0) first[c] = static_cast<int>(p);
                        else cycle = !uf.unite(first[c], static_cast<int>(p));
                    }
                }
                if (cycle) continue;
                std::string s(m, kOut);
                for (std::size_t p = 0; p < m; ++p)
                    if (l[p] != kOut) s[p] = static_cast<char>(uf.find(static_cast<int>(p)));
                canonicalize(s);
                out.offer(std::move(s), left.values[i] + right.values[j] - chosen,
                          {static_cast<int>(i), j, false});
            }
        }
    }

    void collect(int x, int idx) {
        std::vector<std::pair<int, int>> stack{{x, idx}};
        while (!stack.empty()) {
            auto [node_id, i] = stack.back();
            stack.pop_back();
            const auto& node = ntd_.nodes[node_id];
            const MifBack& b = tables_[node_id].backs[i];
            if (node.kind == NodeKind::Leaf) {
                const std::string& s = tables_[node_id].states[i];
                for (std::size_t p = 0; p < node.bag.size(); ++p)
                    if (s[p] != kOut) result_.forest.push_back(node.bag[p]);
                continue;
            }
            if (node.kind == NodeKind::Introduce && b.chosen) result_.forest.push_back(node.vertex);
            stack.push_back({node.children[0], b.left});
            if (node.kind == NodeKind::Join) stack.push_back({node.children[1], b.right});
        }
    }

    const CliqueGridInstance& inst_;
    const NiceTreeDecomposition& ntd_;
    MifOptions opts_;
    std::vector<MifTable> tables_;
    std::vector<int> count_;
    MifResult result_;
};

std::optional<std::size_t> cell_at_least(const CliqueGridInstance& inst, int size) {
    for (std::size_t c = 0; c < inst.cells().size(); ++c)
        if (static_cast<int>(inst.members(c).size()) >= size) return c;
    return std::nullopt;
}

}  // namespace

MifResult mif_dp(const CliqueGridInstance& inst, const CellNCTD& nctd, const MifOptions& opts) {
    if (!verify_cell_nctd(inst, nctd)) throw StructureError("not a cell decomposition of the instance");
    if (std::any_of(nctd.bags.begin(), nctd.bags.end(), [](const auto& b) { return b.size() > 60; }))
        throw ConfigurationError("bags above 60 vertices are not supported");
    const NiceTreeDecomposition ntd = expand_to_vertices(inst, nctd);
    return MifDp(inst, ntd, opts).run();
}

SolveResult fvs(const CliqueGridInstance& inst, int k, const HittingOptions& opts) {
    if (k < 0) throw ParameterError("deletion budget must be non-negative");
    SolveResult res;
    const int n = inst.vertex_count();
    if (is_forest(inst.graph())) {
        res.answer = true;
        res.decided_by = "forest";
        if (opts.witness) res.witness = Witness{WitnessKind::VertexSet, {}, {}};
        return res;
    }
    if (cell_at_least(inst, k + 3)) {
        res.decided_by = "clique-cell";
        return res;
    }
    const CellNCTDResult built = build_cell_nctd(inst, kUnboundedWidth, opts.treewidth_budget);
    if (built.status != TreewidthStatus::Ok) {
        std::vector<Vertex> w;
        res.answer = oracle::brute_fvs(inst.graph(), k, {}, opts.witness ? &w : nullptr);
        res.decided_by = "oracle-fallback";
        if (res.answer && opts.witness) res.witness = Witness{WitnessKind::VertexSet, w, {}};
        return res;
    }
    MifOptions mo;
    mo.prune = opts.prune;
    mo.deletion_budget = k;
    mo.witness = opts.witness;
    const MifResult mif = mif_dp(inst, built.nctd, mo);
    res.stats.dp_runs = 1;
    res.stats.dp_states = mif.states;
    res.stats.peak_table = mif.peak_table;
    res.decided_by = "mif-dp";
    res.answer = mif.max_forest >= 0 && n - mif.max_forest <= k;
    if (res.answer && opts.witness) {
        Witness w{WitnessKind::VertexSet, {}, {}};
        for (Vertex v = 0; v < n; ++v)
            if (!std::binary_search(mif.forest.begin(), mif.forest.end(), v)) w.vertices.push_back(v);
        res.witness = std::move(w);
    }
    return res;
}

SolveResult cycle_packing(const CliqueGridInstance& inst, int k, const PackingOptions& opts) {
    if (k < 0) throw ParameterError("packing size must be non-negative");
    SolveResult res;
    if (k == 0) {
        res.answer = true;
        res.decided_by = "trivial";
        if (opts.witness) res.witness = Witness{WitnessKind::CycleFamily, {}, {}};
        return res;
    }
    if (auto c = cell_at_least(inst, 3 * k)) {
        res.answer = true;
        res.decided_by = "clique-cell";
        if (opts.witness) {
            auto m = inst.members(*c);
            Witness w{WitnessKind::CycleFamily, {}, {}};
            for (int i = 0; i < k; ++i) w.cycles.push_back({m[3 * i], m[3 * i + 1], m[3 * i + 2]});
            res.witness = std::move(w);
        }
        return res;
    }
    const CellNCTDResult built = build_cell_nctd(inst, kUnboundedWidth, opts.treewidth_budget);
    if (built.status != TreewidthStatus::Ok) {
        std::vector<std::vector<Vertex>> w;
        res.answer = oracle::brute_cycle_packing(inst.graph(), k, {}, opts.witness ? &w : nullptr);
        res.decided_by = "oracle-fallback";
        if (res.answer && opts.witness) res.witness = Witness{WitnessKind::CycleFamily, {}, w};
        return res;
    }
    const PackingResult r = packing_dp(inst, built.nctd, k, opts);
    res.stats.dp_runs = 1;
    res.stats.dp_states = r.states;
    res.stats.peak_table = r.peak_table;
    res.decided_by = "packing-dp";
    res.answer = r.found;
    if (r.found && opts.witness) res.witness = Witness{WitnessKind::CycleFamily, {}, r.cycles};
    return res;
}

std::vector<Vertex> shortcut_to_induced(const SimpleGraph& g, std::vector<Vertex> cycle) {
    for (bool changed = true; changed;) {
        changed = false;
        const std::size_t m = cycle.size();
        for (std::size_t i = 0; i < m && !changed; ++i)
            for (std::size_t j = i + 2; j < m && !changed; ++j) {
                if (i == 0 && j == m - 1) continue;
                if (!g.has_edge(cycle[i], cycle[j])) continue;
                std::vector<Vertex> inner(cycle.begin() + static_cast<std::ptrdiff_t>(i),
                                          cycle.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                std::vector<Vertex> outer(cycle.begin() + static_cast<std::ptrdiff_t>(j), cycle.end());
                outer.insert(outer.end(), cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                cycle = inner.size() <= outer.size() ? std::move(inner) : std::move(outer);
                changed = true;
            }
    }
    return cycle;
}

}  // namespace udg
