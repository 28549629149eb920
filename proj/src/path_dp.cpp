#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "udg/cycles.hpp"
#include "udg/errors.hpp"
#include "udg/hitting_packing.hpp"

namespace udg {

namespace {

// Per bag vertex: kFree (degree 0), kFull (degree 2), or the vertex at the
// other end of its path (degree 1).
constexpr int kFree = -1;
constexpr int kFull = -2;

struct TwState {
    std::vector<int> codes;  // aligned with the node's sorted bag
    int count = 0;           // edges chosen (longest cycle) or cycles closed (packing), capped at k
    bool operator==(const TwState&) const = default;
};

struct TwStateHash {
    std::size_t operator()(const TwState& s) const {
        std::size_t h = static_cast<std::size_t>(s.count);
        for (int c : s.codes) h = h * 1000003u ^ static_cast<std::size_t>(c + 2);
        return h;
    }
};

struct Back {
    int left = -1;
    int right = -1;
    std::vector<Edge> edges;
};

struct NodeTable {
    std::vector<TwState> states;
    std::vector<Back> backs;
    std::unordered_map<TwState, int, TwStateHash> index;

    void insert(TwState s, Back b) {
        if (index.try_emplace(s, static_cast<int>(states.size())).second) {
            states.push_back(std::move(s));
            backs.push_back(std::move(b));
        }
    }
};

enum class AddOutcome { Invalid, Extended, Closed };

int slot(const std::vector<Vertex>& bag, Vertex v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

AddOutcome add_edge(const std::vector<Vertex>& bag, std::vector<int>& codes, Vertex a, Vertex b) {
    const int pa = slot(bag, a), pb = slot(bag, b);
    if (codes[pa] == kFull || codes[pb] == kFull) return AddOutcome::Invalid;
    if (codes[pa] == b && codes[pb] == a) {
        codes[pa] = codes[pb] = kFull;
        return AddOutcome::Closed;
    }
    const Vertex ea = codes[pa] == kFree ? a : codes[pa];
    const Vertex eb = codes[pb] == kFree ? b : codes[pb];
    if (codes[pa] != kFree) codes[pa] = kFull;
    if (codes[pb] != kFree) codes[pb] = kFull;
    codes[slot(bag, ea)] = eb;
    codes[slot(bag, eb)] = ea;
    return AddOutcome::Extended;
}

bool has_open_end(const std::vector<int>& codes) {
    return std::any_of(codes.begin(), codes.end(), [](int c) { return c >= 0; });
}

enum class Goal { LongCycle, Packing };

using StateFilter = std::function<bool(const std::vector<Vertex>& bag, const std::vector<int>& codes)>;

// Vertex-disjoint paths and cycles over a nice tree decomposition. Each edge
// is decided at the Forget node of its first forgotten endpoint.
class PathDp {
public:
    PathDp(const SimpleGraph& g, const NiceTreeDecomposition& ntd, Goal goal, int k, bool witness,
           StateFilter filter)
        : g_(g), ntd_(ntd), goal_(goal), k_(k), witness_(witness), filter_(std::move(filter)),
          tables_(ntd.nodes.size()) {}

    bool run() {
        for (int x : ntd_.postorder()) {
            process(x);
            if (found_) break;
            if (!witness_)
                for (int c : ntd_.nodes[x].children) tables_[c] = {};
        }
        return found_;
    }

    std::uint64_t states() const { return states_; }
    std::size_t peak() const { return peak_; }
    const std::vector<Edge>& edges() const { return edges_; }

private:
    void process(int x) {
        const auto& node = ntd_.nodes[x];
        NodeTable& out = tables_[x];
        switch (node.kind) {
            case NodeKind::Leaf:
                out.insert(TwState{std::vector<int>(node.bag.size(), kFree), 0}, Back{});
                break;
            case NodeKind::Introduce: {
                const NodeTable& in = tables_[node.children[0]];
                const int p = slot(node.bag, node.vertex);
                for (std::size_t i = 0; i < in.states.size(); ++i) {
                    TwState s = in.states[i];
                    s.codes.insert(s.codes.begin() + p, kFree);
                    out.insert(std::move(s), Back{static_cast<int>(i), -1, {}});
                }
                break;
            }
            case NodeKind::Forget:
                forget(x);
                break;
            case NodeKind::Join:
                join(x);
                break;
        }
        states_ += out.states.size();
        peak_ = std::max(peak_, out.states.size());
    }

    // Applies a closure; returns false if the state must be dropped.
    bool close(TwState& s, int x, const Back& back) {
        if (goal_ == Goal::LongCycle) {
            if (!has_open_end(s.codes) && s.count >= k_) found(x, back);
            return false;
        }
        s.count = std::min(k_, s.count + 1);
        if (s.count >= k_) {
            found(x, back);
            return false;
        }
        return true;
    }

    void emit(int x, TwState s, Back back) {
        if (filter_ && !filter_(ntd_.nodes[x].bag, s.codes)) return;
        tables_[x].insert(std::move(s), std::move(back));
    }

    void forget(int x) {
        const auto& node = ntd_.nodes[x];
        const int child = node.children[0];
        const auto& cbag = ntd_.nodes[child].bag;
        const Vertex v = node.vertex;
        const int pv = slot(cbag, v);
        std::vector<Vertex> nbrs;
        for (Vertex w : cbag)
            if (w != v && g_.has_edge(v, w)) nbrs.push_back(w);
        const NodeTable& in = tables_[child];
        std::vector<std::vector<Vertex>> choices{{}};
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            choices.push_back({nbrs[i]});
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) choices.push_back({nbrs[i], nbrs[j]});
        }
        for (std::size_t i = 0; i < in.states.size() && !found_; ++i) {
            for (const auto& choice : choices) {
                TwState s = in.states[i];
                bool ok = true;
                int closures = 0;
                std::vector<Edge> edges;
                for (Vertex w : choice) {
                    const AddOutcome o = add_edge(cbag, s.codes, v, w);
                    if (o == AddOutcome::Invalid) {
                        ok = false;
                        break;
                    }
                    closures += o == AddOutcome::Closed;
                    edges.emplace_back(v, w);
                }
                if (!ok || s.codes[pv] >= 0) continue;
                if (goal_ == Goal::LongCycle) s.count = std::min(k_, s.count + static_cast<int>(edges.size()));
                Back back{static_cast<int>(i), -1, std::move(edges)};
                if (closures && !close(s, x, back)) {
                    if (found_) return;
                    continue;
                }
                s.codes.erase(s.codes.begin() + pv);
                emit(x, std::move(s), std::move(back));
            }
        }
    }

    void join(int x) {
        const auto& node = ntd_.nodes[x];
        const auto& bag = node.bag;
        const NodeTable& left = tables_[node.children[0]];
        const NodeTable& right = tables_[node.children[1]];
        for (std::size_t i = 0; i < left.states.size() && !found_; ++i)
            for (std::size_t j = 0; j < right.states.size() && !found_; ++j) {
                const TwState& l = left.states[i];
                const TwState& r = right.states[j];
                TwState s = l;
                s.count = std::min(k_, l.count + r.count);
                bool ok = true;
                int closures = 0;
                for (std::size_t p = 0; p < bag.size() && ok; ++p)
                    if (r.codes[p] == kFull) {
                        if (l.codes[p] != kFree) ok = false;
                        s.codes[p] = kFull;
                    }
                for (std::size_t p = 0; p < bag.size() && ok; ++p) {
                    const int other = r.codes[p];
                    if (other < 0 || bag[p] > other) continue;
                    if (closures && goal_ == Goal::LongCycle) {
                        ok = false;
                        break;
                    }
                    const AddOutcome o = add_edge(bag, s.codes, bag[p], other);
                    ok = o != AddOutcome::Invalid;
                    closures += o == AddOutcome::Closed;
                }
                if (!ok) continue;
                const Back back{static_cast<int>(i), static_cast<int>(j), {}};
                if (goal_ == Goal::Packing && s.count >= k_) {
                    found(x, back);
                    return;
                }
                bool keep = true;
                for (int c = 0; c < closures && keep; ++c) keep = close(s, x, back);
                if (keep) emit(x, std::move(s), back);
            }
    }

    void found(int x, const Back& back) {
        found_ = true;
        if (!witness_) return;
        edges_ = back.edges;
        const auto& node = ntd_.nodes[x];
        collect(node.children[0], back.left, edges_);
        if (node.kind == NodeKind::Join) collect(node.children[1], back.right, edges_);
    }

    void collect(int x, int idx, std::vector<Edge>& edges) const {
        std::vector<std::pair<int, int>> stack{{x, idx}};
        while (!stack.empty()) {
            auto [node_id, i] = stack.back();
            stack.pop_back();
            const auto& node = ntd_.nodes[node_id];
            const Back& b = tables_[node_id].backs[i];
            edges.insert(edges.end(), b.edges.begin(), b.edges.end());
            if (node.kind == NodeKind::Leaf) continue;
            stack.push_back({node.children[0], b.left});
            if (node.kind == NodeKind::Join) stack.push_back({node.children[1], b.right});
        }
    }

    const SimpleGraph& g_;
    const NiceTreeDecomposition& ntd_;
    Goal goal_;
    int k_;
    bool witness_;
    StateFilter filter_;
    std::vector<NodeTable> tables_;
    bool found_ = false;
    std::uint64_t states_ = 0;
    std::size_t peak_ = 0;
    std::vector<Edge> edges_;
};

// Appends Forget nodes so that the root bag is empty.
NiceTreeDecomposition with_empty_root(const NiceTreeDecomposition& ntd) {
    NiceTreeDecomposition out = ntd;
    std::vector<Vertex> bag = ntd.nodes[ntd.root].bag;
    while (!bag.empty()) {
        const Vertex v = bag.back();
        bag.pop_back();
        out.nodes.push_back({NodeKind::Forget, bag, {out.root}, v});
        out.root = static_cast<int>(out.nodes.size()) - 1;
    }
    return out;
}

// Components of the edge set in which every vertex has degree two.
std::vector<std::vector<Vertex>> closed_cycles(const std::vector<Edge>& edges) {
    std::map<Vertex, std::vector<Vertex>> adj;
    for (auto [a, b] : edges) adj[a].push_back(b), adj[b].push_back(a);
    std::map<Vertex, bool> seen;
    std::vector<std::vector<Vertex>> out;
    for (const auto& [start, nb] : adj) {
        if (seen[start]) continue;
        std::vector<Vertex> comp, stack{start};
        seen[start] = true;
        bool cycle = true;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            cycle = cycle && adj[x].size() == 2;
            for (Vertex y : adj[x])
                if (!seen[y]) seen[y] = true, stack.push_back(y);
        }
        if (!cycle) continue;
        std::vector<Edge> own;
        for (auto [a, b] : edges)
            if (std::find(comp.begin(), comp.end(), a) != comp.end()) own.emplace_back(a, b);
        out.push_back(cycle_from_edges(own));
    }
    return out;
}

}  // namespace

TwCycleResult tw_longest_cycle(const SimpleGraph& g, const NiceTreeDecomposition& ntd, int k, bool witness) {
    if (!verify_nice(g, ntd)) throw StructureError("not a nice tree decomposition of the graph");
    const NiceTreeDecomposition rooted = with_empty_root(ntd);
    PathDp dp(g, rooted, Goal::LongCycle, std::max(k, 3), witness, {});
    TwCycleResult r;
    r.found = dp.run();
    r.states = dp.states();
    if (r.found && witness) r.cycle = cycle_from_edges(dp.edges());
    return r;
}

PackingResult packing_dp(const CliqueGridInstance& inst, const CellNCTD& nctd, int k, const PackingOptions& opts) {
    if (!verify_cell_nctd(inst, nctd)) throw StructureError("not a cell decomposition of the instance");
    PackingResult r;
    if (k <= 0) {
        r.found = true;
        return r;
    }
    std::size_t cap = 0;
    switch (opts.cap) {
        case PackingCap::Faithful:
            cap = static_cast<std::size_t>(kPackingCrossBound) * std::max<std::size_t>(1, nctd.max_cells_per_bag());
            break;
        case PackingCap::Adaptive:
            cap = static_cast<std::size_t>(3 * k);
            break;
        case PackingCap::Unpruned:
            break;
    }
    StateFilter filter;
    if (opts.cap == PackingCap::Faithful) {
        filter = [cap](const std::vector<Vertex>&, const std::vector<int>& codes) {
            return static_cast<std::size_t>(std::count_if(codes.begin(), codes.end(), [](int c) { return c >= 0; })) <=
                   cap;
        };
    } else if (opts.cap == PackingCap::Adaptive) {
        filter = [cap, &inst](const std::vector<Vertex>& bag, const std::vector<int>& codes) {
            std::map<std::size_t, std::size_t> per_cell;
            for (std::size_t p = 0; p < bag.size(); ++p)
                if (codes[p] != kFree && ++per_cell[inst.cell_index(bag[p])] > cap) return false;
            return true;
        };
    }
    const NiceTreeDecomposition ntd = with_empty_root(expand_to_vertices(inst, nctd));
    PathDp dp(inst.graph(), ntd, Goal::Packing, k, opts.witness, std::move(filter));
    r.found = dp.run();
    r.states = dp.states();
    r.peak_table = dp.peak();
    if (r.found && opts.witness) {
        for (auto& c : closed_cycles(dp.edges())) r.cycles.push_back(shortcut_to_induced(inst.graph(), c));
        r.cycles.resize(static_cast<std::size_t>(k));
    }
    return r;
}

}  // namespace udg
