#include "udg/decomp.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>

#include "udg/errors.hpp"

namespace udg {

int TreeDecomposition::width() const {
    int best = -1;
    for (const auto& node : nodes) best = std::max(best, static_cast<int>(node.bag.size()) - 1);
    return best;
}

int NiceTreeDecomposition::width() const {
    int best = -1;
    for (const auto& node : nodes) best = std::max(best, static_cast<int>(node.bag.size()) - 1);
    return best;
}

TreeDecomposition NiceTreeDecomposition::as_tree() const {
    TreeDecomposition td;
    td.root = root;
    td.nodes.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        td.nodes[i].bag = nodes[i].bag;
        td.nodes[i].children = nodes[i].children;
        for (int c : nodes[i].children)
            if (c >= 0 && c < static_cast<int>(nodes.size())) td.nodes[c].parent = static_cast<int>(i);
    }
    return td;
}

std::vector<int> NiceTreeDecomposition::postorder() const {
    std::vector<int> out;
    if (root < 0) return out;
    std::vector<std::pair<int, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [x, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            out.push_back(x);
            continue;
        }
        stack.emplace_back(x, true);
        const auto& ch = nodes[x].children;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.emplace_back(*it, false);
    }
    return out;
}

bool verify_decomposition(const SimpleGraph& g, const TreeDecomposition& td) {
    const int n = g.vertex_count();
    const int count = static_cast<int>(td.nodes.size());
    if (count == 0) return n == 0;
    if (td.root < 0 || td.root >= count || td.nodes[td.root].parent != -1) return false;

    // Tree shape: parent/child links agree and every node is reached once.
    for (int i = 0; i < count; ++i) {
        for (int c : td.nodes[i].children)
            if (c < 0 || c >= count || td.nodes[c].parent != i) return false;
        const int p = td.nodes[i].parent;
        if (i != td.root) {
            if (p < 0 || p >= count) return false;
            const auto& sib = td.nodes[p].children;
            if (std::count(sib.begin(), sib.end(), i) != 1) return false;
        }
    }
    std::vector<bool> seen(count, false);
    std::vector<int> stack{td.root};
    int reached = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (seen[x]) return false;
        seen[x] = true;
        ++reached;
        for (int c : td.nodes[x].children) stack.push_back(c);
    }
    if (reached != count) return false;

    std::vector<int> occurrences(n, 0), tops(n, 0);
    for (int i = 0; i < count; ++i) {
        const auto& bag = td.nodes[i].bag;
        if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            return false;
        for (Vertex v : bag) {
            if (v < 0 || v >= n) return false;
            ++occurrences[v];
            const int p = td.nodes[i].parent;
            if (p < 0 || !std::binary_search(td.nodes[p].bag.begin(), td.nodes[p].bag.end(), v)) ++tops[v];
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (occurrences[v] == 0 || tops[v] != 1) return false;

    // Edge coverage: each edge must appear in some bag.
    std::set<Edge> uncovered;
    for (const Edge& e : g.edges()) uncovered.insert(e);
    for (const auto& node : td.nodes) {
        if (uncovered.empty()) break;
        const auto& bag = node.bag;
        for (std::size_t a = 0; a < bag.size(); ++a)
            for (std::size_t b = a + 1; b < bag.size(); ++b) uncovered.erase({bag[a], bag[b]});
    }
    return uncovered.empty();
}

bool verify_nice(const SimpleGraph& g, const NiceTreeDecomposition& ntd) {
    if (ntd.nodes.empty() || !verify_decomposition(g, ntd.as_tree())) return false;
    if (!ntd.nodes[ntd.root].bag.empty()) return false;
    for (const auto& node : ntd.nodes) {
        const auto& ch = node.children;
        switch (node.kind) {
            case NodeKind::Leaf:
                if (!ch.empty() || !node.bag.empty()) return false;
                break;
            case NodeKind::Introduce: {
                if (ch.size() != 1) return false;
                auto expected = ntd.nodes[ch[0]].bag;
                if (std::binary_search(expected.begin(), expected.end(), node.vertex)) return false;
                expected.insert(std::lower_bound(expected.begin(), expected.end(), node.vertex), node.vertex);
                if (expected != node.bag) return false;
                break;
            }
            case NodeKind::Forget: {
                if (ch.size() != 1) return false;
                auto expected = ntd.nodes[ch[0]].bag;
                auto it = std::lower_bound(expected.begin(), expected.end(), node.vertex);
                if (it == expected.end() || *it != node.vertex) return false;
                expected.erase(it);
                if (expected != node.bag) return false;
                break;
            }
            case NodeKind::Join:
                if (ch.size() != 2 || ntd.nodes[ch[0]].bag != node.bag || ntd.nodes[ch[1]].bag != node.bag)
                    return false;
                break;
        }
    }
    return true;
}

bool verify_path_decomposition(const SimpleGraph& g, std::span<const std::vector<Vertex>> bags) {
    TreeDecomposition td;
    for (std::size_t i = 0; i < bags.size(); ++i) {
        TreeDecomposition::Node node;
        node.bag = bags[i];
        node.parent = i == 0 ? -1 : static_cast<int>(i) - 1;
        if (i + 1 < bags.size()) node.children.push_back(static_cast<int>(i) + 1);
        td.nodes.push_back(std::move(node));
    }
    td.root = bags.empty() ? -1 : 0;
    return verify_decomposition(g, td);
}

// ---------------------------------------------------------------------------
// Treewidth

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

int fill_in(const std::vector<Mask>& adj, int v) {
    int missing = 0;
    for (Mask rest = adj[v]; rest; rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        missing += std::popcount(adj[v] & ~adj[u] & ~bit(u));
    }
    return missing / 2;
}

void eliminate(std::vector<Mask>& adj, int v) {
    const Mask nb = adj[v];
    for (Mask rest = nb; rest; rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        adj[u] = (adj[u] | nb) & ~bit(u) & ~bit(v);
    }
    adj[v] = 0;
}

// Minor-min-width lower bound.
int minor_min_width(std::vector<Mask> adj, Mask alive) {
    int lb = 0;
    while (alive) {
        int v = -1, best = 1 << 30;
        for (Mask rest = alive; rest; rest &= rest - 1) {
            const int u = std::countr_zero(rest);
            const int d = std::popcount(adj[u]);
            if (d < best) best = d, v = u;
        }
        if (best == 0) {
            alive &= ~bit(v);
            continue;
        }
        lb = std::max(lb, best);
        int w = -1, wd = 1 << 30;
        for (Mask rest = adj[v]; rest; rest &= rest - 1) {
            const int u = std::countr_zero(rest);
            const int d = std::popcount(adj[u]);
            if (d < wd) wd = d, w = u;
        }
        for (Mask rest = adj[v]; rest; rest &= rest - 1) {
            const int u = std::countr_zero(rest);
            adj[u] &= ~bit(v);
            if (u != w) {
                adj[u] |= bit(w);
                adj[w] |= bit(u);
            }
        }
        adj[v] = 0;
        alive &= ~bit(v);
    }
    return lb;
}

bool is_clique(const std::vector<Mask>& adj, Mask set) {
    for (Mask rest = set; rest; rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        if (((adj[u] | bit(u)) & set) != set) return false;
    }
    return true;
}

struct Searcher {
    int best = 0;  // search looks for orderings of width < best
    std::vector<int> best_order;
    std::vector<int> order;
    std::uint64_t budget = 0;
    std::uint64_t explored = 0;
    bool aborted = false;
    std::unordered_map<Mask, int> memo;

    void record(Mask remaining, int width) {
        best = width;
        best_order = order;
        for (Mask rest = remaining; rest; rest &= rest - 1) best_order.push_back(std::countr_zero(rest));
    }

    void search(const std::vector<Mask>& adj, Mask remaining, int width) {
        if (aborted) return;
        if (++explored > budget) {
            aborted = true;
            return;
        }
        const int r = std::popcount(remaining);
        if (r - 1 <= width) {
            if (width < best) record(remaining, width);
            return;
        }
        const int lb = std::max(width, minor_min_width(adj, remaining));
        if (lb >= best) return;
        auto [it, inserted] = memo.try_emplace(remaining, width);
        if (!inserted) {
            if (it->second <= width) return;
            it->second = width;
        }

        // Simplicial and almost simplicial vertices of small degree can be
        // eliminated first without losing optimality.
        for (Mask rest = remaining; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const Mask nb = adj[v];
            const int d = std::popcount(nb);
            bool safe = is_clique(adj, nb);
            if (!safe && d <= lb) {
                for (Mask r2 = nb; r2 && !safe; r2 &= r2 - 1)
                    safe = is_clique(adj, nb & ~bit(std::countr_zero(r2)));
            }
            if (!safe) continue;
            auto next = adj;
            eliminate(next, v);
            order.push_back(v);
            search(next, remaining & ~bit(v), std::max(width, d));
            order.pop_back();
            return;
        }

        std::vector<std::tuple<int, int, int>> candidates;
        for (Mask rest = remaining; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            candidates.emplace_back(fill_in(adj, v), std::popcount(adj[v]), v);
        }
        std::sort(candidates.begin(), candidates.end());
        for (auto [fill, d, v] : candidates) {
            if (std::max(width, d) >= best) continue;
            auto next = adj;
            eliminate(next, v);
            order.push_back(v);
            search(next, remaining & ~bit(v), std::max(width, d));
            order.pop_back();
            if (aborted) return;
        }
    }
};

// Min-fill greedy ordering on adjacency sets; returns (order, width).
std::pair<std::vector<Vertex>, int> greedy_min_fill(const SimpleGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::set<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) adj[v] = {g.neighbors(v).begin(), g.neighbors(v).end()};
    std::vector<bool> gone(n, false);
    std::vector<Vertex> order;
    int width = -1;
    for (int step = 0; step < n; ++step) {
        Vertex pick = -1;
        long best_fill = -1;
        std::size_t best_deg = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (gone[v]) continue;
            long fill = 0;
            for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
                for (auto b = std::next(a); b != adj[v].end(); ++b)
                    if (!adj[*a].count(*b)) ++fill;
            if (pick < 0 || fill < best_fill || (fill == best_fill && adj[v].size() < best_deg)) {
                pick = v;
                best_fill = fill;
                best_deg = adj[v].size();
            }
        }
        width = std::max(width, static_cast<int>(adj[pick].size()));
        for (Vertex a : adj[pick]) {
            adj[a].erase(pick);
            for (Vertex b : adj[pick])
                if (a != b) adj[a].insert(b);
        }
        adj[pick].clear();
        gone[pick] = true;
        order.push_back(pick);
    }
    return {order, width};
}

int mask_lower_bound(const SimpleGraph& g) {
    if (g.vertex_count() > 64) return 0;
    std::vector<Mask> adj(g.vertex_count(), 0);
    for (auto [u, v] : g.edges()) adj[u] |= bit(v), adj[v] |= bit(u);
    Mask all = g.vertex_count() == 64 ? ~Mask{0} : bit(g.vertex_count()) - 1;
    return minor_min_width(adj, all);
}

}  // namespace

TreeDecomposition decomposition_from_ordering(const SimpleGraph& g, std::span<const Vertex> order) {
    const int n = g.vertex_count();
    std::vector<int> position(n, -1);
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
    std::vector<std::set<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) adj[v] = {g.neighbors(v).begin(), g.neighbors(v).end()};

    TreeDecomposition td;
    if (n == 0) {
        td.nodes.push_back({});
        td.root = 0;
        return td;
    }
    td.nodes.resize(n);
    std::vector<Vertex> later_first(n, -1);
    for (Vertex v : order) {
        std::vector<Vertex> later;
        for (Vertex w : adj[v])
            if (position[w] > position[v]) later.push_back(w);
        for (Vertex a : later) {
            adj[a].erase(v);
            for (Vertex b : later)
                if (a != b) adj[a].insert(b);
        }
        auto& node = td.nodes[position[v]];
        node.bag = later;
        node.bag.push_back(v);
        std::sort(node.bag.begin(), node.bag.end());
        Vertex next = -1;
        for (Vertex w : later)
            if (next < 0 || position[w] < position[next]) next = w;
        later_first[v] = next;
    }
    // Node i is the bag of order[i]; its parent is the earliest later neighbour.
    int previous_root = -1;
    for (int i = 0; i < n; ++i) {
        const Vertex v = order[i];
        if (later_first[v] >= 0) {
            td.nodes[i].parent = position[later_first[v]];
        } else if (previous_root >= 0) {
            td.nodes[previous_root].parent = i;
        }
        if (later_first[v] < 0) previous_root = i;
    }
    td.root = previous_root;

    // Contract tree edges whose bags are nested, keeping the larger bag.
    std::vector<bool> alive(n, true);
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            const int p = td.nodes[i].parent;
            if (!alive[i] || p < 0) continue;
            auto& bi = td.nodes[i].bag;
            auto& bp = td.nodes[p].bag;
            const bool down = std::includes(bp.begin(), bp.end(), bi.begin(), bi.end());
            if (!down && !std::includes(bi.begin(), bi.end(), bp.begin(), bp.end())) continue;
            if (!down) bp = bi;
            for (auto& node : td.nodes)
                if (node.parent == i) node.parent = p;
            alive[i] = false;
            changed = true;
        }
    }
    std::vector<int> renumber(n, -1);
    TreeDecomposition out;
    for (int i = 0; i < n; ++i)
        if (alive[i]) {
            renumber[i] = static_cast<int>(out.nodes.size());
            out.nodes.push_back({td.nodes[i].bag, td.nodes[i].parent, {}});
        }
    for (auto& node : out.nodes)
        if (node.parent >= 0) node.parent = renumber[node.parent];
    out.root = renumber[td.root];
    for (int i = 0; i < static_cast<int>(out.nodes.size()); ++i)
        if (out.nodes[i].parent >= 0) out.nodes[out.nodes[i].parent].children.push_back(i);
    return out;
}

TreewidthResult exact_treewidth(const SimpleGraph& g, int cap, std::uint64_t node_budget) {
    if (cap < 0) throw ParameterError("treewidth cap must be nonnegative");
    const int n = g.vertex_count();
    TreewidthResult result;
    auto [greedy_order, greedy_width] = greedy_min_fill(g);
    result.upper_bound = greedy_width;
    result.lower_bound = mask_lower_bound(g);
    std::vector<Vertex> order = greedy_order;
    int width = greedy_width;

    if (n <= 64 && result.lower_bound < greedy_width) {
        Searcher s;
        s.budget = node_budget;
        s.best = greedy_width <= cap ? greedy_width : (cap == kUnboundedWidth ? cap : cap + 1);
        std::vector<Mask> adj(n, 0);
        for (auto [u, v] : g.edges()) adj[u] |= bit(v), adj[v] |= bit(u);
        const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
        s.search(adj, all, -1);
        result.explored = s.explored;
        if (!s.best_order.empty()) {
            order = s.best_order;
            width = s.best;
        }
        result.upper_bound = std::min(result.upper_bound, width);
        if (!s.aborted) {
            result.exact = true;
            // Exhaustive: either an ordering within the cap was found, or none exists.
            if (width > cap) {
                result.status = TreewidthStatus::WidthExceeded;
                result.lower_bound = cap + 1;
                return result;
            }
            result.lower_bound = width;
        }
    } else {
        result.exact = result.lower_bound >= greedy_width || n <= 1;
        if (result.exact) result.lower_bound = greedy_width;
    }

    if (width <= cap) {
        result.status = TreewidthStatus::Ok;
        result.decomposition = decomposition_from_ordering(g, order);
        result.exact = result.exact || result.lower_bound >= width;
    } else if (result.lower_bound > cap) {
        result.status = TreewidthStatus::WidthExceeded;
    } else {
        result.status = TreewidthStatus::BudgetExhausted;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Nice decompositions

namespace {

struct NiceBuilder {
    NiceTreeDecomposition out;

    int add(NodeKind kind, std::vector<Vertex> bag, std::vector<int> children, Vertex v) {
        out.nodes.push_back({kind, std::move(bag), std::move(children), v});
        return static_cast<int>(out.nodes.size()) - 1;
    }

    // Extends the chain ending at `from` until its bag equals `target`.
    int morph(int from, const std::vector<Vertex>& target) {
        int cur = from;
        auto bag = out.nodes[cur].bag;
        std::vector<Vertex> drop, gain;
        std::set_difference(bag.begin(), bag.end(), target.begin(), target.end(), std::back_inserter(drop));
        std::set_difference(target.begin(), target.end(), bag.begin(), bag.end(), std::back_inserter(gain));
        for (Vertex v : drop) {
            bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
            cur = add(NodeKind::Forget, bag, {cur}, v);
        }
        for (Vertex v : gain) {
            bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
            cur = add(NodeKind::Introduce, bag, {cur}, v);
        }
        return cur;
    }

    int build(const TreeDecomposition& td, int x) {
        const auto& node = td.nodes[x];
        std::vector<int> parts;
        for (int c : node.children) parts.push_back(morph(build(td, c), node.bag));
        if (parts.empty()) parts.push_back(morph(add(NodeKind::Leaf, {}, {}, -1), node.bag));
        int cur = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) cur = add(NodeKind::Join, node.bag, {cur, parts[i]}, -1);
        return cur;
    }
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
    NiceBuilder b;
    if (td.nodes.empty()) {
        b.out.root = b.add(NodeKind::Leaf, {}, {}, -1);
        return std::move(b.out);
    }
    b.out.root = b.morph(b.build(td, td.root), {});
    return std::move(b.out);
}

// ---------------------------------------------------------------------------
// Cell-level decompositions

std::size_t CellNCTD::max_cells_per_bag() const {
    std::size_t best = 0;
    for (const auto& node : cell_tree.nodes) best = std::max(best, node.bag.size());
    return best;
}

namespace {

std::vector<Vertex> lift_bag(const CliqueGridInstance& inst, const std::vector<Vertex>& cell_bag) {
    std::vector<Vertex> out;
    for (Vertex c : cell_bag) {
        auto m = inst.members(static_cast<std::size_t>(c));
        out.insert(out.end(), m.begin(), m.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CellNCTDResult build_cell_nctd(const CliqueGridInstance& inst, int cap, std::uint64_t node_budget) {
    CellGraph cg = cell_graph(inst);
    TreewidthResult tw = exact_treewidth(cg.graph, cap, node_budget);
    CellNCTDResult result;
    result.status = tw.status;
    if (tw.status != TreewidthStatus::Ok) return result;
    result.nctd.cell_tree = make_nice(tw.decomposition);
    result.nctd.cells = cg.cells;
    for (const auto& node : result.nctd.cell_tree.nodes) result.nctd.bags.push_back(lift_bag(inst, node.bag));
    return result;
}

bool verify_cell_nctd(const CliqueGridInstance& inst, const CellNCTD& nctd) {
    if (nctd.cells != inst.cells()) return false;
    if (!verify_nice(cell_graph(inst).graph, nctd.cell_tree)) return false;
    if (nctd.bags.size() != nctd.cell_tree.nodes.size()) return false;
    for (std::size_t i = 0; i < nctd.bags.size(); ++i)
        if (nctd.bags[i] != lift_bag(inst, nctd.cell_tree.nodes[i].bag)) return false;
    TreeDecomposition lifted = nctd.cell_tree.as_tree();
    for (std::size_t i = 0; i < lifted.nodes.size(); ++i) lifted.nodes[i].bag = nctd.bags[i];
    return verify_decomposition(inst.graph(), lifted);
}

NiceTreeDecomposition expand_to_vertices(const CliqueGridInstance& /*inst*/, const CellNCTD& nctd) {
    NiceBuilder b;
    const auto& tree = nctd.cell_tree;
    std::vector<int> image(tree.nodes.size(), -1);
    for (int x : tree.postorder()) {
        const auto& node = tree.nodes[x];
        switch (node.kind) {
            case NodeKind::Leaf:
                image[x] = b.add(NodeKind::Leaf, {}, {}, -1);
                break;
            case NodeKind::Introduce:
            case NodeKind::Forget:
                image[x] = b.morph(image[node.children[0]], nctd.bags[x]);
                break;
            case NodeKind::Join:
                image[x] = b.add(NodeKind::Join, nctd.bags[x], {image[node.children[0]], image[node.children[1]]}, -1);
                break;
        }
    }
    b.out.root = image[tree.root];
    return std::move(b.out);
}

// ---------------------------------------------------------------------------
// Baker path decompositions

int ceil_sqrt(int k) {
    if (k <= 0) return 0;
    int r = 0;
    while (r * r < k) ++r;
    return r;
}

int column_label(int col, int label_count) { return ((col + 1) / 2) % label_count; }

std::vector<std::vector<Vertex>> BakerNCPD::vertex_bags() const {
    std::vector<std::vector<Vertex>> out;
    for (const auto& bag : bags) {
        std::vector<Vertex> vs = y;
        for (int u : bag) vs.insert(vs.end(), units[u].vertices.begin(), units[u].vertices.end());
        std::sort(vs.begin(), vs.end());
        out.push_back(std::move(vs));
    }
    return out;
}

namespace {

std::vector<Vertex> sorted_copy(std::span<const Vertex> s) {
    std::vector<Vertex> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<Vertex> label_vertices(const CliqueGridInstance& inst, int label, int label_count) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < inst.vertex_count(); ++v)
        if (column_label(inst.cell_of(v).col, label_count) == label) out.push_back(v);
    return out;
}

}  // namespace

BakerNCPD build_baker_ncpd(const CliqueGridInstance& inst, std::span<const Vertex> deleted,
                           std::span<const Vertex> kept, int k) {
    if (k < 1) throw ConstructionError("Baker decomposition needs k >= 1");
    const int L = ceil_sqrt(k);
    const auto s = sorted_copy(deleted);
    const auto y = sorted_copy(kept);
    if (static_cast<int>(y.size()) > L) throw ConstructionError("kept set larger than ceil(sqrt(k))");
    std::vector<Vertex> both;
    std::set_union(s.begin(), s.end(), y.begin(), y.end(), std::back_inserter(both));
    if (both.size() != s.size() + y.size()) throw ConstructionError("deleted and kept sets overlap");

    BakerNCPD out;
    out.label_count = L;
    out.label = -1;
    for (int label = 0; label < L; ++label)
        if (label_vertices(inst, label, L) == both) {
            out.label = label;
            break;
        }
    if (out.label < 0) throw ConstructionError("deleted and kept sets do not form the columns of one label");
    out.y = y;

    std::map<Cell, std::vector<Vertex>> y_by_cell;
    for (Vertex v : y) y_by_cell[inst.cell_of(v)].push_back(v);
    for (auto& [cell, vs] : y_by_cell) {
        out.y_units.push_back(static_cast<int>(out.units.size()));
        out.units.push_back({cell, vs, true});
    }

    // Full units: every nonempty cell outside the label's columns.
    std::map<Cell, int> unit_of_cell;
    for (std::size_t c = 0; c < inst.cells().size(); ++c) {
        const Cell cell = inst.cells()[c];
        if (column_label(cell.col, L) == out.label) continue;
        auto m = inst.members(c);
        unit_of_cell[cell] = static_cast<int>(out.units.size());
        out.units.push_back({cell, {m.begin(), m.end()}, false});
    }

    // Windows are maximal runs of unlabelled columns; bags are row triples.
    const int cols = inst.rep().cols;
    for (int c0 = 1; c0 <= cols;) {
        if (column_label(c0, L) == out.label) {
            ++c0;
            continue;
        }
        int c1 = c0;
        while (c1 + 1 <= cols && column_label(c1 + 1, L) != out.label) ++c1;
        int rmin = 1 << 30, rmax = -1;
        for (const auto& [cell, id] : unit_of_cell)
            if (cell.col >= c0 && cell.col <= c1) rmin = std::min(rmin, cell.row), rmax = std::max(rmax, cell.row);
        for (int r = rmin; rmax >= 0 && r <= std::max(rmin, rmax - 2); ++r) {
            std::vector<int> bag;
            for (const auto& [cell, id] : unit_of_cell)
                if (cell.col >= c0 && cell.col <= c1 && cell.row >= r && cell.row <= r + 2) bag.push_back(id);
            std::sort(bag.begin(), bag.end());
            if (!bag.empty() && (out.bags.empty() || out.bags.back() != bag)) out.bags.push_back(std::move(bag));
        }
        c0 = c1 + 1;
    }
    if (out.bags.empty()) out.bags.push_back({});

    for (int u : out.y_units) out.steps.push_back({BakerNCPD::StepKind::Introduce, u});
    std::vector<int> current;
    for (const auto& bag : out.bags) {
        for (int u : current)
            if (!std::binary_search(bag.begin(), bag.end(), u)) out.steps.push_back({BakerNCPD::StepKind::Forget, u});
        for (int u : bag)
            if (!std::binary_search(current.begin(), current.end(), u))
                out.steps.push_back({BakerNCPD::StepKind::Introduce, u});
        current = bag;
    }
    for (int u : current) out.steps.push_back({BakerNCPD::StepKind::Forget, u});
    for (int u : out.y_units) out.steps.push_back({BakerNCPD::StepKind::Forget, u});
    return out;
}

bool verify_baker_ncpd(const CliqueGridInstance& inst, std::span<const Vertex> deleted, const BakerNCPD& ncpd,
                       int k) {
    const int n = inst.vertex_count();
    const int L = ceil_sqrt(k);
    std::vector<bool> gone(n, false);
    for (Vertex v : deleted) {
        if (v < 0 || v >= n) return false;
        gone[v] = true;
    }
    std::vector<Vertex> keep, position(n, -1);
    for (Vertex v = 0; v < n; ++v)
        if (!gone[v]) position[v] = static_cast<int>(keep.size()), keep.push_back(v);
    const SimpleGraph h = induced_subgraph(inst.graph(), keep);
    auto rename = [&](std::vector<Vertex> bag, bool& ok) {
        for (Vertex& v : bag) {
            if (v < 0 || v >= n || position[v] < 0) ok = false;
            else v = position[v];
        }
        std::sort(bag.begin(), bag.end());
        return bag;
    };

    if (static_cast<int>(ncpd.y.size()) > L) return false;
    std::vector<Vertex> y_from_units;
    for (std::size_t u = 0; u < ncpd.units.size(); ++u) {
        const auto& unit = ncpd.units[u];
        if (unit.vertices.empty()) return false;
        for (Vertex v : unit.vertices)
            if (v < 0 || v >= n || gone[v] || inst.cell_of(v) != unit.cell) return false;
        if (unit.from_y) {
            y_from_units.insert(y_from_units.end(), unit.vertices.begin(), unit.vertices.end());
        } else {
            auto c = inst.find_cell(unit.cell);
            if (!c) return false;
            auto m = inst.members(*c);
            if (!std::equal(m.begin(), m.end(), unit.vertices.begin(), unit.vertices.end())) return false;
        }
    }
    std::sort(y_from_units.begin(), y_from_units.end());
    if (y_from_units != ncpd.y) return false;

    bool ok = true;
    std::vector<std::vector<Vertex>> coarse;
    for (const auto& bag : ncpd.bags) {
        if (static_cast<int>(bag.size()) > 6 * L) return false;
        for (int u : bag)
            if (u < 0 || u >= static_cast<int>(ncpd.units.size()) || ncpd.units[u].from_y) return false;
    }
    for (auto& bag : ncpd.vertex_bags()) coarse.push_back(rename(bag, ok));
    if (!ok || !verify_path_decomposition(h, coarse)) return false;

    std::vector<bool> present(ncpd.units.size(), false);
    std::vector<Vertex> cur;
    std::vector<std::vector<Vertex>> fine;
    for (const auto& step : ncpd.steps) {
        if (step.unit < 0 || step.unit >= static_cast<int>(ncpd.units.size())) return false;
        const bool introduce = step.kind == BakerNCPD::StepKind::Introduce;
        if (present[step.unit] == introduce) return false;
        present[step.unit] = introduce;
        const auto& vs = ncpd.units[step.unit].vertices;
        if (introduce) {
            cur.insert(cur.end(), vs.begin(), vs.end());
        } else {
            for (Vertex v : vs) cur.erase(std::find(cur.begin(), cur.end(), v));
        }
        fine.push_back(rename(cur, ok));
    }
    if (!ok || !cur.empty()) return false;
    return verify_path_decomposition(h, fine);
}

BakerNCPD remap(const BakerNCPD& ncpd, std::span<const Vertex> map) {
    BakerNCPD out = ncpd;
    auto apply = [&](std::vector<Vertex>& vs) {
        for (Vertex& v : vs) {
            if (v < 0 || v >= static_cast<int>(map.size()) || map[v] < 0)
                throw StructureError("vertex missing from remap table");
            v = map[v];
        }
        std::sort(vs.begin(), vs.end());
    };
    apply(out.y);
    for (auto& unit : out.units) apply(unit.vertices);
    return out;
}

// ---------------------------------------------------------------------------
// PACE .td

void write_td(std::ostream& out, const TreeDecomposition& td, int vertex_count) {
    std::vector<int> bfs, id(td.nodes.size(), -1);
    if (td.root >= 0) {
        std::queue<int> q;
        q.push(td.root);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            id[x] = static_cast<int>(bfs.size());
            bfs.push_back(x);
            for (int c : td.nodes[x].children) q.push(c);
        }
    }
    out << "s td " << bfs.size() << ' ' << td.width() + 1 << ' ' << vertex_count << '\n';
    for (int x : bfs) {
        out << "b " << id[x] + 1;
        for (Vertex v : td.nodes[x].bag) out << ' ' << v + 1;
        out << '\n';
    }
    for (int x : bfs)
        if (td.nodes[x].parent >= 0) out << id[td.nodes[x].parent] + 1 << ' ' << id[x] + 1 << '\n';
}

TreeDecomposition read_td(std::istream& in, int* vertex_count) {
    std::string line;
    bool header = false;
    int bag_count = 0;
    TreeDecomposition td;
    std::vector<std::vector<int>> adj;
    std::vector<bool> seen_bag;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c') continue;
        std::istringstream ss(line);
        if (!header) {
            std::string s, tag;
            int width1 = 0, n = 0;
            if (!(ss >> s >> tag >> bag_count >> width1 >> n) || s != "s" || tag != "td" || bag_count < 0)
                throw InputError("malformed .td header");
            if (vertex_count) *vertex_count = n;
            td.nodes.resize(bag_count);
            adj.resize(bag_count);
            seen_bag.assign(bag_count, false);
            header = true;
            continue;
        }
        if (line[first] == 'b') {
            std::string b;
            int id = 0;
            ss >> b >> id;
            if (id < 1 || id > bag_count || seen_bag[id - 1]) throw InputError("bad bag id in .td");
            seen_bag[id - 1] = true;
            int v = 0;
            while (ss >> v) td.nodes[id - 1].bag.push_back(v - 1);
            std::sort(td.nodes[id - 1].bag.begin(), td.nodes[id - 1].bag.end());
            continue;
        }
        int a = 0, b = 0;
        if (!(ss >> a >> b) || a < 1 || b < 1 || a > bag_count || b > bag_count)
            throw InputError("malformed .td edge line");
        adj[a - 1].push_back(b - 1);
        adj[b - 1].push_back(a - 1);
    }
    if (!header) throw InputError("missing .td header");
    if (bag_count == 0) return td;
    td.root = 0;
    std::vector<bool> visited(bag_count, false);
    std::queue<int> q;
    q.push(0);
    visited[0] = true;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : adj[x]) {
            if (visited[y]) continue;
            visited[y] = true;
            td.nodes[y].parent = x;
            td.nodes[x].children.push_back(y);
            q.push(y);
        }
    }
    if (std::find(visited.begin(), visited.end(), false) != visited.end())
        throw InputError(".td tree is disconnected");
    return td;
}

}  // namespace udg
