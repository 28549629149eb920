#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "udg/cycles.hpp"
#include "udg/errors.hpp"

namespace udg {

// ---------------------------------------------------------------------------
// Clique path profiles

bool clique_profile_feasible(std::size_t cell_size, std::span<const EndpointSet> family, int r) {
    int pairs = 0;
    std::size_t covered = 0;
    for (const auto& s : family) {
        pairs += s.first != s.second;
        covered += s.first != s.second ? 2 : 1;
    }
    if (covered > cell_size || r < 0) return false;
    const int free = static_cast<int>(cell_size - covered);
    return pairs == r || (pairs >= 1 && pairs < r && pairs + free >= r);
}

namespace {

void extend_families(std::span<const Vertex> cell, std::size_t at, std::size_t budget, std::vector<bool>& used,
                     std::vector<EndpointSet>& cur, std::size_t covered,
                     std::vector<std::vector<EndpointSet>>& out) {
    if (at == cell.size()) {
        out.push_back(cur);
        return;
    }
    // cell[at] is either unused, a single-vertex set, or paired with a later vertex.
    if (used[at]) {
        extend_families(cell, at + 1, budget, used, cur, covered, out);
        return;
    }
    extend_families(cell, at + 1, budget, used, cur, covered, out);
    if (covered + 1 <= budget) {
        cur.emplace_back(cell[at], cell[at]);
        extend_families(cell, at + 1, budget, used, cur, covered + 1, out);
        cur.pop_back();
    }
    if (covered + 2 <= budget)
        for (std::size_t b = at + 1; b < cell.size(); ++b) {
            if (used[b]) continue;
            used[b] = true;
            cur.emplace_back(std::min(cell[at], cell[b]), std::max(cell[at], cell[b]));
            extend_families(cell, at + 1, budget, used, cur, covered + 2, out);
            cur.pop_back();
            used[b] = false;
        }
}

std::vector<std::vector<EndpointSet>> all_families(std::span<const Vertex> cell, std::size_t budget) {
    std::vector<Vertex> sorted(cell.begin(), cell.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<bool> used(sorted.size(), false);
    std::vector<EndpointSet> cur;
    std::vector<std::vector<EndpointSet>> out;
    extend_families(sorted, 0, budget, used, cur, 0, out);
    for (auto& f : out) std::sort(f.begin(), f.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<CliquePathProfile> enumerate_clique_profiles(std::span<const Vertex> cell, int r,
                                                         std::size_t endpoint_budget) {
    std::vector<CliquePathProfile> out;
    for (auto& family : all_families(cell, endpoint_budget))
        if (clique_profile_feasible(cell.size(), family, r)) out.push_back({std::move(family), r, true});
    return out;
}

DpLimits DpLimits::faithful(int k) {
    DpLimits l;
    l.endpoint_cap = static_cast<std::size_t>(kEndpointFactor) * static_cast<std::size_t>(ceil_sqrt(k));
    l.connector_cap = kMaxConnectors;
    return l;
}

// ---------------------------------------------------------------------------
// Endpoint-profile DP

namespace {

struct Goal {
    bool path = false;
    int lo = 0;
    int hi = 0;  // cycles: length in [lo, hi]; paths: exactly hi vertices
};

// In path mode an end whose vertex was forgotten is sealed and stored as
// kSealed; the finished path has at most two sealed ends.
constexpr Vertex kSealed = -1;

struct PState {
    std::vector<EndpointSet> sets;  // sorted
    int edges = 0;
    int connectors = 0;
    bool operator==(const PState&) const = default;
};

struct PStateHash {
    std::size_t operator()(const PState& s) const {
        std::size_t h = static_cast<std::size_t>(s.edges) * 0x9E3779B97F4A7C15ULL ^ static_cast<std::size_t>(s.connectors);
        for (const auto& [a, b] : s.sets) {
            h ^= static_cast<std::size_t>(a) * 0x100000001B3ULL + static_cast<std::size_t>(b) + (h << 6) + (h >> 2);
        }
        return h;
    }
};

std::size_t endpoint_union(const PState& s) {
    std::size_t n = 0;
    for (const auto& [a, b] : s.sets) n += a == b ? 1 : (a >= 0) + (b >= 0);
    return n;
}

int vertices_used(const PState& s) { return s.edges + static_cast<int>(s.sets.size()); }

struct Entry {
    int parent = -1;
    Vertex z1 = -1;
    Vertex z2 = -1;
    bool used = false;
};

struct Layer {
    Vertex vertex = -1;  // -1 for forget layers
    std::vector<Entry> entries;
};

class Table {
public:
    std::vector<PState> states;
    std::vector<Entry> entries;

    bool insert(PState s, Entry e) {
        auto [it, fresh] = index_.try_emplace(s, static_cast<int>(states.size()));
        if (!fresh) return false;
        states.push_back(std::move(s));
        entries.push_back(e);
        return true;
    }
    std::size_t size() const { return states.size(); }

private:
    std::unordered_map<PState, int, PStateHash> index_;
};

void normalize(PState& s) { std::sort(s.sets.begin(), s.sets.end()); }

int find_set(const PState& s, Vertex z) {
    for (std::size_t i = 0; i < s.sets.size(); ++i)
        if (s.sets[i].first == z || s.sets[i].second == z) return static_cast<int>(i);
    return -1;
}

Vertex other_end(const EndpointSet& set, Vertex z) { return set.first == z ? set.second : set.first; }

EndpointSet make_set(Vertex a, Vertex b) { return {std::min(a, b), std::max(a, b)}; }

bool in_unit(const std::vector<Vertex>& unit, Vertex x) {
    return x >= 0 && std::binary_search(unit.begin(), unit.end(), x);
}

// Drops the forgotten unit from a state: false if the state cannot survive.
bool forget_unit(PState& s, const std::vector<Vertex>& unit, bool path) {
    int sealed = 0;
    for (auto& set : s.sets) {
        auto [a, b] = set;
        const bool a_in = in_unit(unit, a), b_in = in_unit(unit, b);
        if ((a_in || b_in) && !path) return false;
        if (a_in) a = kSealed;
        if (b_in) b = kSealed;
        if (set.first == set.second && a_in) a = b = kSealed;
        if (a == kSealed && b == kSealed) return false;
        set = make_set(a, b);
        sealed += (a == kSealed) + (b == kSealed);
    }
    if (sealed > 2) return false;
    normalize(s);
    return true;
}

class SweepDp {
public:
    SweepDp(const CliqueGridInstance& h, const BakerNCPD& ncpd, Goal goal, const DpOptions& opts)
        : h_(h), ncpd_(ncpd), goal_(goal), opts_(opts) {}

    DpResult run() {
        prepare_positions();
        Table table;
        table.insert(PState{}, Entry{});
        for (const auto& step : ncpd_.steps) {
            const auto& unit = ncpd_.units[step.unit];
            if (step.kind == BakerNCPD::StepKind::Introduce) {
                if (opts_.limits.connector_cap) table = reset_connectors(std::move(table));
                for (Vertex v : unit.vertices) in_unit_[v] = true;
                for (Vertex v : unit.vertices) {
                    table = introduce(std::move(table), v);
                    if (result_.found) return finish();
                }
                for (Vertex v : unit.vertices) in_unit_[v] = false;
            } else {
                table = forget(std::move(table), unit.vertices);
            }
        }
        return finish();
    }

private:
    void prepare_positions() {
        const int n = h_.vertex_count();
        pos_.assign(n, -1);
        in_unit_.assign(n, false);
        int next = 0;
        for (const auto& step : ncpd_.steps)
            if (step.kind == BakerNCPD::StepKind::Introduce)
                for (Vertex v : ncpd_.units[step.unit].vertices) pos_[v] = next++;
        last1_.assign(n, -1);
        last2_.assign(n, -1);
        for (Vertex v = 0; v < n; ++v)
            for (Vertex w : h_.graph().neighbors(v)) {
                const int p = pos_[w];
                if (p > last1_[v]) last2_[v] = last1_[v], last1_[v] = p;
                else if (p > last2_[v]) last2_[v] = p;
            }
    }

    // An endpoint can only gain edges from vertices introduced after `now`.
    bool alive(const PState& s, int now) const {
        int finished = 0;
        for (const auto& [a, b] : s.sets) {
            if (goal_.path) {
                const bool da = a < 0 || last1_[a] <= now, db = b < 0 || last1_[b] <= now;
                if (da && db) return false;
                finished += da + db;
                if (finished > 2) return false;
            } else if (a == b) {
                if (last2_[a] <= now) return false;
            } else if (last1_[a] <= now || last1_[b] <= now) {
                return false;
            }
        }
        return true;
    }

    bool within_limits(const PState& s) const {
        if (vertices_used(s) > goal_.hi) return false;
        if (opts_.limits.endpoint_cap && endpoint_union(s) > *opts_.limits.endpoint_cap) return false;
        if (opts_.limits.connector_cap && static_cast<std::size_t>(s.connectors) > *opts_.limits.connector_cap)
            return false;
        return true;
    }

    void push_layer(Vertex v, const Table& table) {
        result_.states += table.size();
        result_.peak_table = std::max(result_.peak_table, table.size());
        for (const auto& s : table.states)
            result_.max_endpoint_union = std::max(result_.max_endpoint_union, endpoint_union(s));
        if (opts_.witness) layers_.push_back({v, table.entries});
    }

    Table reset_connectors(Table table) {
        Table next;
        for (std::size_t i = 0; i < table.size(); ++i) {
            PState s = table.states[i];
            s.connectors = 0;
            next.insert(std::move(s), Entry{static_cast<int>(i)});
        }
        push_layer(-1, next);
        return next;
    }

    Table forget(Table table, const std::vector<Vertex>& unit) {
        Table next;
        for (std::size_t i = 0; i < table.size(); ++i) {
            PState s = table.states[i];
            if (forget_unit(s, unit, goal_.path)) next.insert(std::move(s), Entry{static_cast<int>(i)});
        }
        push_layer(-1, next);
        return next;
    }

    Table introduce(Table table, Vertex v) {
        Table next;
        current_ = v;
        const int now = pos_[v];
        std::vector<Vertex> eligible;
        for (std::size_t i = 0; i < table.size() && !result_.found; ++i) {
            const PState& s = table.states[i];
            const int parent = static_cast<int>(i);
            if (alive(s, now)) next.insert(s, Entry{parent});

            eligible.clear();
            for (const auto& [a, b] : s.sets) {
                if (a >= 0 && h_.graph().has_edge(v, a)) eligible.push_back(a);
                if (b != a && h_.graph().has_edge(v, b)) eligible.push_back(b);
            }
            PState lone = s;
            lone.sets.push_back({v, v});
            normalize(lone);
            offer(next, std::move(lone), now, Entry{parent, -1, -1, true});
            for (std::size_t x = 0; x < eligible.size() && !result_.found; ++x) {
                const Vertex z = eligible[x];
                PState t = s;
                const int idx = find_set(t, z);
                t.sets[idx] = make_set(other_end(t.sets[idx], z), v);
                t.edges += 1;
                t.connectors += in_unit_[z] ? 0 : 1;
                normalize(t);
                offer(next, std::move(t), now, Entry{parent, z, -1, true});
            }
            for (std::size_t x = 0; x < eligible.size() && !result_.found; ++x)
                for (std::size_t y = x + 1; y < eligible.size() && !result_.found; ++y)
                    join_two(next, s, parent, eligible[x], eligible[y], now);
        }
        if (!result_.found) push_layer(v, next);
        return next;
    }

    void join_two(Table& next, const PState& s, int parent, Vertex z1, Vertex z2, int now) {
        const int i1 = find_set(s, z1), i2 = find_set(s, z2);
        const int added = (in_unit_[z1] ? 0 : 1) + (in_unit_[z2] ? 0 : 1);
        if (i1 == i2) {
            // z1 and z2 end the same path; the new vertex closes it.
            if (goal_.path || s.sets.size() != 1) return;
            const int length = s.edges + 2;
            if (length < goal_.lo || length > goal_.hi) return;
            if (opts_.limits.connector_cap &&
                static_cast<std::size_t>(s.connectors + added) > *opts_.limits.connector_cap)
                return;
            result_.found = true;
            closing_ = Entry{parent, z1, z2, true};
            return;
        }
        PState t = s;
        const EndpointSet merged = make_set(other_end(s.sets[i1], z1), other_end(s.sets[i2], z2));
        t.sets.erase(t.sets.begin() + std::max(i1, i2));
        t.sets.erase(t.sets.begin() + std::min(i1, i2));
        t.sets.push_back(merged);
        t.edges += 2;
        t.connectors += added;
        normalize(t);
        offer(next, std::move(t), now, Entry{parent, z1, z2, true});
    }

    void offer(Table& next, PState t, int now, Entry e) {
        if (!within_limits(t)) return;
        if (goal_.path && t.sets.size() == 1 && vertices_used(t) == goal_.hi) {
            result_.found = true;
            closing_ = e;
            return;
        }
        if (!alive(t, now)) return;
        next.insert(std::move(t), e);
    }

    DpResult finish() {
        if (result_.found && opts_.witness) result_.witness = reconstruct();
        return result_;
    }

    std::vector<Vertex> reconstruct() const {
        std::vector<Edge> edges;
        auto add = [&](Vertex a, const Entry& e) {
            if (e.z1 >= 0) edges.emplace_back(a, e.z1);
            if (e.z2 >= 0) edges.emplace_back(a, e.z2);
        };
        add(current_, closing_);
        int idx = closing_.parent;
        for (std::size_t li = layers_.size(); li-- > 0;) {
            const Entry& e = layers_[li].entries[idx];
            if (layers_[li].vertex >= 0 && e.used) add(layers_[li].vertex, e);
            idx = e.parent;
        }
        if (goal_.path && edges.empty()) return {current_};
        return goal_.path ? path_from_edges(edges) : cycle_from_edges(edges);
    }

    const CliqueGridInstance& h_;
    const BakerNCPD& ncpd_;
    Goal goal_;
    DpOptions opts_;
    std::vector<int> pos_, last1_, last2_;
    std::vector<bool> in_unit_;
    std::vector<Layer> layers_;
    DpResult result_;
    Entry closing_;
    Vertex current_ = -1;
};

// Literal transcription: per introduced unit, every old profile is combined
// with every feasible clique profile of the unit and every connecting edge
// set between the two. No witness, no liveness pruning.
class ProfileDp {
public:
    ProfileDp(const CliqueGridInstance& h, const BakerNCPD& ncpd, Goal goal, const DpOptions& opts)
        : h_(h), ncpd_(ncpd), goal_(goal), opts_(opts) {}

    DpResult run() {
        std::vector<PState> table{PState{}};
        for (const auto& step : ncpd_.steps) {
            const auto& unit = ncpd_.units[step.unit].vertices;
            if (step.kind == BakerNCPD::StepKind::Forget) {
                std::vector<PState> next;
                std::unordered_map<PState, int, PStateHash> seen;
                for (auto& s : table)
                    if (forget_unit(s, unit, goal_.path) && seen.try_emplace(s, 0).second) next.push_back(std::move(s));
                table = std::move(next);
            } else {
                table = introduce(table, unit);
                if (result_.found) return result_;
            }
            result_.states += table.size();
            result_.peak_table = std::max(result_.peak_table, table.size());
        }
        return result_;
    }

private:
    std::vector<PState> introduce(const std::vector<PState>& table, const std::vector<Vertex>& unit) {
        std::vector<CliquePathProfile> profiles;
        const std::size_t budget = std::min<std::size_t>(kProfileEndpointBudget, unit.size());
        for (int r = 0; r <= static_cast<int>(unit.size()) - 1; ++r)
            for (auto& p : enumerate_clique_profiles(unit, r, budget)) profiles.push_back(std::move(p));
        std::unordered_map<PState, int, PStateHash> seen;
        std::vector<PState> next;
        for (const PState& old : table) {
            for (const auto& prof : profiles) {
                const int base_vertices = vertices_used(old) + prof.edges + static_cast<int>(prof.family.size());
                if (base_vertices > goal_.hi) continue;
                combine(old, prof, seen, next);
                if (result_.found) return next;
            }
        }
        return next;
    }

    void combine(const PState& old, const CliquePathProfile& prof, std::unordered_map<PState, int, PStateHash>& seen,
                 std::vector<PState>& next) {
        // Candidate connecting edges join a profile vertex to an old endpoint.
        std::vector<Vertex> old_ends, new_ends;
        for (const auto& [a, b] : old.sets) {
            if (a >= 0) old_ends.push_back(a);
            if (b != a) old_ends.push_back(b);
        }
        for (const auto& [a, b] : prof.family) {
            new_ends.push_back(a);
            if (b != a) new_ends.push_back(b);
        }
        std::vector<Edge> candidates;
        for (Vertex w : new_ends)
            for (Vertex z : old_ends)
                if (h_.graph().has_edge(w, z)) candidates.emplace_back(w, z);
        std::unordered_map<Vertex, int> degree;
        for (const auto& [a, b] : old.sets)
            if (a != b) ++degree[a], ++degree[b];
        for (const auto& [a, b] : prof.family)
            if (a != b) ++degree[a], ++degree[b];
        std::vector<Edge> chosen;
        choose(old, prof, candidates, 0, degree, chosen, seen, next);
    }

    void choose(const PState& old, const CliquePathProfile& prof, const std::vector<Edge>& candidates, std::size_t at,
                std::unordered_map<Vertex, int>& degree, std::vector<Edge>& chosen,
                std::unordered_map<PState, int, PStateHash>& seen, std::vector<PState>& next) {
        if (result_.found) return;
        if (at == candidates.size()) {
            evaluate(old, prof, chosen, seen, next);
            return;
        }
        choose(old, prof, candidates, at + 1, degree, chosen, seen, next);
        const auto [w, z] = candidates[at];
        if (degree[w] >= 2 || degree[z] >= 2) return;
        if (opts_.limits.connector_cap && chosen.size() >= *opts_.limits.connector_cap) return;
        ++degree[w], ++degree[z];
        chosen.push_back(candidates[at]);
        choose(old, prof, candidates, at + 1, degree, chosen, seen, next);
        chosen.pop_back();
        --degree[w], --degree[z];
    }

    // The union of old virtual edges, profile virtual edges and the chosen
    // connecting edges must be a set of paths, or one cycle using everything.
    void evaluate(const PState& old, const CliquePathProfile& prof, const std::vector<Edge>& chosen,
                  std::unordered_map<PState, int, PStateHash>& seen, std::vector<PState>& next) {
        std::unordered_map<Vertex, std::vector<Vertex>> adj;
        auto touch = [&](Vertex a) { adj.try_emplace(a); };
        auto link = [&](Vertex a, Vertex b) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        };
        // Sealed ends become distinct phantom vertices below kSealed.
        for (std::size_t i = 0; i < old.sets.size(); ++i) {
            const auto [a, b] = old.sets[i];
            a == b ? touch(a) : link(a == kSealed ? kSealed - 1 - static_cast<Vertex>(i) : a, b);
        }
        for (const auto& [a, b] : prof.family) a == b ? touch(a) : link(a, b);
        for (const auto& [w, z] : chosen) link(w, z);
        const int edges = old.edges + prof.edges + static_cast<int>(chosen.size());

        std::unordered_map<Vertex, bool> visited;
        PState t;
        t.edges = edges;
        bool cycle = false;
        for (const auto& [start, nb] : adj) {
            if (visited[start]) continue;
            // Walk the component, counting vertices and edges.
            std::vector<Vertex> stack{start}, ends;
            visited[start] = true;
            std::size_t verts = 0, degree_sum = 0;
            while (!stack.empty()) {
                Vertex x = stack.back();
                stack.pop_back();
                ++verts;
                degree_sum += adj[x].size();
                if (adj[x].size() < 2) ends.push_back(x);
                for (Vertex y : adj[x])
                    if (!visited[y]) visited[y] = true, stack.push_back(y);
            }
            if (degree_sum / 2 >= verts) {
                cycle = true;
                continue;
            }
            for (Vertex& e : ends) e = std::max(e, kSealed);
            if (ends.size() == 1) t.sets.push_back({ends[0], ends[0]});
            else t.sets.push_back(make_set(ends[0], ends[1]));
        }
        if (cycle) {
            if (goal_.path || !t.sets.empty()) return;
            // Count cycle components: closing is valid only for a single one.
            std::size_t components = 0;
            std::unordered_map<Vertex, bool> v2;
            for (const auto& [start, nb] : adj) {
                if (v2[start]) continue;
                ++components;
                std::vector<Vertex> stack{start};
                v2[start] = true;
                while (!stack.empty()) {
                    Vertex x = stack.back();
                    stack.pop_back();
                    for (Vertex y : adj[x])
                        if (!v2[y]) v2[y] = true, stack.push_back(y);
                }
            }
            if (components == 1 && edges >= goal_.lo && edges <= goal_.hi) result_.found = true;
            return;
        }
        if (vertices_used(t) > goal_.hi) return;
        int sealed = 0;
        for (const auto& [a, b] : t.sets) sealed += (a == kSealed) + (b == kSealed);
        const bool complete = std::any_of(t.sets.begin(), t.sets.end(),
                                          [](const EndpointSet& e) { return e.second == kSealed; });
        if (sealed > 2 || (complete && !(t.sets.size() == 1 && vertices_used(t) == goal_.hi))) return;
        if (opts_.limits.endpoint_cap && endpoint_union(t) > *opts_.limits.endpoint_cap) return;
        normalize(t);
        result_.max_endpoint_union = std::max(result_.max_endpoint_union, endpoint_union(t));
        if (goal_.path && t.sets.size() == 1 && vertices_used(t) == goal_.hi) {
            result_.found = true;
            return;
        }
        if (seen.try_emplace(t, 0).second) next.push_back(std::move(t));
    }

    const CliqueGridInstance& h_;
    const BakerNCPD& ncpd_;
    Goal goal_;
    DpOptions opts_;
    DpResult result_;
};

DpResult run_dp(const CliqueGridInstance& h, const BakerNCPD& ncpd, Goal goal, const DpOptions& opts) {
    if (opts.validate && !verify_baker_ncpd(h, {}, ncpd, std::max(goal.hi, 1)))
        throw StructureError("decomposition is not a valid Baker path decomposition of the instance");
    if (goal.hi < 1 || goal.lo > goal.hi) return {};
    if (opts.engine == DpEngine::ProfileEnumeration) return ProfileDp(h, ncpd, goal, opts).run();
    return SweepDp(h, ncpd, goal, opts).run();
}

}  // namespace

DpResult dp_exact_cycle(const CliqueGridInstance& h, const BakerNCPD& ncpd, int k, const DpOptions& opts) {
    return run_dp(h, ncpd, Goal{false, k, k}, opts);
}

DpResult dp_cycle_range(const CliqueGridInstance& h, const BakerNCPD& ncpd, int lo, int hi, const DpOptions& opts) {
    return run_dp(h, ncpd, Goal{false, std::max(lo, 3), hi}, opts);
}

DpResult dp_path(const CliqueGridInstance& h, const BakerNCPD& ncpd, int k, const DpOptions& opts) {
    return run_dp(h, ncpd, Goal{true, k, k}, opts);
}

}  // namespace udg
