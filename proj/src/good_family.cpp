#include <algorithm>
#include <limits>

#include "udg/cycles.hpp"
#include "udg/errors.hpp"

namespace udg {

namespace {

void subsets_of_size(const std::vector<Vertex>& pool, std::size_t size, std::size_t at, std::vector<Vertex>& cur,
                     const std::function<void(const std::vector<Vertex>&)>& emit) {
    if (cur.size() == size) {
        emit(cur);
        return;
    }
    for (std::size_t i = at; i + (size - cur.size()) <= pool.size(); ++i) {
        cur.push_back(pool[i]);
        subsets_of_size(pool, size, i + 1, cur, emit);
        cur.pop_back();
    }
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        c = c * (n - r + i) / i;
        if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(c);
}

}  // namespace

GoodFamily::GoodFamily(const CliqueGridInstance& source, int k, FamilyMode mode)
    : source_(&source), k_(k), label_count_(ceil_sqrt(std::max(k, 1))) {
    if (k < 1) throw ParameterError("good family needs k >= 1");
    if (source.max_cell_size() >= k) throw ConfigurationError("a cell holds at least k vertices");
    const int L = label_count_;
    std::vector<std::vector<Vertex>> by_label(L);
    for (Vertex v = 0; v < source.vertex_count(); ++v)
        by_label[column_label(source.cell_of(v).col, L)].push_back(v);
    population_.resize(L);
    for (int label = 0; label < L; ++label) {
        const auto& pool = by_label[label];
        population_[label] = pool.size();
        const std::size_t top = std::min<std::size_t>(L, pool.size());
        const std::size_t from = mode == FamilyMode::Full ? 0 : top;
        std::vector<std::vector<Vertex>> kept;
        std::vector<Vertex> cur;
        for (std::size_t size = from; size <= top; ++size)
            subsets_of_size(pool, size, 0, cur, [&](const std::vector<Vertex>& y) { kept.push_back(y); });
        std::sort(kept.begin(), kept.end());
        for (auto& y : kept) {
            FamilyMember m;
            m.label = label;
            std::set_difference(pool.begin(), pool.end(), y.begin(), y.end(), std::back_inserter(m.deleted));
            m.kept = std::move(y);
            members_.push_back(std::move(m));
        }
    }
}

FamilyInstance GoodFamily::materialize(std::size_t i) const {
    const FamilyMember& m = members_.at(i);
    const int n = source_->vertex_count();
    std::vector<bool> gone(n, false);
    for (Vertex v : m.deleted) gone[v] = true;
    std::vector<Vertex> keep, map(n, -1);
    for (Vertex v = 0; v < n; ++v)
        if (!gone[v]) map[v] = static_cast<int>(keep.size()), keep.push_back(v);
    FamilyInstance out{m, source_->induced(keep), keep, {}};
    out.ncpd = remap(build_baker_ncpd(*source_, m.deleted, m.kept, k_), map);
    return out;
}

std::uint64_t good_family_size_bound(const GoodFamily& family) {
    const std::uint64_t L = static_cast<std::uint64_t>(family.label_count());
    std::uint64_t total = 0;
    for (std::size_t m : family.label_population()) {
        std::uint64_t per = 0;
        for (std::uint64_t i = 0; i <= L; ++i) per = saturating_add(per, binomial(m, i));
        total = saturating_add(total, per > std::numeric_limits<std::uint64_t>::max() / L
                                          ? std::numeric_limits<std::uint64_t>::max()
                                          : per * L);
    }
    return total;
}

}  // namespace udg
