#include "loosetile/factor.hpp"

#include <algorithm>
#include <chrono>

namespace loosetile {

namespace {

class Deadline {
public:
    explicit Deadline(std::int64_t ms) {
        if (ms > 0) {
            active_ = true;
            end_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
        }
    }

    bool expired() {
        if (!active_) return false;
        if (++tick_ % 256 != 0) return false;
        return std::chrono::steady_clock::now() >= end_;
    }

private:
    bool active_ = false;
    std::uint64_t tick_ = 0;
    std::chrono::steady_clock::time_point end_;
};

Bitset to_bitset_checked(int n, const std::vector<Vertex>& vs) {
    Bitset b(n);
    for (Vertex v : vs) {
        if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
        if (b.test(v)) throw std::invalid_argument("repeated vertex in set");
        b.set(v);
    }
    return b;
}

// Active vertices ordered by edge count inside the active set (ascending,
// ties by index). Branching on the most constrained vertex first and
// scanning its partners edge-poor-first keeps scarce hub vertices for the
// blocks that need them. Returns false if some vertex lies in no edge.
bool branch_order(const Hypergraph3& h, const Bitset& active, std::vector<Vertex>& order,
                  Vertex* dead = nullptr) {
    order.clear();
    std::vector<std::pair<long long, Vertex>> keyed;
    for (int v = active.next(); v != -1; v = active.next(v + 1)) {
        long long twice = 0;
        for (int a = active.next(); a != -1; a = active.next(a + 1)) {
            if (a == v) continue;
            twice += h.link(v, a).intersect_count(active);
        }
        if (twice == 0) {
            if (dead) *dead = v;
            return false;
        }
        keyed.push_back({twice, v});
    }
    std::sort(keyed.begin(), keyed.end());
    for (const auto& [k, v] : keyed) order.push_back(v);
    return true;
}

// Enumerates spanning 6-sets {order[0]} + 5-subset of order[1..], subsets in
// lex order over the given sequence. f returns false to abort the scan.
template <class F>
bool for_each_block_ordered(const Hypergraph3& h, const std::vector<Vertex>& order, F&& f) {
    int m = static_cast<int>(order.size()) - 1;
    if (m < 5) return true;
    const Vertex* partners = order.data() + 1;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                for (int d = c + 1; d < m; ++d)
                    for (int e = d + 1; e < m; ++e) {
                        std::array<Vertex, 6> six{order[0], partners[a], partners[b],
                                                  partners[c], partners[d], partners[e]};
                        std::sort(six.begin(), six.end());
                        if (auto cp = spanning_copy(h, six)) {
                            if (!f(six, *cp)) return false;
                        }
                    }
    return true;
}

struct FactorSearch {
    const Hypergraph3& h;
    Deadline deadline;
    std::uint64_t nodes = 0;
    bool budget_hit = false;

    bool solve(Bitset& uncovered, std::vector<CycleCopy>& acc) {
        if (uncovered.none()) return true;
        if (deadline.expired()) {
            budget_hit = true;
            return false;
        }
        ++nodes;
        std::vector<Vertex> order;
        if (!branch_order(h, uncovered, order)) return false;
        bool found = false;
        for_each_block_ordered(h, order, [&](const std::array<Vertex, 6>& six, const CycleCopy& cp) {
            for (Vertex x : six) uncovered.reset(x);
            acc.push_back(cp);
            if (solve(uncovered, acc)) {
                found = true;
                return false;
            }
            acc.pop_back();
            for (Vertex x : six) uncovered.set(x);
            return !budget_hit;
        });
        return found;
    }
};

FactorResult run_factor(const Hypergraph3& h, Bitset allowed, std::int64_t budget_ms) {
    FactorResult res;
    if (allowed.count() % 6 != 0) {
        res.status = SearchStatus::None;
        res.exhaustive = true;
        res.reason = "divisibility";
        return res;
    }
    FactorSearch s{h, Deadline(budget_ms)};
    std::vector<CycleCopy> acc;
    bool ok = s.solve(allowed, acc);
    res.nodes = s.nodes;
    if (ok) {
        res.status = SearchStatus::Found;
        res.tiling = Tiling::from_copies(std::move(acc));
    } else if (s.budget_hit) {
        res.status = SearchStatus::Budget;
    } else {
        res.status = SearchStatus::None;
        res.exhaustive = true;
    }
    return res;
}

}  // namespace

Tiling Tiling::from_copies(std::vector<CycleCopy> copies) {
    Tiling t;
    t.copies = std::move(copies);
    for (const auto& c : t.copies)
        for (Vertex v : c.vertex_array()) t.covered.push_back(v);
    std::sort(t.covered.begin(), t.covered.end());
    if (std::adjacent_find(t.covered.begin(), t.covered.end()) != t.covered.end())
        throw std::invalid_argument("tiling copies overlap");
    return t;
}

std::vector<Vertex> Matching3::covered() const {
    std::vector<Vertex> v;
    for (const auto& e : edges)
        for (Vertex x : e) v.push_back(x);
    std::sort(v.begin(), v.end());
    return v;
}

FactorResult find_factor(const Hypergraph3& h, std::int64_t budget_ms) {
    return run_factor(h, Bitset::all(h.vertex_count()), budget_ms);
}

FactorResult find_factor_within(const Hypergraph3& h, const std::vector<Vertex>& allowed,
                                std::int64_t budget_ms) {
    return run_factor(h, to_bitset_checked(h.vertex_count(), allowed), budget_ms);
}

namespace {

struct MaxTilingSearch {
    const Hypergraph3& h;
    Deadline deadline;
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    int target = -1;  // stop as soon as this many copies are found (t-disjoint mode)
    std::vector<CycleCopy> best{};
    bool found_target = false;

    void rec(Bitset& active, std::vector<CycleCopy>& acc) {
        if (found_target || budget_hit) return;
        if (target >= 0 && static_cast<int>(acc.size()) == target) {
            best = acc;
            found_target = true;
            return;
        }
        int probe = active.next();
        if (probe == -1) {
            if (target < 0 && acc.size() > best.size()) best = acc;
            return;
        }
        if (deadline.expired()) {
            budget_hit = true;
            return;
        }
        ++nodes;
        int ceiling = static_cast<int>(acc.size()) + active.count() / 6;
        if (target >= 0 ? ceiling < target : ceiling <= static_cast<int>(best.size())) return;

        std::vector<Vertex> order;
        Vertex dead = -1;
        if (!branch_order(h, active, order, &dead)) {
            active.reset(dead);  // edge-free vertex can never be covered
            rec(active, acc);
            active.set(dead);
            return;
        }
        Vertex v = order[0];
        for_each_block_ordered(h, order, [&](const std::array<Vertex, 6>& six, const CycleCopy& cp) {
            for (Vertex x : six) active.reset(x);
            acc.push_back(cp);
            rec(active, acc);
            acc.pop_back();
            for (Vertex x : six) active.set(x);
            return !(found_target || budget_hit);
        });
        if (found_target || budget_hit) return;
        active.reset(v);  // leave the branch vertex uncovered
        rec(active, acc);
        active.set(v);
    }
};

}  // namespace

MaxTilingResult max_tiling(const Hypergraph3& h, std::int64_t budget_ms) {
    MaxTilingSearch s{h, Deadline(budget_ms)};
    Bitset active = Bitset::all(h.vertex_count());
    std::vector<CycleCopy> acc;
    s.rec(active, acc);
    MaxTilingResult res;
    res.tiling = Tiling::from_copies(std::move(s.best));
    res.optimal = !s.budget_hit;
    res.nodes = s.nodes;
    return res;
}

FactorResult find_t_disjoint(const Hypergraph3& h, int t, std::int64_t budget_ms) {
    if (t < 0 || 6ll * t > h.vertex_count())
        throw std::invalid_argument("find_t_disjoint needs 0 <= 6t <= n");
    MaxTilingSearch s{h, Deadline(budget_ms)};
    s.target = t;
    Bitset active = Bitset::all(h.vertex_count());
    std::vector<CycleCopy> acc;
    s.rec(active, acc);
    FactorResult res;
    res.nodes = s.nodes;
    if (s.found_target) {
        res.status = SearchStatus::Found;
        res.tiling = Tiling::from_copies(std::move(s.best));
    } else if (s.budget_hit) {
        res.status = SearchStatus::Budget;
    } else {
        res.status = SearchStatus::None;
        res.exhaustive = true;
    }
    return res;
}

VerifyResult verify_tiling(const Hypergraph3& h, const Tiling& t, bool require_perfect) {
    const auto& all = h.edges();
    auto has = [&](const Triple& e) { return std::binary_search(all.begin(), all.end(), e); };

    std::vector<char> seen(h.vertex_count(), 0);
    for (std::size_t k = 0; k < t.copies.size(); ++k) {
        const CycleCopy& c = t.copies[k];
        auto vs = c.vertex_array();
        for (Vertex v : vs)
            if (v < 0 || v >= h.vertex_count())
                return {false, "copy " + std::to_string(k) + ": vertex out of range"};
        auto sorted = vs;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return {false, "copy " + std::to_string(k) + ": vertices not distinct"};
        for (const auto& e : c.edge_triples())
            if (!has(e))
                return {false, "copy " + std::to_string(k) + ": missing edge " + std::to_string(e[0]) +
                                   " " + std::to_string(e[1]) + " " + std::to_string(e[2])};
        for (Vertex v : vs) {
            if (seen[v]) return {false, "disjointness at " + std::to_string(v)};
            seen[v] = 1;
        }
    }

    std::vector<Vertex> cov;
    for (Vertex v = 0; v < h.vertex_count(); ++v)
        if (seen[v]) cov.push_back(v);
    if (cov != t.covered) return {false, "covered set mismatch"};

    if (require_perfect && static_cast<int>(cov.size()) != h.vertex_count())
        return {false, "not perfect: " + std::to_string(h.vertex_count() - cov.size()) + " vertices uncovered"};
    return {true, ""};
}

namespace {

Matching3 greedy_matching(const Hypergraph3& h, const Bitset& allowed) {
    Matching3 m;
    Bitset free = allowed;
    for (const auto& e : h.edges()) {
        if (free.test(e[0]) && free.test(e[1]) && free.test(e[2])) {
            m.edges.push_back(e);
            free.reset(e[0]);
            free.reset(e[1]);
            free.reset(e[2]);
        }
    }
    return m;
}

struct MatchingSearch {
    const Hypergraph3& h;
    Deadline deadline;
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    std::vector<Triple> best{};

    void rec(Bitset& active, std::vector<Triple>& acc) {
        if (budget_hit) return;
        int v = active.next();
        if (v == -1) {
            if (acc.size() > best.size()) best = acc;
            return;
        }
        if (deadline.expired()) {
            budget_hit = true;
            return;
        }
        ++nodes;
        if (acc.size() + active.count() / 3 <= best.size()) return;

        for (int a = active.next(v + 1); a != -1; a = active.next(a + 1)) {
            Bitset third = h.link(v, a);
            third &= active;
            for (int b = third.next(a + 1); b != -1; b = third.next(b + 1)) {
                Triple e{v, a, b};
                active.reset(v);
                active.reset(a);
                active.reset(b);
                acc.push_back(e);
                rec(active, acc);
                acc.pop_back();
                active.set(v);
                active.set(a);
                active.set(b);
                if (budget_hit) return;
            }
        }
        active.reset(v);
        rec(active, acc);
        active.set(v);
    }
};

MatchingResult run_matching(const Hypergraph3& h, Bitset allowed, MatchingMode mode,
                            std::int64_t budget_ms) {
    MatchingResult res;
    if (mode == MatchingMode::Greedy) {
        res.matching = greedy_matching(h, allowed);
        res.optimal = false;
        return res;
    }
    MatchingSearch s{h, Deadline(budget_ms)};
    s.best = greedy_matching(h, allowed).edges;  // warm start
    std::vector<Triple> acc;
    s.rec(allowed, acc);
    res.matching.edges = std::move(s.best);
    std::sort(res.matching.edges.begin(), res.matching.edges.end());
    res.optimal = !s.budget_hit;
    res.nodes = s.nodes;
    return res;
}

}  // namespace

MatchingResult max_matching3(const Hypergraph3& h, MatchingMode mode, std::int64_t budget_ms) {
    return run_matching(h, Bitset::all(h.vertex_count()), mode, budget_ms);
}

MatchingResult max_matching3_within(const Hypergraph3& h, const std::vector<Vertex>& allowed,
                                    MatchingMode mode, std::int64_t budget_ms) {
    return run_matching(h, to_bitset_checked(h.vertex_count(), allowed), mode, budget_ms);
}

}  // namespace loosetile
