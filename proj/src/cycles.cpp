#include "loosetile/cycles.hpp"

#include <algorithm>

namespace loosetile {

std::array<Triple, 3> CycleCopy::edge_triples() const {
    auto mk = [](Vertex a, Vertex b, Vertex c) {
        Triple t{a, b, c};
        std::sort(t.begin(), t.end());
        return t;
    };
    return {mk(links[0], inners[0], links[1]), mk(links[1], inners[1], links[2]),
            mk(links[2], inners[2], links[0])};
}

std::array<Vertex, 6> CycleCopy::vertex_array() const {
    return {links[0], links[1], links[2], inners[0], inners[1], inners[2]};
}

std::vector<Vertex> CycleCopy::vertices() const {
    auto a = vertex_array();
    std::vector<Vertex> v(a.begin(), a.end());
    std::sort(v.begin(), v.end());
    return v;
}

CycleCopy canonical(const CycleCopy& c) {
    // Try all 3 rotations and both directions; keep the lexicographically
    // smallest (links, inners) tuple. That representative has links sorted.
    CycleCopy best = c;
    bool first = true;
    for (int rot = 0; rot < 3; ++rot) {
        CycleCopy r;
        for (int i = 0; i < 3; ++i) {
            r.links[i] = c.links[(rot + i) % 3];
            r.inners[i] = c.inners[(rot + i) % 3];
        }
        // reflection fixing r.links[0]
        CycleCopy m{{r.links[0], r.links[2], r.links[1]}, {r.inners[2], r.inners[1], r.inners[0]}};
        for (const CycleCopy& cand : {r, m}) {
            if (first || cand.links < best.links ||
                (cand.links == best.links && cand.inners < best.inners)) {
                best = cand;
                first = false;
            }
        }
    }
    return best;
}

bool is_cycle_copy(const Hypergraph3& h, const CycleCopy& c) {
    auto vs = c.vertex_array();
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;
    if (vs.front() < 0 || vs.back() >= h.vertex_count()) return false;
    for (const auto& e : c.edge_triples())
        if (!h.has_edge(e[0], e[1], e[2])) return false;
    return true;
}

std::array<Triple, 8> K332Copy::edge_triples() const {
    std::array<Triple, 8> out;
    int k = 0;
    for (Vertex a : parts[0])
        for (Vertex b : parts[1])
            for (Vertex c : parts[2]) {
                Triple t{a, b, c};
                std::sort(t.begin(), t.end());
                out[k++] = t;
            }
    return out;
}

std::vector<Vertex> K332Copy::vertices() const {
    std::vector<Vertex> v;
    for (const auto& p : parts)
        for (Vertex x : p) v.push_back(x);
    std::sort(v.begin(), v.end());
    return v;
}

bool is_k332_copy(const Hypergraph3& h, const K332Copy& c) {
    auto vs = c.vertices();
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;
    if (vs.front() < 0 || vs.back() >= h.vertex_count()) return false;
    for (const auto& e : c.edge_triples())
        if (!h.has_edge(e[0], e[1], e[2])) return false;
    return true;
}

namespace {

bool copy_scan(const Hypergraph3& h, const Bitset* allowed,
               const std::function<bool(const CycleCopy&)>& visit) {
    int n = h.vertex_count();
    auto in = [&](Vertex v) { return !allowed || allowed->test(v); };
    for (Vertex l1 = 0; l1 < n; ++l1) {
        if (!in(l1)) continue;
        for (Vertex l2 = l1 + 1; l2 < n; ++l2) {
            if (!in(l2)) continue;
            Bitset n12 = h.link(l1, l2);
            if (allowed) n12 &= *allowed;
            if (n12.none()) continue;
            for (Vertex l3 = l2 + 1; l3 < n; ++l3) {
                if (!in(l3)) continue;
                Bitset n23 = h.link(l2, l3);
                Bitset n31 = h.link(l3, l1);
                if (allowed) {
                    n23 &= *allowed;
                    n31 &= *allowed;
                }
                for (int i12 = n12.next(); i12 != -1; i12 = n12.next(i12 + 1)) {
                    if (i12 == l3) continue;
                    for (int i23 = n23.next(); i23 != -1; i23 = n23.next(i23 + 1)) {
                        if (i23 == l1 || i23 == i12) continue;
                        for (int i31 = n31.next(); i31 != -1; i31 = n31.next(i31 + 1)) {
                            if (i31 == l2 || i31 == i12 || i31 == i23) continue;
                            CycleCopy c{{l1, l2, l3}, {i12, i23, i31}};
                            if (!visit(c)) return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace

bool for_each_copy(const Hypergraph3& h, const std::function<bool(const CycleCopy&)>& visit) {
    return copy_scan(h, nullptr, visit);
}

bool for_each_copy_within(const Hypergraph3& h, const Bitset& allowed,
                          const std::function<bool(const CycleCopy&)>& visit) {
    return copy_scan(h, &allowed, visit);
}

EnumerationResult enumerate_copies(const Hypergraph3& h, std::uint64_t cap, const CopyFilter* filter) {
    if (cap < 1) throw std::invalid_argument("enumerate_copies needs cap >= 1");
    EnumerationResult res;
    bool full = for_each_copy(h, [&](const CycleCopy& c) {
        if (filter) {
            auto va = c.vertex_array();
            if (filter->partition->index_vector(std::span<const Vertex>(va.data(), va.size())) != filter->vec)
                return true;
        }
        res.copies.push_back(c);
        return res.copies.size() < cap;
    });
    res.exhaustive = full;
    return res;
}

namespace {

template <class F>
bool visit_spanning(const Hypergraph3& h, const std::array<Vertex, 6>& six, F&& f) {
    // choose 3 of the 6 as links (ascending), assign the rest as inners
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) {
                Vertex l1 = six[a], l2 = six[b], l3 = six[c];
                Vertex rest[3];
                int k = 0;
                for (int i = 0; i < 6; ++i)
                    if (i != a && i != b && i != c) rest[k++] = six[i];
                static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
                for (const auto& pm : perms) {
                    CycleCopy cand{{l1, l2, l3}, {rest[pm[0]], rest[pm[1]], rest[pm[2]]}};
                    if (h.link(l1, l2).test(cand.inners[0]) && h.link(l2, l3).test(cand.inners[1]) &&
                        h.link(l3, l1).test(cand.inners[2])) {
                        if (!f(cand)) return false;
                    }
                }
            }
    return true;
}

}  // namespace

std::optional<CycleCopy> spanning_copy(const Hypergraph3& h, const std::array<Vertex, 6>& six) {
    std::optional<CycleCopy> out;
    visit_spanning(h, six, [&](const CycleCopy& c) {
        out = c;
        return false;
    });
    return out;
}

void for_each_spanning_copy(const Hypergraph3& h, const std::array<Vertex, 6>& six,
                            const std::function<void(const CycleCopy&)>& visit) {
    visit_spanning(h, six, [&](const CycleCopy& c) {
        visit(c);
        return true;
    });
}

K332Result find_k332(const Hypergraph3& h, std::uint64_t budget) {
    if (budget < 1) throw std::invalid_argument("find_k332 needs budget >= 1");
    int n = h.vertex_count();
    K332Result res;

    std::vector<std::pair<Vertex, Vertex>> pairs;
    pairs.reserve(static_cast<std::size_t>(binom2(n)));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
        return h.pair_degree(p.first, p.second) > h.pair_degree(q.first, q.second);
    });

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [a1, a2] = pairs[i];
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            auto [b1, b2] = pairs[j];
            if (b1 == a1 || b1 == a2 || b2 == a1 || b2 == a2) continue;
            if (res.examined >= budget) return res;  // not found within budget
            ++res.examined;
            Bitset s = h.link(a1, b1);
            s &= h.link(a1, b2);
            s &= h.link(a2, b1);
            s &= h.link(a2, b2);
            s.reset(a1);
            s.reset(a2);
            s.reset(b1);
            s.reset(b2);
            int c1 = s.next();
            if (c1 == -1) continue;
            int c2 = s.next(c1 + 1);
            if (c2 == -1) continue;
            res.copy = K332Copy{{{{a1, a2}, {b1, b2}, {static_cast<Vertex>(c1), static_cast<Vertex>(c2)}}}};
            return res;
        }
    }
    res.exhaustive = true;
    return res;
}

}  // namespace loosetile
