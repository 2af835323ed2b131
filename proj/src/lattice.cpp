#include "loosetile/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "loosetile/rng.hpp"

namespace loosetile {

std::vector<IndexVector> RobustReport::robust_set() const {
    std::vector<IndexVector> out;
    for (const auto& [vec, cnt] : counts)
        if (cnt >= threshold) out.push_back(vec);
    return out;
}

namespace {

double binom6(int n) {
    if (n < 6) return 0.0;
    double r = 1.0;
    for (int k = 0; k < 6; ++k) r *= static_cast<double>(n - k) / (k + 1);
    return r;
}

}  // namespace

RobustReport robust_vectors(const Hypergraph3& h, const Partition& p, int arity,
                            long long threshold, const RobustBudget& budget) {
    if (arity != 3 && arity != 6) throw std::invalid_argument("arity must be 3 or 6");
    if (threshold < 1) throw std::invalid_argument("threshold must be >= 1");
    RobustReport rep;
    rep.arity = arity;
    rep.threshold = threshold;

    if (arity == 3) {
        for (const auto& e : h.edges())
            ++rep.counts[p.index_vector(std::span<const Vertex>(e.data(), e.size()))];
        rep.exhaustive = true;
        return rep;
    }

    std::uint64_t enumerated = 0;
    bool full = for_each_copy(h, [&](const CycleCopy& c) {
        auto va = c.vertex_array();
        ++rep.counts[p.index_vector(std::span<const Vertex>(va.data(), va.size()))];
        return ++enumerated < budget.max_copies;
    });
    if (full) {
        rep.exhaustive = true;
        return rep;
    }

    // Too many copies to enumerate: estimate per-vector counts from uniform
    // 6-set samples. Each sampled set contributes its spanning-copy census.
    rep.counts.clear();
    SamplingInfo info;
    info.samples = budget.samples;
    std::map<IndexVector, double> sum, sumsq;
    Rng rng(budget.seed);
    int n = h.vertex_count();
    for (std::uint64_t s = 0; s < budget.samples; ++s) {
        std::vector<int> pick = rng.sample(n, 6);
        std::array<Vertex, 6> six;
        std::copy(pick.begin(), pick.end(), six.begin());
        std::sort(six.begin(), six.end());
        std::map<IndexVector, int> local;
        for_each_spanning_copy(h, six, [&](const CycleCopy& c) {
            auto va = c.vertex_array();
            ++local[p.index_vector(std::span<const Vertex>(va.data(), va.size()))];
        });
        for (const auto& [vec, cnt] : local) {
            sum[vec] += cnt;
            sumsq[vec] += static_cast<double>(cnt) * cnt;
            ++info.hits[vec];
        }
    }
    double total_sets = binom6(n);
    double S = static_cast<double>(budget.samples);
    const double z = 1.959963985;  // 95%
    for (const auto& [vec, sm] : sum) {
        double mean = sm / S;
        rep.counts[vec] = static_cast<long long>(std::llround(mean * total_sets));
        double var = S > 1 ? (sumsq[vec] / S - mean * mean) * S / (S - 1) : 0.0;
        info.variance[vec] = var / S * total_sets * total_sets;
        double ph = static_cast<double>(info.hits[vec]) / S;
        double denom = 1.0 + z * z / S;
        double center = (ph + z * z / (2 * S)) / denom;
        double half = z * std::sqrt(ph * (1 - ph) / S + z * z / (4 * S * S)) / denom;
        info.wilson[vec] = {center - half, center + half};
    }
    rep.sampling = std::move(info);
    return rep;
}

std::optional<Transferral> find_transferral(const RobustReport& report) {
    if (report.arity != 6) throw std::invalid_argument("find_transferral needs an arity-6 report");
    auto robust = report.robust_set();
    std::set<IndexVector> in(robust.begin(), robust.end());
    for (const auto& v : robust) {
        int r = static_cast<int>(v.coords.size());
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (i == j || v.coords[j] < 1) continue;
                IndexVector w = v;
                ++w.coords[i];
                --w.coords[j];
                if (in.count(w)) return Transferral{v, i + 1, j + 1};
            }
    }
    return std::nullopt;
}

std::optional<int> vector_completion(const Hypergraph3& h, const Partition& p,
                                     const IndexVector& v2, long long threshold) {
    if (static_cast<int>(v2.coords.size()) != p.part_count() || v2.sum() != 2)
        throw std::invalid_argument("vector_completion needs a 2-vector over the partition");
    std::map<IndexVector, long long> counts;
    for (const auto& e : h.edges())
        ++counts[p.index_vector(std::span<const Vertex>(e.data(), e.size()))];
    for (int i = 0; i < p.part_count(); ++i) {
        IndexVector w = v2;
        ++w.coords[i];
        auto it = counts.find(w);
        if (it != counts.end() && it->second >= threshold) return i + 1;
    }
    return std::nullopt;
}

ReachableResult reachable_5sets(const Hypergraph3& h, Vertex x, Vertex y, std::uint64_t cap,
                                const Bitset* exclude, std::size_t witness_cap) {
    if (x == y) throw std::invalid_argument("reachable_5sets needs x != y");
    int n = h.vertex_count();
    if (x < 0 || x >= n || y < 0 || y >= n) throw std::invalid_argument("vertex out of range");

    ReachableResult res;
    if (cap == 0) {
        res.complete = false;
        return res;
    }
    Bitset banned(n);
    if (exclude) banned = *exclude;
    banned.set(x);
    banned.set(y);

    std::set<std::array<Vertex, 5>> seen;
    auto ok = [&](Vertex v) { return !banned.test(v); };

    for (Vertex a = 0; a < n; ++a) {
        if (!ok(a)) continue;
        Bitset common = h.link(x, a);
        common &= h.link(y, a);
        for (int b = common.next(a + 1); b != -1; b = common.next(b + 1)) {
            if (!ok(b)) continue;
            for (Vertex u = 0; u < n; ++u) {
                if (!ok(u) || u == a || u == b) continue;
                const Bitset& nau = h.link(a, u);
                const Bitset& nbu = h.link(b, u);
                for (int v = nau.next(); v != -1; v = nau.next(v + 1)) {
                    if (!ok(v) || v == a || v == b || v == u) continue;
                    for (int w = nbu.next(); w != -1; w = nbu.next(w + 1)) {
                        if (!ok(w) || w == a || w == b || w == u || w == v) continue;
                        std::array<Vertex, 5> s{a, b, u, v, w};
                        std::sort(s.begin(), s.end());
                        if (seen.count(s)) continue;
                        CycleCopy side_x{{a, u, b}, {v, w, x}};
                        CycleCopy side_y{{a, u, b}, {v, w, y}};
                        if (!is_cycle_copy(h, side_x) || !is_cycle_copy(h, side_y)) continue;
                        seen.insert(s);
                        ++res.count;
                        if (res.witnesses.size() < witness_cap) res.witnesses.push_back(s);
                        if (static_cast<std::uint64_t>(res.count) >= cap) return res;
                    }
                }
            }
        }
    }
    res.complete = true;
    return res;
}

ClosedPartitionResult closed_partition(const Hypergraph3& h, const ReachParams& params) {
    if (params.depth != 1) throw std::invalid_argument("only depth-1 reachability is implemented");
    if (params.threshold < 1) throw std::invalid_argument("threshold must be >= 1");
    int n = h.vertex_count();

    // capped pair counts; counting stops at the threshold
    std::vector<std::vector<long long>> cnt(n, std::vector<long long>(n, 0));
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };

    for (Vertex xv = 0; xv < n; ++xv)
        for (Vertex yv = xv + 1; yv < n; ++yv) {
            auto r = reachable_5sets(h, xv, yv, params.threshold, nullptr, 0);
            cnt[xv][yv] = cnt[yv][xv] = r.count;
            if (r.count >= params.threshold) parent[find(xv)] = find(yv);
        }

    std::map<int, std::vector<Vertex>> comps;
    for (Vertex v = 0; v < n; ++v) comps[find(v)].push_back(v);
    std::vector<std::vector<Vertex>> parts;
    for (auto& [root, vs] : comps) parts.push_back(std::move(vs));
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    ClosedPartitionResult out;
    out.degenerate = parts.size() > 3;
    while (parts.size() > 3) {
        // merge the two smallest, ties by least vertex
        auto smaller = [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
            return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
        };
        std::size_t i0 = 0;
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (smaller(parts[i], parts[i0])) i0 = i;
        std::size_t i1 = i0 == 0 ? 1 : 0;
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (i != i0 && smaller(parts[i], parts[i1])) i1 = i;
        parts[i1].insert(parts[i1].end(), parts[i0].begin(), parts[i0].end());
        std::sort(parts[i1].begin(), parts[i1].end());
        parts.erase(parts.begin() + i0);
        std::sort(parts.begin(), parts.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }

    out.partition = Partition(n, parts);
    for (const auto& part : out.partition.parts()) {
        long long mn = 0;
        bool first = true;
        for (std::size_t i = 0; i < part.size(); ++i)
            for (std::size_t j = i + 1; j < part.size(); ++j) {
                long long c = cnt[part[i]][part[j]];
                if (first || c < mn) {
                    mn = c;
                    first = false;
                }
            }
        out.min_witness.push_back(first ? 0 : mn);
    }
    return out;
}

namespace {

OddCopyResult odd_scan(const Hypergraph3& h, const Bitset& a_mask, const Bitset* allowed,
                       std::uint64_t budget) {
    OddCopyResult res;
    auto visit = [&](const CycleCopy& c) {
        if (res.examined >= budget) return false;
        ++res.examined;
        int inter = 0;
        for (Vertex v : c.vertex_array())
            if (a_mask.test(v)) ++inter;
        if (inter % 2 == 1) {
            res.copy = c;
            return false;
        }
        return true;
    };
    bool full = allowed ? for_each_copy_within(h, *allowed, visit) : for_each_copy(h, visit);
    res.exhaustive = full;  // absence is a proof only when the scan completed
    return res;
}

}  // namespace

OddCopyResult odd_intersection_copy(const Hypergraph3& h, const std::vector<Vertex>& a,
                                    std::uint64_t budget) {
    Bitset mask(h.vertex_count());
    for (Vertex v : a) {
        if (v < 0 || v >= h.vertex_count()) throw std::invalid_argument("vertex out of range");
        mask.set(v);
    }
    return odd_scan(h, mask, nullptr, budget);
}

OddCopyResult odd_intersection_copy_within(const Hypergraph3& h, const Bitset& a_mask,
                                           const Bitset& allowed, std::uint64_t budget) {
    return odd_scan(h, a_mask, &allowed, budget);
}

std::vector<std::pair<Vertex, Vertex>> good_pairs(const Hypergraph3& h, const Partition& p,
                                                  const IndexVector& vprime, int k,
                                                  long long gamma_abs) {
    if (static_cast<int>(vprime.coords.size()) != p.part_count() || vprime.sum() != 2)
        throw std::invalid_argument("good_pairs needs a 2-vector over the partition");
    if (k < 1 || k > p.part_count()) throw std::invalid_argument("part index out of range");
    int n = h.vertex_count();
    Bitset vk(n);
    for (Vertex v : p.part(k - 1)) vk.set(v);

    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            IndexVector iv;
            iv.coords.assign(p.part_count(), 0);
            ++iv.coords[p.part_of(u)];
            ++iv.coords[p.part_of(v)];
            if (iv != vprime) continue;
            Bitset ext = h.link(u, v);
            ext &= vk;
            ext.reset(u);
            ext.reset(v);
            if (ext.count() < gamma_abs) out.push_back({u, v});
        }
    return out;
}

long long pair_count_with_vector(const Partition& p, const IndexVector& vprime) {
    if (static_cast<int>(vprime.coords.size()) != p.part_count() || vprime.sum() != 2)
        throw std::invalid_argument("pair_count_with_vector needs a 2-vector");
    for (int i = 0; i < p.part_count(); ++i) {
        if (vprime.coords[i] == 2) return binom2(static_cast<long long>(p.part(i).size()));
        if (vprime.coords[i] == 1)
            for (int j = i + 1; j < p.part_count(); ++j)
                if (vprime.coords[j] == 1)
                    return static_cast<long long>(p.part(i).size()) * p.part(j).size();
    }
    return 0;
}

}  // namespace loosetile
