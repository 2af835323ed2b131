#include "loosetile/absorbing.hpp"

#include <algorithm>
#include <cmath>

#include "loosetile/rng.hpp"

namespace loosetile {

std::vector<IndexVector> even_six_vectors(int r) {
    std::vector<IndexVector> out;
    std::vector<int> c(r, 0);
    // coordinates from {0,2,4,6} summing to 6
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == r) {
            if (left == 0) out.push_back(IndexVector{c});
            return;
        }
        for (int v = 0; v <= left; v += 2) {
            c[idx] = v;
            rec(idx + 1, left - v);
        }
        c[idx] = 0;
    };
    rec(0, 6);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<int>> choose_exceptional_subset(
    const std::vector<int>& u_parity, const std::vector<std::vector<int>>& f_parities) {
    int r = static_cast<int>(u_parity.size());
    int k = static_cast<int>(f_parities.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<int> par = u_parity;
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i))
                for (int j = 0; j < r; ++j) par[j] = (par[j] + f_parities[i][j]) % 2;
        bool even = true;
        for (int j = 0; j < r; ++j)
            if (par[j] % 2) even = false;
        if (even) {
            std::vector<int> subset;
            for (int i = 0; i < k; ++i)
                if (mask & (1 << i)) subset.push_back(i);
            return subset;
        }
    }
    return std::nullopt;
}

namespace {

std::vector<int> parity_of(const IndexVector& v) {
    std::vector<int> p(v.coords.size());
    for (std::size_t i = 0; i < v.coords.size(); ++i) p[i] = ((v.coords[i] % 2) + 2) % 2;
    return p;
}

// Greedy disjoint spanning 6-sets inside `free`; used for depth > 1.
bool grab_extra_blocks(const Hypergraph3& h, Bitset& free, int count,
                       std::vector<CycleCopy>& out, std::vector<Vertex>& verts) {
    for (int k = 0; k < count; ++k) {
        bool found = false;
        for (int v = free.next(); v != -1 && !found; v = free.next(v + 1)) {
            // first spanning 6-set through v, lex
            for (int a = free.next(v + 1); a != -1 && !found; a = free.next(a + 1))
                for (int b = free.next(a + 1); b != -1 && !found; b = free.next(b + 1))
                    for (int c = free.next(b + 1); c != -1 && !found; c = free.next(c + 1))
                        for (int d = free.next(c + 1); d != -1 && !found; d = free.next(d + 1))
                            for (int e = free.next(d + 1); e != -1 && !found; e = free.next(e + 1)) {
                                std::array<Vertex, 6> six{v, a, b, c, d, e};
                                if (auto cp = spanning_copy(h, six)) {
                                    for (Vertex x : six) {
                                        free.reset(x);
                                        verts.push_back(x);
                                    }
                                    out.push_back(*cp);
                                    found = true;
                                }
                            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

MsetsForResult absorbing_msets_for(const Hypergraph3& h, const Partition& p,
                                   const std::vector<Vertex>& s, int t, std::size_t cap) {
    if (s.size() != 6) throw std::invalid_argument("S must have 6 vertices");
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    IndexVector target = p.index_vector(s);
    for (int c : target.coords)
        if (c % 2) throw std::invalid_argument("S must have an all-even index vector");

    MsetsForResult res;
    int n = h.vertex_count();
    int m = 36 * t;
    if (n < m + 6) {
        res.note = "insufficient vertices";
        return res;
    }

    Bitset smask(n);
    for (Vertex v : s) smask.set(v);

    for_each_copy(h, [&](const CycleCopy& f) {
        auto fv = f.vertex_array();
        for (Vertex v : fv)
            if (smask.test(v)) return true;
        std::vector<Vertex> fvec(fv.begin(), fv.end());
        if (p.index_vector(fvec) != target) return true;

        // pair x_i in F with y_i in S inside the same part
        auto by_part = [&](std::vector<Vertex> vs) {
            std::sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) {
                return std::pair(p.part_of(a), a) < std::pair(p.part_of(b), b);
            });
            return vs;
        };
        std::vector<Vertex> xs = by_part(fvec);
        std::vector<Vertex> ys = by_part(s);

        Bitset used = smask;
        for (Vertex v : fv) used.set(v);

        std::vector<Vertex> avert(fv.begin(), fv.end());
        std::vector<CycleCopy> alone, with_s{f};
        bool ok = true;
        for (int i = 0; i < 6 && ok; ++i) {
            auto r = reachable_5sets(h, xs[i], ys[i], 1, &used, 1);
            if (r.count < 1) {
                ok = false;
                break;
            }
            const auto& t5 = r.witnesses[0];
            std::array<Vertex, 6> six_x{t5[0], t5[1], t5[2], t5[3], t5[4], xs[i]};
            std::array<Vertex, 6> six_y{t5[0], t5[1], t5[2], t5[3], t5[4], ys[i]};
            std::sort(six_x.begin(), six_x.end());
            std::sort(six_y.begin(), six_y.end());
            auto cx = spanning_copy(h, six_x);
            auto cy = spanning_copy(h, six_y);
            if (!cx || !cy) {
                ok = false;
                break;
            }
            alone.push_back(*cx);
            with_s.push_back(*cy);
            for (Vertex v : t5) {
                used.set(v);
                avert.push_back(v);
            }
            if (t > 1) {
                Bitset free = used;
                // free = complement of used
                Bitset inv(n);
                for (int v = 0; v < n; ++v)
                    if (!used.test(v)) inv.set(v);
                free = inv;
                std::vector<CycleCopy> extra;
                std::vector<Vertex> extra_verts;
                if (!grab_extra_blocks(h, free, t - 1, extra, extra_verts)) {
                    ok = false;
                    break;
                }
                for (Vertex v : extra_verts) {
                    used.set(v);
                    avert.push_back(v);
                }
                for (const auto& c : extra) {
                    alone.push_back(c);
                    with_s.push_back(c);
                }
            }
        }
        if (!ok) return true;  // try the next copy F

        MsetForS out;
        out.vertices = avert;
        std::sort(out.vertices.begin(), out.vertices.end());
        out.factor_alone = Tiling::from_copies(alone);
        out.factor_with_s = Tiling::from_copies(with_s);
        if (!verify_tiling(h, out.factor_alone, false).ok) return true;
        if (!verify_tiling(h, out.factor_with_s, false).ok) return true;
        res.msets.push_back(std::move(out));
        return res.msets.size() < cap;
    });
    if (res.msets.empty() && res.note.empty()) res.note = "no absorbing m-set found";
    return res;
}

namespace {

double log_binom(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Probe 6-sets of the class outside `avoid`; returns false when the class
// cannot be realized at all (parts too small).
bool make_probe(const Partition& p, const IndexVector& cls, const Bitset& avoid, Rng& rng,
                std::vector<Vertex>& out) {
    out.clear();
    for (int i = 0; i < p.part_count(); ++i) {
        int need = cls.coords[i];
        if (need == 0) continue;
        std::vector<Vertex> avail;
        for (Vertex v : p.part(i))
            if (!avoid.test(v)) avail.push_back(v);
        if (static_cast<int>(avail.size()) < need) return false;
        std::vector<int> pick = rng.sample(static_cast<int>(avail.size()), need);
        for (int idx : pick) out.push_back(avail[idx]);
    }
    std::sort(out.begin(), out.end());
    return true;
}

}  // namespace

FamilyBuildResult build_absorbing_family(const Hypergraph3& h, const Partition& p,
                                         const AbsorbConfig& cfg) {
    FamilyBuildResult res;
    int n = h.vertex_count();
    int m = cfg.m();
    if (p.part_count() < 1 || p.part_count() > 3)
        throw std::invalid_argument("partition must have 1 to 3 parts");
    if (n < 3 * m)
        throw std::invalid_argument("n too small for m-set family (need n >= 3m)");

    // exceptional copies fixing odd leftovers; depend only on the partition
    std::vector<CycleCopy> exceptional;
    int r = p.part_count();
    if (r == 2) {
        auto odd = odd_intersection_copy(h, p.part(0), cfg.odd_budget);
        if (!odd.copy) {
            res.error = "exceptional copy F0 not found within budget";
            return res;
        }
        exceptional.push_back(*odd.copy);
    } else if (r == 3) {
        auto odd1 = odd_intersection_copy(h, p.part(0), cfg.odd_budget);
        if (!odd1.copy) {
            res.error = "exceptional copy F1 not found within budget";
            return res;
        }
        exceptional.push_back(*odd1.copy);
        auto f1v = odd1.copy->vertex_array();
        std::vector<Vertex> f1vec(f1v.begin(), f1v.end());
        auto par1 = parity_of(p.index_vector(f1vec));
        int j = par1[1] == 0 ? 1 : 2;  // the part F1 meets evenly (0-based), among parts 2,3
        Bitset allowed = Bitset::all(n);
        for (Vertex v : f1v) allowed.reset(v);
        Bitset vj(n);
        for (Vertex v : p.part(j))
            if (allowed.test(v)) vj.set(v);
        auto odd2 = odd_intersection_copy_within(h, vj, allowed, cfg.odd_budget);
        if (!odd2.copy) {
            res.error = "exceptional copy F2 not found within budget";
            return res;
        }
        exceptional.push_back(*odd2.copy);
    }

    Bitset exc_mask(n);
    for (const auto& c : exceptional)
        for (Vertex v : c.vertex_array()) exc_mask.set(v);

    // number of candidates: round(p * C(n, m)), capped; p <= 0 draws the cap
    std::uint64_t want;
    if (cfg.p > 0.0) {
        double logN = std::log(cfg.p) + log_binom(n, m);
        double N = logN > 60 ? 1e18 : std::exp(logN);
        want = static_cast<std::uint64_t>(std::llround(std::min(N, 1e18)));
    } else {
        want = cfg.max_candidates;
    }
    want = std::min(want, cfg.max_candidates);
    // family-size analogue of the selection bound: |F| <= gamma1 * n
    std::uint64_t size_cap = static_cast<std::uint64_t>(cfg.gamma1 * n);
    if (size_cap < 1) {
        res.error = "gamma1 * n < 1: no family fits the size bound";
        return res;
    }
    want = std::min(want, size_cap);
    if (want < 1) {
        res.error = "selection produced no candidates (p too small)";
        return res;
    }

    auto classes = even_six_vectors(r);

    for (int retry = 0; retry < cfg.max_retries; ++retry) {
        res.stats = FamilyStats{};
        res.stats.retries = retry;
        res.stats.sampled = want;
        Rng rng = Rng(cfg.seed).fork(retry);

        std::vector<std::vector<Vertex>> cands;
        for (std::uint64_t i = 0; i < want; ++i) {
            auto pick = rng.sample(n, m);
            std::sort(pick.begin(), pick.end());
            cands.push_back(std::move(pick));
        }
        for (std::size_t i = 0; i < cands.size(); ++i)
            for (std::size_t j = i + 1; j < cands.size(); ++j) {
                std::vector<Vertex> inter;
                std::set_intersection(cands[i].begin(), cands[i].end(), cands[j].begin(),
                                      cands[j].end(), std::back_inserter(inter));
                if (!inter.empty()) ++res.stats.intersecting_pairs;
            }

        std::vector<AbsorbingMset> kept;
        Bitset used = exc_mask;
        for (auto& cand : cands) {
            bool clash = false;
            for (Vertex v : cand)
                if (used.test(v)) clash = true;
            if (clash) {
                ++res.stats.dropped_intersecting;
                continue;
            }
            auto fr = find_factor_within(h, cand, cfg.factor_budget_ms);
            if (fr.status != SearchStatus::Found) {
                ++res.stats.dropped_not_absorbing;
                continue;
            }
            AbsorbingMset mset;
            mset.vertices = cand;
            mset.factor = fr.tiling;
            Bitset avoid(n);
            for (Vertex v : cand) avoid.set(v);
            for (const auto& cls : classes) {
                bool absorbs = true;
                for (int probe = 0; probe < cfg.probes_per_class && absorbs; ++probe) {
                    std::vector<Vertex> sprobe;
                    if (!make_probe(p, cls, avoid, rng, sprobe)) {
                        absorbs = false;
                        break;
                    }
                    std::vector<Vertex> both = cand;
                    both.insert(both.end(), sprobe.begin(), sprobe.end());
                    auto far = find_factor_within(h, both, cfg.factor_budget_ms);
                    if (far.status != SearchStatus::Found) absorbs = false;
                }
                if (absorbs) mset.classes.push_back(cls);
            }
            if (mset.classes.empty()) {
                ++res.stats.dropped_not_absorbing;
                continue;
            }
            for (Vertex v : cand) used.set(v);
            kept.push_back(std::move(mset));
        }

        for (const auto& mset : kept)
            for (const auto& cls : mset.classes) ++res.stats.capacity[cls];

        // realized capacity check: every class that fits outside W needs a set
        Bitset wmask = exc_mask;
        for (const auto& mset : kept)
            for (Vertex v : mset.vertices) wmask.set(v);
        bool ok = true;
        for (const auto& cls : classes) {
            bool realizable = true;
            for (int i = 0; i < r; ++i) {
                int avail = 0;
                for (Vertex v : p.part(i))
                    if (!wmask.test(v)) ++avail;
                if (avail < cls.coords[i]) realizable = false;
            }
            if (realizable && res.stats.capacity[cls] < 1) ok = false;
        }
        if (!ok || kept.empty()) continue;

        AbsorbingFamily fam;
        fam.partition = p;
        fam.cfg = cfg;
        fam.msets = std::move(kept);
        fam.exceptional = exceptional;
        std::vector<CycleCopy> wcopies;
        for (const auto& mset : fam.msets) {
            for (const auto& c : mset.factor.copies) wcopies.push_back(c);
            fam.w.insert(fam.w.end(), mset.vertices.begin(), mset.vertices.end());
        }
        for (const auto& c : exceptional) {
            wcopies.push_back(c);
            auto va = c.vertex_array();
            fam.w.insert(fam.w.end(), va.begin(), va.end());
        }
        std::sort(fam.w.begin(), fam.w.end());
        fam.w_factor = Tiling::from_copies(std::move(wcopies));
        auto chk = verify_tiling(h, fam.w_factor, false);
        if (!chk.ok) {
            res.error = "internal: W factor failed verification: " + chk.diagnostic;
            return res;
        }
        res.ok = true;
        res.family = std::move(fam);
        return res;
    }
    res.error = "retries exhausted without a family meeting the capacity checks";
    return res;
}

AbsorbResult absorb(const Hypergraph3& h, const AbsorbingFamily& fam, const std::vector<Vertex>& u) {
    AbsorbResult res;
    int n = h.vertex_count();
    Bitset wmask(n);
    for (Vertex v : fam.w) wmask.set(v);
    Bitset umask(n);
    for (Vertex v : u) {
        if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
        if (umask.test(v)) throw std::invalid_argument("repeated vertex in U");
        if (wmask.test(v)) throw std::invalid_argument("U intersects the family set W");
        umask.set(v);
    }
    if (u.size() % 6 != 0) throw std::invalid_argument("|U| must be divisible by 6");

    if (u.empty()) {
        res.ok = true;
        res.tiling = fam.w_factor;
        return res;
    }
    if (u.size() > 6 * fam.msets.size()) {
        res.error = "capacity exceeded: |U| > 6 * m-sets";
        return res;
    }

    const Partition& p = fam.partition;
    int r = p.part_count();

    std::vector<std::vector<int>> fpar;
    for (const auto& c : fam.exceptional) {
        auto va = c.vertex_array();
        std::vector<Vertex> vv(va.begin(), va.end());
        fpar.push_back(parity_of(p.index_vector(vv)));
    }
    auto upar = parity_of(p.index_vector(u));
    auto subset = choose_exceptional_subset(upar, fpar);
    if (!subset) {
        res.error = "no exceptional subset fixes parity";
        return res;
    }

    // U' = U plus the chosen exceptional copies' vertices, bucketed by part
    std::vector<std::vector<Vertex>> buckets(r);
    for (Vertex v : u) buckets[p.part_of(v)].push_back(v);
    std::vector<char> used_exceptional(fam.exceptional.size(), 0);
    for (int idx : *subset) {
        used_exceptional[idx] = 1;
        for (Vertex v : fam.exceptional[idx].vertex_array()) buckets[p.part_of(v)].push_back(v);
    }
    for (auto& b : buckets) std::sort(b.begin(), b.end());

    // split into 6-sets with even index vectors: three times, take 2 from the
    // fullest bucket (all bucket sizes stay even)
    std::vector<std::vector<Vertex>> sixsets;
    auto total_left = [&] {
        std::size_t s = 0;
        for (const auto& b : buckets) s += b.size();
        return s;
    };
    while (total_left() > 0) {
        std::vector<Vertex> six;
        for (int take = 0; take < 3; ++take) {
            int best = 0;
            for (int i = 1; i < r; ++i)
                if (buckets[i].size() > buckets[best].size()) best = i;
            if (buckets[best].size() < 2) {
                res.error = "internal: even split failed";
                return res;
            }
            six.push_back(buckets[best].back());
            buckets[best].pop_back();
            six.push_back(buckets[best].back());
            buckets[best].pop_back();
        }
        std::sort(six.begin(), six.end());
        sixsets.push_back(std::move(six));
    }

    std::vector<char> consumed(fam.msets.size(), 0);
    std::vector<CycleCopy> copies;
    for (const auto& six : sixsets) {
        IndexVector cls = p.index_vector(six);
        bool matched = false;
        for (std::size_t k = 0; k < fam.msets.size() && !matched; ++k) {
            if (consumed[k]) continue;
            const auto& mset = fam.msets[k];
            if (std::find(mset.classes.begin(), mset.classes.end(), cls) == mset.classes.end())
                continue;
            std::vector<Vertex> both = mset.vertices;
            both.insert(both.end(), six.begin(), six.end());
            auto fr = find_factor_within(h, both, fam.cfg.factor_budget_ms);
            if (fr.status != SearchStatus::Found) continue;
            consumed[k] = 1;
            ++res.msets_consumed;
            for (const auto& c : fr.tiling.copies) copies.push_back(c);
            matched = true;
        }
        if (!matched) {
            res.error = "no unused absorbing m-set for class " + cls.str();
            return res;
        }
    }

    for (std::size_t k = 0; k < fam.msets.size(); ++k)
        if (!consumed[k])
            for (const auto& c : fam.msets[k].factor.copies) copies.push_back(c);
    for (std::size_t i = 0; i < fam.exceptional.size(); ++i)
        if (!used_exceptional[i]) copies.push_back(fam.exceptional[i]);

    res.tiling = Tiling::from_copies(std::move(copies));
    auto chk = verify_tiling(h, res.tiling, false);
    if (!chk.ok) {
        res.error = "internal: absorbed tiling failed verification: " + chk.diagnostic;
        res.tiling = Tiling{};
        return res;
    }
    res.ok = true;
    return res;
}

}  // namespace loosetile
