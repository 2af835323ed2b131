#include "loosetile/extremal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "loosetile/almost_tiling.hpp"
#include "loosetile/rng.hpp"

namespace loosetile {

namespace {

// edges {x, a, b} with a, b in `inb` (x excluded from its own pair)
long long deg_into_set(const Hypergraph3& h, Vertex x, const Bitset& inb) {
    Bitset s = inb;
    s.reset(x);
    long long twice = 0;
    for (int a = s.next(); a != -1; a = s.next(a + 1)) {
        Bitset third = h.link(x, a);
        third &= s;
        twice += third.count();
    }
    return twice / 2;
}

long long pair_deg_into(const Hypergraph3& h, Vertex u, Vertex v, const Bitset& set) {
    Bitset third = h.link(u, v);
    third &= set;
    third.reset(u);
    third.reset(v);
    return third.count();
}

}  // namespace

std::vector<Vertex> minimize_eB(const Hypergraph3& h, std::vector<Vertex> b0,
                                std::int64_t budget_ms) {
    int n = h.vertex_count();
    if (static_cast<int>(b0.size()) != 2 * n / 3)
        throw std::invalid_argument("minimize_eB needs |B0| = 2n/3");
    Bitset inb(n);
    for (Vertex v : b0) {
        if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
        if (inb.test(v)) throw std::invalid_argument("repeated vertex in B0");
        inb.set(v);
    }

    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::milliseconds(budget_ms > 0 ? budget_ms : 0);
    auto out_of_time = [&] {
        return budget_ms > 0 && std::chrono::steady_clock::now() >= deadline;
    };

    bool improved = true;
    while (improved && !out_of_time()) {
        improved = false;
        std::vector<long long> din(n);
        for (Vertex v = 0; v < n; ++v) din[v] = deg_into_set(h, v, inb);
        for (Vertex u = 0; u < n && !improved; ++u) {
            if (inb.test(u)) continue;
            for (int v = inb.next(); v != -1; v = inb.next(v + 1)) {
                // e(B - v + u) - e(B) = deg(u, (B\v)^2) - deg(v, (B\v)^2)
                long long delta = din[u] - pair_deg_into(h, u, v, inb) - din[v];
                if (delta < 0) {
                    inb.reset(v);
                    inb.set(u);
                    improved = true;
                    break;
                }
            }
        }
    }
    return inb.to_vector();
}

Classification classify(const Hypergraph3& h, const std::vector<Vertex>& b, double eps1) {
    int n = h.vertex_count();
    if (static_cast<int>(b.size()) != 2 * n / 3) throw std::invalid_argument("classify needs |B| = 2n/3");
    if (!(eps1 > 0.0 && eps1 < 0.5)) throw std::invalid_argument("eps1 must be in (0, 1/2)");
    Bitset inb(n);
    for (Vertex v : b) inb.set(v);

    Classification cls;
    cls.eps1 = eps1;
    Bitset aprime_mask(n), bprime_mask(n);
    for (Vertex v = 0; v < n; ++v) {
        // baseline: pairs actually available to v inside B
        double full = static_cast<double>(
            binom2(static_cast<long long>(b.size()) - (inb.test(v) ? 1 : 0)));
        double d = static_cast<double>(deg_into_set(h, v, inb));
        if (d >= (1.0 - eps1) * full) {
            cls.aprime.push_back(v);
            aprime_mask.set(v);
        } else if (d <= eps1 * full) {
            cls.bprime.push_back(v);
            bprime_mask.set(v);
        } else {
            cls.v0.push_back(v);
        }
    }
    cls.q1 = static_cast<long long>(cls.v0.size());
    cls.q = static_cast<long long>(cls.bprime.size()) - 2 * n / 3;
    for (Vertex v = 0; v < n; ++v) {
        bool in_b = inb.test(v);
        if (!in_b && !aprime_mask.test(v)) ++cls.a_minus_aprime;
        if (in_b && !bprime_mask.test(v)) ++cls.b_minus_bprime;
        if (!in_b && bprime_mask.test(v)) ++cls.bprime_minus_b;
        if (in_b && aprime_mask.test(v)) ++cls.aprime_minus_a;
    }
    return cls;
}

CoverBalanceResult cover_and_balance(const Hypergraph3& h, const Classification& cls) {
    CoverBalanceResult out;
    int n = h.vertex_count();
    double dag = 2.0 * std::sqrt(cls.eps1) * n;  // complement-degree ceiling into A'

    Bitset aprime(n), bprime(n);
    for (Vertex v : cls.aprime) aprime.set(v);
    for (Vertex v : cls.bprime) bprime.set(v);

    long long q2 = std::max<long long>(cls.q, 0);
    out.q2 = q2;

    // matched triples to extend: q2 inside B', then one per V0 vertex
    std::vector<Triple> base;
    Bitset used(n);
    if (q2 > 0) {
        auto mr = max_matching3_within(h, cls.bprime, MatchingMode::Greedy);
        if (static_cast<long long>(mr.matching.edges.size()) < q2)
            mr = max_matching3_within(h, cls.bprime, MatchingMode::Exact, 20000);
        if (static_cast<long long>(mr.matching.edges.size()) < q2) {
            out.failure = "Q2 matching inside B' found " + std::to_string(mr.matching.edges.size()) +
                          " < " + std::to_string(q2) + " edges";
            return out;
        }
        for (long long i = 0; i < q2; ++i) {
            base.push_back(mr.matching.edges[i]);
            for (Vertex v : mr.matching.edges[i]) used.set(v);
        }
    }
    for (Vertex w : cls.v0) {
        bool found = false;
        for (int u = bprime.next(); u != -1 && !found; u = bprime.next(u + 1)) {
            if (used.test(u)) continue;
            Bitset third = h.link(w, u);
            third &= bprime;
            third.subtract(used);
            int v = third.next(u + 1);
            if (v != -1) {
                Triple t{w, u, v};
                std::sort(t.begin(), t.end());
                base.push_back(t);
                used.set(w);
                used.set(u);
                used.set(v);
                found = true;
            }
        }
        if (!found) {
            out.failure = "Q1 edge through V0 vertex " + std::to_string(w) + " not found";
            return out;
        }
    }

    // extend each triple by x, y in B' and z in N(ux, A') n N(vy, A')
    std::vector<CycleCopy> q1_copies, q2_copies;
    Bitset v0mask(n);
    for (Vertex v : cls.v0) v0mask.set(v);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const Triple& e = base[i];
        // u, v from B'; w is the third vertex (the V0 vertex for Q1 triples)
        std::vector<Vertex> bvs, others;
        for (Vertex vv : e)
            if (bprime.test(vv))
                bvs.push_back(vv);
            else
                others.push_back(vv);
        Vertex u, v, w;
        if (others.empty()) {
            u = e[0];
            v = e[1];
            w = e[2];
        } else if (bvs.size() == 2) {
            u = bvs[0];
            v = bvs[1];
            w = others[0];
        } else {
            out.failure = "triple " + std::to_string(i) + " does not fit the Q pattern";
            return out;
        }

        bool built = false;
        for (int x = bprime.next(); x != -1 && !built; x = bprime.next(x + 1)) {
            if (used.test(x) || x == u || x == v || x == w) continue;
            if (static_cast<double>(complement_degree(h, std::vector<Vertex>{u, x},
                                                      cls.aprime)) > dag)
                continue;
            for (int y = bprime.next(); y != -1 && !built; y = bprime.next(y + 1)) {
                if (used.test(y) || y == x || y == u || y == v || y == w) continue;
                if (static_cast<double>(complement_degree(h, std::vector<Vertex>{v, y},
                                                          cls.aprime)) > dag)
                    continue;
                Bitset zs = h.link(u, x);
                zs &= h.link(v, y);
                zs &= aprime;
                zs.subtract(used);
                int z = zs.next();
                if (z == -1) continue;
                CycleCopy copy{{u, z, v}, {x, y, w}};
                if (!is_cycle_copy(h, copy)) continue;
                used.set(x);
                used.set(y);
                used.set(z);
                (v0mask.test(w) ? q1_copies : q2_copies).push_back(copy);
                built = true;
            }
        }
        if (!built) {
            out.failure = "extension stuck at triple " + std::to_string(i) + " (vertex " +
                          std::to_string(u) + ")";
            return out;
        }
    }

    Bitset a1 = aprime, b1 = bprime;
    a1.subtract(used);
    b1.subtract(used);
    long long bal = 2ll * a1.count() - b1.count();
    if (bal < 0 || bal % 3 != 0) {
        out.failure = "size accounting: 2|A1| - |B1| = " + std::to_string(bal);
        return out;
    }
    out.s = bal / 3;

    std::vector<CycleCopy> r_copies;
    for (long long k = 0; k < out.s; ++k) {
        bool built = false;
        int u = b1.next();
        for (; u != -1 && !built; u = b1.next(u + 1)) {
            for (int v = b1.next(u + 1); v != -1 && !built; v = b1.next(v + 1)) {
                if (static_cast<double>(pair_deg_into(h, u, v, a1)) <
                    static_cast<double>(a1.count()) - dag)
                    continue;
                for (int w = b1.next(v + 1); w != -1 && !built; w = b1.next(w + 1)) {
                    Bitset xs = h.link(u, v);
                    xs &= a1;
                    Bitset ys = h.link(u, w);
                    ys &= a1;
                    Bitset zs = h.link(v, w);
                    zs &= a1;
                    int x = xs.next();
                    if (x == -1) continue;
                    int y = ys.next();
                    if (y == x) y = ys.next(y + 1);
                    if (y == -1) continue;
                    int z = zs.next();
                    while (z == x || z == y) z = zs.next(z + 1);
                    if (z == -1) continue;
                    CycleCopy copy{{u, w, v}, {y, z, x}};
                    if (!is_cycle_copy(h, copy)) continue;
                    for (Vertex q : copy.vertex_array()) {
                        a1.reset(q);
                        b1.reset(q);
                    }
                    r_copies.push_back(copy);
                    built = true;
                }
            }
        }
        if (!built) {
            out.failure = "R tiling stuck at copy " + std::to_string(k);
            return out;
        }
    }

    out.a2 = a1.to_vector();
    out.b2 = b1.to_vector();
    if (2 * static_cast<long long>(out.a2.size()) != static_cast<long long>(out.b2.size())) {
        out.failure = "size accounting after R: 2|A2| != |B2|";
        return out;
    }
    out.q1_tiling = Tiling::from_copies(std::move(q1_copies));
    out.q2_tiling = Tiling::from_copies(std::move(q2_copies));
    out.r_tiling = Tiling::from_copies(std::move(r_copies));
    out.ok = true;
    return out;
}

namespace {

// Kuhn's augmenting-path matching; adj[l] lists right neighbors.
struct BipartiteMatcher {
    const std::vector<std::vector<int>>& adj;
    int nleft, nright;
    std::vector<int> match_l, match_r;

    BipartiteMatcher(const std::vector<std::vector<int>>& adj, int nr)
        : adj(adj), nleft(static_cast<int>(adj.size())), nright(nr),
          match_l(nleft, -1), match_r(nright, -1) {}

    bool try_augment(int l, std::vector<char>& vis) {
        for (int rr : adj[l]) {
            if (vis[rr]) continue;
            vis[rr] = 1;
            if (match_r[rr] == -1 || try_augment(match_r[rr], vis)) {
                match_l[l] = rr;
                match_r[rr] = l;
                return true;
            }
        }
        return false;
    }

    int run() {
        int matched = 0;
        for (int l = 0; l < nleft; ++l) {
            std::vector<char> vis(nright, 0);
            if (try_augment(l, vis)) ++matched;
        }
        return matched;
    }

    // Hall violator: left vertices alternating-reachable from an unmatched one.
    std::string violator() const {
        std::vector<char> inw(nleft, 0), seen_r(nright, 0);
        std::vector<int> stack;
        for (int l = 0; l < nleft; ++l)
            if (match_l[l] == -1) {
                stack.push_back(l);
                inw[l] = 1;
            }
        while (!stack.empty()) {
            int l = stack.back();
            stack.pop_back();
            for (int rr : adj[l]) {
                if (seen_r[rr]) continue;
                seen_r[rr] = 1;
                int l2 = match_r[rr];
                if (l2 != -1 && !inw[l2]) {
                    inw[l2] = 1;
                    stack.push_back(l2);
                }
            }
        }
        int w = 0, nb = 0;
        for (int l = 0; l < nleft; ++l) w += inw[l];
        for (int rr = 0; rr < nright; ++rr) nb += seen_r[rr];
        return "|W| = " + std::to_string(w) + ", |N(W)| = " + std::to_string(nb);
    }
};

}  // namespace

IdealFactorResult ideal_factor(const Hypergraph3& h, const std::vector<Vertex>& x,
                               const std::vector<Vertex>& z, double rho, std::uint64_t seed,
                               int max_attempts) {
    IdealFactorResult res;
    if (z.size() != 2 * x.size()) throw std::invalid_argument("ideal_factor needs |Z| = 2|X|");
    if (x.size() % 2 != 0 || x.empty()) throw std::invalid_argument("ideal_factor needs |X| even, nonzero");
    if (rho < 0.0 || rho >= 1.0) throw std::invalid_argument("rho must be in [0,1)");
    {
        Bitset seen(h.vertex_count());
        for (Vertex v : x) {
            if (seen.test(v)) throw std::invalid_argument("X and Z must be disjoint");
            seen.set(v);
        }
        for (Vertex v : z) {
            if (seen.test(v)) throw std::invalid_argument("X and Z must be disjoint");
            seen.set(v);
        }
    }

    int zn = static_cast<int>(z.size());
    int m = static_cast<int>(x.size()) / 2;

    // good-pair graph on Z: few missing X-extensions
    std::vector<Bitset> g(zn, Bitset(zn));
    double cap = rho * static_cast<double>(x.size());
    for (int i = 0; i < zn; ++i)
        for (int j = i + 1; j < zn; ++j) {
            long long miss = 0;
            for (Vertex xv : x)
                if (!h.has_edge(xv, z[i], z[j])) ++miss;
            if (static_cast<double>(miss) <= cap) {
                g[i].set(j);
                g[j].set(i);
            }
        }
    bool isolated = false;
    for (int i = 0; i < zn; ++i)
        if (g[i].none()) isolated = true;

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        res.attempts = attempt + 1;
        if (isolated) {
            res.failure_stages.push_back("G has isolated vertices");
            continue;
        }
        Rng rng = Rng(seed).fork(attempt);

        std::vector<int> zperm(zn);
        for (int i = 0; i < zn; ++i) zperm[i] = i;
        rng.shuffle(zperm);
        // Z_1..Z_4 slices of the shuffled order, each of size m
        auto zslice = [&](int k, int i) { return zperm[k * m + i]; };

        std::vector<Vertex> xperm = x;
        rng.shuffle(xperm);

        // perfect matchings M_1, M_2, M_3 between consecutive slices inside G
        std::vector<std::vector<int>> mnext(3, std::vector<int>(m, -1));
        bool matchings_ok = true;
        for (int k = 0; k < 3 && matchings_ok; ++k) {
            std::vector<std::vector<int>> adj(m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if (g[zslice(k, i)].test(zslice(k + 1, j))) adj[i].push_back(j);
            BipartiteMatcher bm(adj, m);
            if (bm.run() < m) {
                res.failure_stages.push_back("M" + std::to_string(k + 1) + " matching incomplete");
                matchings_ok = false;
            } else {
                mnext[k] = bm.match_l;
            }
        }
        if (!matchings_ok) continue;

        // chains z1 -> z2 -> z3 -> z4
        struct Chain {
            Vertex z1, z2, z3, z4;
        };
        std::vector<Chain> chains(m);
        for (int i = 0; i < m; ++i) {
            int i2 = mnext[0][i];
            int i3 = mnext[1][i2];
            int i4 = mnext[2][i3];
            chains[i] = {z[zslice(0, i)], z[zslice(1, i2)], z[zslice(2, i3)], z[zslice(3, i4)]};
        }

        // Gamma: X-pairs vs chains
        std::vector<std::vector<int>> adj(m);
        for (int j = 0; j < m; ++j) {
            Vertex xj = xperm[2 * j], xj2 = xperm[2 * j + 1];
            for (int i = 0; i < m; ++i) {
                const Chain& c = chains[i];
                if (h.has_edge(xj, c.z1, c.z2) && h.has_edge(xj2, c.z2, c.z3) &&
                    h.has_edge(xj, c.z3, c.z4))
                    adj[j].push_back(i);
            }
        }
        BipartiteMatcher bm(adj, m);
        if (bm.run() < m) {
            res.failure_stages.push_back("Gamma matching incomplete (" + bm.violator() + ")");
            continue;
        }

        std::vector<CycleCopy> copies;
        for (int j = 0; j < m; ++j) {
            const Chain& c = chains[bm.match_l[j]];
            Vertex xj = xperm[2 * j], xj2 = xperm[2 * j + 1];
            copies.push_back(CycleCopy{{c.z2, c.z3, xj}, {xj2, c.z4, c.z1}});
        }
        Tiling t = Tiling::from_copies(std::move(copies));
        auto chk = verify_tiling(h, t, false);
        if (!chk.ok) {
            res.failure_stages.push_back("assembled factor failed verification: " + chk.diagnostic);
            continue;
        }
        res.ok = true;
        res.tiling = std::move(t);
        return res;
    }
    return res;
}

ExtremalResult extremal_solve(const Hypergraph3& h, double eps, const ExtremalOptions& opts) {
    ExtremalResult res;
    PipelineTrace& tr = res.trace;
    tr.eps = eps;
    int n = h.vertex_count();
    if (n % 6 != 0) throw std::invalid_argument("extremal_solve needs n = 0 mod 6");
    if (!(eps > 0.0 && eps < 1.0 / 24.0))
        throw std::invalid_argument("eps must be in (0, 1/24)");
    auto cod = min_codegree(h);
    if (3 * cod.value < n)
        throw std::invalid_argument("codegree below n/3: delta2 = " + std::to_string(cod.value) +
                                    " < " + std::to_string(n / 3));

    double eps1 = 8.0 * std::sqrt(24.0 * eps);
    tr.eps1_clamped = eps1 > 0.24;
    tr.eps1 = std::min(eps1, 0.24);
    double rho = 8.0 * std::sqrt(tr.eps1);
    tr.rho_clamped = rho > 0.9;
    tr.rho = std::min(rho, 0.9);

    double ebound = eps * static_cast<double>(n) * n * n;

    // seed B: caller-supplied, else the 2n/3 lowest-degree vertices, else the
    // certificate branch of the almost-matching algorithm
    std::vector<std::vector<Vertex>> seeds;
    if (opts.b0) {
        seeds.push_back(*opts.b0);
    } else {
        std::vector<Vertex> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            return h.vertex_degree(a) < h.vertex_degree(b);
        });
        order.resize(2 * n / 3);
        std::sort(order.begin(), order.end());
        seeds.push_back(std::move(order));

        auto am = almost_perfect_matching(h, std::min(eps * 24.0, 0.9), 0.5, 10000);
        if (am.status == AlmostStatus::Certificate) seeds.push_back(am.certificate.b);
    }

    bool have_b = false;
    for (auto& seed : seeds) {
        auto b = minimize_eB(h, seed, opts.minimize_budget_ms);
        long long eb = edge_counts(h, {b});
        if (static_cast<double>(eb) <= ebound) {
            tr.b_seed = seed;
            tr.b = std::move(b);
            tr.eb = eb;
            have_b = true;
            break;
        }
        if (!have_b && tr.eb < 0) {  // remember the best try for the trace
            tr.b_seed = seed;
            tr.b = b;
            tr.eb = eb;
        }
    }
    if (!have_b) {
        tr.failure_stage = "extremality";
        tr.failure_detail = "no B with e(B) <= eps n^3 found (best e(B) = " +
                            std::to_string(tr.eb) + ")";
        return res;
    }

    tr.cls = classify(h, tr.b, tr.eps1);
    double blen = static_cast<double>(tr.b.size());
    double disc = static_cast<double>(std::max({tr.cls.a_minus_aprime, tr.cls.b_minus_bprime,
                                                tr.cls.aprime_minus_a, tr.cls.bprime_minus_b}));
    if (disc > tr.eps1 / 64.0 * blen ||
        static_cast<double>(tr.cls.q1) > tr.eps1 / 32.0 * blen) {
        tr.failure_stage = "classification";
        tr.failure_detail = "size diagnostics exceeded";
        return res;
    }

    tr.cover = cover_and_balance(h, tr.cls);
    if (!tr.cover.ok) {
        tr.failure_stage = "cover_and_balance";
        tr.failure_detail = tr.cover.failure;
        return res;
    }

    tr.ideal = ideal_factor(h, tr.cover.a2, tr.cover.b2, tr.rho, opts.seed, opts.max_attempts);
    if (!tr.ideal.ok) {
        tr.failure_stage = "ideal_factor";
        tr.failure_detail = tr.ideal.failure_stages.empty()
                                ? "no attempts"
                                : tr.ideal.failure_stages.back();
        return res;
    }

    std::vector<CycleCopy> all;
    for (const Tiling* t : {&tr.cover.q1_tiling, &tr.cover.q2_tiling, &tr.cover.r_tiling,
                            &tr.ideal.tiling})
        for (const auto& c : t->copies) all.push_back(c);
    res.tiling = Tiling::from_copies(std::move(all));
    auto chk = verify_tiling(h, res.tiling, true);
    if (!chk.ok) {
        tr.failure_stage = "final verification";
        tr.failure_detail = chk.diagnostic;
        return res;
    }
    res.ok = true;
    return res;
}

}  // namespace loosetile
