#include "loosetile/almost_tiling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace loosetile {

namespace {

void maximalize(const Hypergraph3& h, std::vector<Triple>& m) {
    Bitset used(h.vertex_count());
    for (const auto& e : m)
        for (Vertex v : e) used.set(v);
    for (const auto& e : h.edges())
        if (!used.test(e[0]) && !used.test(e[1]) && !used.test(e[2])) {
            m.push_back(e);
            used.set(e[0]);
            used.set(e[1]);
            used.set(e[2]);
        }
}

// B of size floor(2n/3) grown from `base`: pad with vertices adding the
// fewest induced edges, trim lex if oversized.
std::vector<Vertex> shape_certificate_set(const Hypergraph3& h, std::vector<Vertex> base) {
    int n = h.vertex_count();
    std::size_t target = static_cast<std::size_t>(2 * n / 3);
    std::sort(base.begin(), base.end());
    if (base.size() > target) {
        base.resize(target);
        return base;
    }
    Bitset in(n);
    for (Vertex v : base) in.set(v);
    while (base.size() < target) {
        Vertex bestv = -1;
        long long bestadd = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (in.test(v)) continue;
            long long add = 0;
            // edges {v, a, b} with a, b already inside
            for (Vertex a = 0; a < n; ++a) {
                if (!in.test(a) || a == v) continue;
                Bitset third = h.link(v, a);
                third &= in;
                add += third.count();
            }
            add /= 2;
            if (bestv == -1 || add < bestadd) {
                bestv = v;
                bestadd = add;
            }
        }
        in.set(bestv);
        base.push_back(bestv);
    }
    std::sort(base.begin(), base.end());
    return base;
}

long long induced_edges(const Hypergraph3& h, const std::vector<Vertex>& s) {
    return edge_counts(h, {s});
}

}  // namespace

AlmostResult almost_perfect_matching(const Hypergraph3& h, double gamma, double alpha,
                                     std::int64_t budget_ms) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must be in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");

    const int n = h.vertex_count();
    const double degree_floor = n / 3.0 - gamma * n;
    const double cert_bound = gamma * static_cast<double>(n) * n * n;

    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms > 0 ? budget_ms : 0);
    auto out_of_time = [&] {
        return budget_ms > 0 && std::chrono::steady_clock::now() >= deadline;
    };

    AlmostResult res;
    std::vector<Triple> m;
    maximalize(h, m);

    auto certify = [&](std::vector<Vertex> base, const std::string& why) {
        std::vector<Vertex> b = shape_certificate_set(h, std::move(base));
        long long eb = induced_edges(h, b);
        if (static_cast<double>(eb) <= cert_bound) {
            res.status = AlmostStatus::Certificate;
            res.certificate = {std::move(b), eb, cert_bound};
            res.note = why;
        } else {
            res.status = AlmostStatus::Budget;
            res.note = why + "; certificate inequality failed (e(B) = " + std::to_string(eb) + ")";
        }
        return res;
    };

    for (res.iterations = 1; res.iterations <= static_cast<std::uint64_t>(n) + 1; ++res.iterations) {
        if (out_of_time()) {
            res.status = AlmostStatus::Budget;
            res.note = "time budget exhausted";
            return res;
        }

        Bitset covered(n);
        for (const auto& e : m)
            for (Vertex v : e) covered.set(v);
        std::vector<Vertex> u;
        for (Vertex v = 0; v < n; ++v)
            if (!covered.test(v)) u.push_back(v);

        if (static_cast<double>(u.size()) <= alpha * n) {
            res.status = AlmostStatus::Matching;
            res.matching.edges = m;
            std::sort(res.matching.edges.begin(), res.matching.edges.end());
            res.note = "matching covers all but " + std::to_string(u.size());
            return res;
        }

        // disjoint high-degree pairs inside the uncovered set
        int t = static_cast<int>(std::ceil(3.0 / gamma));
        std::vector<std::array<Vertex, 2>> pairs;
        Bitset taken(n);
        for (std::size_t i = 0; i < u.size() && static_cast<int>(pairs.size()) < t; ++i) {
            if (taken.test(u[i])) continue;
            for (std::size_t j = i + 1; j < u.size(); ++j) {
                if (taken.test(u[j])) continue;
                if (static_cast<double>(h.pair_degree(u[i], u[j])) >= degree_floor) {
                    pairs.push_back({u[i], u[j]});
                    taken.set(u[i]);
                    taken.set(u[j]);
                    break;
                }
            }
        }
        if (static_cast<int>(pairs.size()) < t)
            return certify(u, "high-degree pair pick failed in uncovered set");

        // D: matched vertices extending at least 3 of the pairs
        auto extends = [&](Vertex v, const std::array<Vertex, 2>& pr) {
            return v != pr[0] && v != pr[1] && h.has_edge(v, pr[0], pr[1]);
        };
        std::vector<std::vector<int>> good_pairs_of(n);
        Bitset dset(n);
        for (const auto& e : m)
            for (Vertex v : e) {
                for (int pi = 0; pi < static_cast<int>(pairs.size()); ++pi)
                    if (extends(v, pairs[pi])) good_pairs_of[v].push_back(pi);
                if (good_pairs_of[v].size() >= 3) dset.set(v);
            }

        // two D-vertices on one matched edge: direct augmentation
        bool augmented = false;
        for (std::size_t ei = 0; ei < m.size() && !augmented; ++ei) {
            std::vector<Vertex> din;
            for (Vertex v : m[ei])
                if (dset.test(v)) din.push_back(v);
            if (din.size() < 2) continue;
            Vertex x = din[0], y = din[1];
            for (int pa : good_pairs_of[x]) {
                for (int pb : good_pairs_of[y]) {
                    if (pa == pb) continue;
                    Triple ea{x, pairs[pa][0], pairs[pa][1]};
                    Triple eb{y, pairs[pb][0], pairs[pb][1]};
                    std::sort(ea.begin(), ea.end());
                    std::sort(eb.begin(), eb.end());
                    m.erase(m.begin() + ei);
                    m.push_back(ea);
                    m.push_back(eb);
                    augmented = true;
                    break;
                }
                if (augmented) break;
            }
        }
        if (augmented) {
            maximalize(h, m);
            continue;
        }

        // V_D \ D and its exchange structure
        std::vector<int> edge_of(n, -1);
        for (std::size_t ei = 0; ei < m.size(); ++ei)
            for (Vertex v : m[ei]) edge_of[v] = static_cast<int>(ei);
        std::vector<Vertex> w;  // V_D \ D
        Bitset wmask(n);
        for (std::size_t ei = 0; ei < m.size(); ++ei) {
            bool touches = false;
            for (Vertex v : m[ei])
                if (dset.test(v)) touches = true;
            if (!touches) continue;
            for (Vertex v : m[ei])
                if (!dset.test(v)) {
                    w.push_back(v);
                    wmask.set(v);
                }
        }

        // an edge inside V_D \ D lets us free its matched edges
        Triple e0{-1, -1, -1};
        bool have_e0 = false;
        for (const auto& e : h.edges())
            if (wmask.test(e[0]) && wmask.test(e[1]) && wmask.test(e[2])) {
                e0 = e;
                have_e0 = true;
                break;
            }
        if (!have_e0) return certify(w, "V_D minus D spans no edge");

        std::vector<int> hit;
        for (Vertex v : e0) {
            int ei = edge_of[v];
            if (std::find(hit.begin(), hit.end(), ei) == hit.end()) hit.push_back(ei);
        }
        std::vector<Triple> replacement{e0};
        std::vector<char> pair_used(pairs.size(), 0);
        bool pick_ok = true;
        for (int ei : hit) {
            Vertex vd = -1;
            for (Vertex v : m[ei])
                if (dset.test(v)) vd = v;
            int chosen = -1;
            for (int pi : good_pairs_of[vd])
                if (!pair_used[pi]) {
                    chosen = pi;
                    break;
                }
            if (chosen == -1) {
                pick_ok = false;
                break;
            }
            pair_used[chosen] = 1;
            Triple t2{vd, pairs[chosen][0], pairs[chosen][1]};
            std::sort(t2.begin(), t2.end());
            replacement.push_back(t2);
        }
        if (!pick_ok) return certify(w, "pair assignment exhausted during exchange");

        std::sort(hit.rbegin(), hit.rend());
        for (int ei : hit) m.erase(m.begin() + ei);
        for (const auto& e : replacement) m.push_back(e);
        maximalize(h, m);
    }

    res.status = AlmostStatus::Budget;
    res.note = "iteration cap reached";
    return res;
}

}  // namespace loosetile
