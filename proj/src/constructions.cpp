#include "loosetile/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "loosetile/rng.hpp"

namespace loosetile {

namespace {

std::vector<Vertex> range_vec(int lo, int hi) {
    std::vector<Vertex> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

}  // namespace

LabeledInstance space_barrier(int n) {
    if (n % 6 != 0 || n < 12) throw std::invalid_argument("space_barrier needs n = 0 mod 6, n >= 12");
    int xsize = n / 3 - 1;
    std::vector<Triple> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                if (a < xsize) edges.push_back({a, b, c});  // sorted, so min vertex decides
    LabeledInstance inst;
    inst.h = Hypergraph3(n, std::move(edges));
    inst.designated["X"] = range_vec(0, xsize);
    inst.designated["Y"] = range_vec(xsize, n);
    inst.params = {{"family", "space-barrier"}, {"n", std::to_string(n)}};
    return inst;
}

LabeledInstance covered_extremal(int n, int x_size, double noise, std::uint64_t seed) {
    if (n % 6 != 0 || n < 12) throw std::invalid_argument("covered_extremal needs n = 0 mod 6, n >= 12");
    if (x_size < n / 3)
        throw std::invalid_argument("covered_extremal needs x_size >= n/3 (codegree floor)");
    if (x_size >= n) throw std::invalid_argument("x_size too large");
    if (noise < 0.0 || noise > 1.0) throw std::invalid_argument("noise must be in [0,1]");
    Rng rng(seed);
    std::vector<Triple> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c) {
                if (a < x_size)
                    edges.push_back({a, b, c});
                else if (noise > 0.0 && rng.bernoulli(noise))
                    edges.push_back({a, b, c});
            }
    LabeledInstance inst;
    inst.h = Hypergraph3(n, std::move(edges));
    inst.designated["X"] = range_vec(0, x_size);
    inst.designated["Y"] = range_vec(x_size, n);
    inst.params = {{"family", "covered-extremal"},
                   {"n", std::to_string(n)},
                   {"x_size", std::to_string(x_size)},
                   {"noise", std::to_string(noise)},
                   {"seed", std::to_string(seed)}};
    return inst;
}

LabeledInstance ideal_case_instance(int n, double rho, std::uint64_t seed, IdealCaseStats* stats) {
    if (n % 6 != 0 || n < 6) throw std::invalid_argument("ideal_case_instance needs n = 0 mod 6, n >= 6");
    if (rho < 0.0 || rho >= 1.0) throw std::invalid_argument("rho must be in [0,1)");
    int xsize = n / 3;
    int zsize = 2 * n / 3;
    std::vector<Vertex> zs = range_vec(xsize, n);

    long long zpairs = binom2(zsize);
    long long per_x_cap = static_cast<long long>(rho * zpairs);        // missing Z-pairs per x
    int light_cap = static_cast<int>(rho * xsize);                     // deletions keeping a pair good
    int bad_quota = static_cast<int>(rho * zsize);                     // bad partners per Z-vertex

    const int max_attempts = 16;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng = Rng(seed).fork(attempt);
        // present[pair][xi]: X-extension xi survives for the Z-pair
        std::vector<std::vector<char>> present(zpairs, std::vector<char>(xsize, 1));
        std::vector<long long> missing_per_x(xsize, 0);
        std::vector<int> bad_used(zsize, 0);

        auto zpair_id = [&](int i, int j) {  // indices into zs, i < j
            return static_cast<long long>(i) * (2 * zsize - i - 1) / 2 + (j - i - 1);
        };
        auto del = [&](long long pid, int xi) {
            if (!present[pid][xi] || missing_per_x[xi] >= per_x_cap) return false;
            present[pid][xi] = 0;
            ++missing_per_x[xi];
            return true;
        };

        int deleted = 0;
        if (light_cap >= 1) {
            for (int i = 0; i < zsize; ++i)
                for (int j = i + 1; j < zsize; ++j) {
                    if (!rng.bernoulli(rho)) continue;
                    long long pid = zpair_id(i, j);
                    int k = 1 + static_cast<int>(rng.below(light_cap));
                    for (int d = 0; d < k; ++d)
                        if (del(pid, static_cast<int>(rng.below(xsize)))) ++deleted;
                }
        }
        if (bad_quota >= 1) {
            int tries = zsize * bad_quota / 2;
            for (int t = 0; t < tries; ++t) {
                int i = static_cast<int>(rng.below(zsize));
                int j = static_cast<int>(rng.below(zsize));
                if (i == j) continue;
                if (i > j) std::swap(i, j);
                if (bad_used[i] >= bad_quota || bad_used[j] >= bad_quota) continue;
                ++bad_used[i];
                ++bad_used[j];
                long long pid = zpair_id(i, j);
                int k = 1 + static_cast<int>(rng.below(xsize));
                for (int d = 0; d < k; ++d)
                    if (del(pid, static_cast<int>(rng.below(xsize)))) ++deleted;
            }
        }

        // self-check both hypothesis bounds by enumeration
        bool ok = true;
        long long worst_x = 0;
        for (int xi = 0; xi < xsize && ok; ++xi) {
            long long miss = 0;
            for (long long pid = 0; pid < zpairs; ++pid)
                if (!present[pid][xi]) ++miss;
            worst_x = std::max(worst_x, miss);
            if (static_cast<double>(miss) > rho * static_cast<double>(zpairs)) ok = false;
        }
        long long worst_partners = 0;
        for (int i = 0; i < zsize && ok; ++i) {
            long long bad = 0;
            for (int j = 0; j < zsize; ++j) {
                if (j == i) continue;
                long long pid = i < j ? zpair_id(i, j) : zpair_id(j, i);
                int miss = 0;
                for (int xi = 0; xi < xsize; ++xi)
                    if (!present[pid][xi]) ++miss;
                if (static_cast<double>(miss) > rho * xsize) ++bad;
            }
            worst_partners = std::max(worst_partners, bad);
            if (static_cast<double>(bad) > rho * zsize) ok = false;
        }
        if (!ok) continue;

        std::vector<Triple> edges;
        for (int i = 0; i < zsize; ++i)
            for (int j = i + 1; j < zsize; ++j) {
                long long pid = zpair_id(i, j);
                for (int xi = 0; xi < xsize; ++xi)
                    if (present[pid][xi]) edges.push_back({xi, zs[i], zs[j]});
            }
        LabeledInstance inst;
        inst.h = Hypergraph3(n, std::move(edges));
        inst.designated["X"] = range_vec(0, xsize);
        inst.designated["Z"] = zs;
        inst.params = {{"family", "ideal-case"},
                       {"n", std::to_string(n)},
                       {"rho", std::to_string(rho)},
                       {"seed", std::to_string(seed)}};
        if (stats) {
            stats->deleted = deleted;
            stats->max_missing_per_x = worst_x;
            stats->max_damaged_partners = worst_partners;
            stats->realized_rho_x = zpairs ? static_cast<double>(worst_x) / zpairs : 0.0;
            stats->realized_rho_pair = zsize ? static_cast<double>(worst_partners) / zsize : 0.0;
            stats->attempts = attempt + 1;
        }
        return inst;
    }
    throw std::runtime_error("ideal_case_instance: bounds violated after max attempts");
}

LabeledInstance random_3graph(int n, double p, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
    Rng rng(seed);
    std::vector<Triple> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                if (p >= 1.0 || rng.bernoulli(p)) edges.push_back({a, b, c});
    LabeledInstance inst;
    inst.h = Hypergraph3(n, std::move(edges));
    inst.params = {{"family", "random"},
                   {"n", std::to_string(n)},
                   {"p", std::to_string(p)},
                   {"seed", std::to_string(seed)}};
    return inst;
}

LabeledInstance barrier_plus_clique(int n, int x_size, int clique_size) {
    int block = n - clique_size;
    if (n < 6 || clique_size < 0 || block < 3 || x_size < 1 || x_size >= block)
        throw std::invalid_argument("barrier_plus_clique: bad sizes");
    // all triples meeting X, plus a complete block on the last vertices;
    // min codegree is exactly |X|
    std::vector<Triple> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                if (a < x_size || a >= block) edges.push_back({a, b, c});
    LabeledInstance inst;
    inst.h = Hypergraph3(n, std::move(edges));
    inst.designated["X"] = range_vec(0, x_size);
    inst.designated["Y"] = range_vec(x_size, block);
    inst.designated["C"] = range_vec(block, n);
    inst.params = {{"family", "barrier-clique"},
                   {"n", std::to_string(n)},
                   {"x_size", std::to_string(x_size)},
                   {"clique", std::to_string(clique_size)}};
    return inst;
}

}  // namespace loosetile
