#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "loosetile/hypergraph.hpp"

namespace loosetile {

// A generated instance plus its named vertex sets (X, Y, A, B, Z, ...) and
// the parameters that reproduce it bit-exactly.
struct LabeledInstance {
    Hypergraph3 h;
    std::map<std::string, std::vector<Vertex>> designated;
    std::map<std::string, std::string> params;
};

// All triples meeting X, |X| = n/3 - 1. Codegree-tight with no perfect
// factor. Requires n = 0 mod 6, n >= 12.
LabeledInstance space_barrier(int n);

// All triples meeting X (|X| = x_size >= n/3) plus Y-internal triples kept
// with probability `noise`. Never deletes, so min codegree stays >= x_size.
LabeledInstance covered_extremal(int n, int x_size, double noise, std::uint64_t seed);

struct IdealCaseStats {
    int deleted = 0;
    long long max_missing_per_x = 0;       // max over x of missing Z-pairs
    long long max_damaged_partners = 0;    // max over u in Z of partners v with a missing X-extension
    double realized_rho_x = 0.0;
    double realized_rho_pair = 0.0;
    int attempts = 1;
};

// Partition X u Z with |Z| = 2|X| = 2n/3; starts from all (1 X, 2 Z)
// triples and deletes X-extensions at random, subject to:
//   - every x in X keeps all but <= rho * C(|Z|,2) of its Z-pairs,
//   - every u in Z has <= floor(rho |Z|) partners v with a missing extension,
//     and those damaged pairs lose <= floor(rho |X|) extensions... except a
//     small quota of fully-bad pairs charged to both endpoints' budgets.
// The generator re-checks both hypothesis bounds by enumeration and retries
// with a derived seed; failure after max attempts throws.
LabeledInstance ideal_case_instance(int n, double rho, std::uint64_t seed,
                                    IdealCaseStats* stats = nullptr);

// Each triple present independently with probability p.
LabeledInstance random_3graph(int n, double p, std::uint64_t seed);

// Barrier block on [0, n - clique_size) glued to a disjoint complete block;
// probe family for the t-disjoint-copies experiments.
LabeledInstance barrier_plus_clique(int n, int x_size, int clique_size);

}  // namespace loosetile
