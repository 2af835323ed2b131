#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "loosetile/cycles.hpp"
#include "loosetile/hypergraph.hpp"
#include "loosetile/partition.hpp"

namespace loosetile {

// Part indices in all reports below are 1-based (V_1 ... V_r).

struct SamplingInfo {
    std::uint64_t samples = 0;
    std::map<IndexVector, std::uint64_t> hits;  // sampled 6-sets carrying >= 1 copy
    std::map<IndexVector, double> variance;     // variance of the count estimator
    std::map<IndexVector, std::pair<double, double>> wilson;  // 95% interval, hit fraction
};

struct RobustReport {
    int arity = 3;  // 3: edge vectors, 6: cycle-copy vectors
    long long threshold = 1;
    bool exhaustive = false;
    std::map<IndexVector, long long> counts;
    std::optional<SamplingInfo> sampling;  // present when arity-6 fell back to sampling

    std::vector<IndexVector> robust_set() const;  // counts >= threshold
};

struct RobustBudget {
    std::uint64_t max_copies = 4'000'000;  // exhaustive-enumeration cap for arity 6
    std::uint64_t samples = 200'000;       // 6-set samples when the cap is exceeded
    std::uint64_t seed = 0;
};

// Arity 3 tallies every edge (always exhaustive). Arity 6 enumerates copies
// up to the budget cap, then falls back to uniform 6-set sampling with the
// counts scaled by C(n,6).
RobustReport robust_vectors(const Hypergraph3& h, const Partition& p, int arity,
                            long long threshold, const RobustBudget& budget = {});

struct Transferral {
    IndexVector base;  // base and base + u_i - u_j are both robust
    int i = 0;
    int j = 0;
};

// Lexicographically first (base, i, j); requires an arity-6 report.
std::optional<Transferral> find_transferral(const RobustReport& report);

// Smallest part index i with count(v2 + u_i) >= threshold over edge vectors.
std::optional<int> vector_completion(const Hypergraph3& h, const Partition& p,
                                     const IndexVector& v2, long long threshold);

struct ReachParams {
    int depth = 1;            // reachability layer; only depth 1 is implemented
    long long threshold = 1;  // witness count standing in for the density bound
};

struct ReachableResult {
    long long count = 0;  // distinct verified 5-sets, capped at cap
    bool complete = false;
    std::vector<std::array<Vertex, 5>> witnesses;  // first few, sorted sets
};

// Counts 5-sets S such that both S+{x} and S+{y} span a copy, generated by
// the common-link-pair construction: pick {a,b} with xab and yab both edges,
// then u, then v in N(a,u) and w in N(b,u). Every candidate is re-verified
// through is_cycle_copy on both sides. `exclude` masks forbidden vertices.
ReachableResult reachable_5sets(const Hypergraph3& h, Vertex x, Vertex y, std::uint64_t cap,
                                const Bitset* exclude = nullptr, std::size_t witness_cap = 4);

struct ClosedPartitionResult {
    Partition partition;                  // r <= 3, parts ordered by least vertex
    std::vector<long long> min_witness;   // per part: least capped pair count inside
    bool degenerate = false;              // parts were force-merged to reach r <= 3
};

// Connected components of the pair graph {xy : reachable_5sets >= threshold},
// merged smallest-first down to at most 3 parts. Depth-1 reachability only;
// the output is a heuristic carrying its witness counts.
ClosedPartitionResult closed_partition(const Hypergraph3& h, const ReachParams& params);

struct OddCopyResult {
    std::optional<CycleCopy> copy;
    bool exhaustive = false;
    std::uint64_t examined = 0;
};

// A copy meeting A in an odd number of vertices, or not-found-within-budget.
OddCopyResult odd_intersection_copy(const Hypergraph3& h, const std::vector<Vertex>& a,
                                    std::uint64_t budget);
OddCopyResult odd_intersection_copy_within(const Hypergraph3& h, const Bitset& a_mask,
                                           const Bitset& allowed, std::uint64_t budget);

// Pairs S with i_P(S) = vprime and deg(S, V_k) < gamma_abs. k is 1-based.
std::vector<std::pair<Vertex, Vertex>> good_pairs(const Hypergraph3& h, const Partition& p,
                                                  const IndexVector& vprime, int k,
                                                  long long gamma_abs);

// Total pairs with the given 2-vector (for obtaining the bad count).
long long pair_count_with_vector(const Partition& p, const IndexVector& vprime);

}  // namespace loosetile
