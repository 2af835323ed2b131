#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "loosetile/factor.hpp"
#include "loosetile/lattice.hpp"
#include "loosetile/partition.hpp"

namespace loosetile {

struct AbsorbConfig {
    int t = 1;                 // reachability depth; m = 36 t
    double p = 0.0;            // m-set selection probability; <= 0 draws max_candidates
    double gamma1 = 0.1;       // family-density parameter; alpha = gamma1^2
    std::uint64_t seed = 0;
    std::uint64_t max_candidates = 64;
    int max_retries = 8;
    std::int64_t factor_budget_ms = 5000;  // per inner factor search
    std::uint64_t odd_budget = 4'000'000;  // exceptional-copy scan budget
    int probes_per_class = 2;              // probe 6-sets per class when tagging

    int m() const { return 36 * t; }
    double alpha() const { return gamma1 * gamma1; }
};

// One constructive absorbing m-set for a specific 6-set S.
struct MsetForS {
    std::vector<Vertex> vertices;
    Tiling factor_alone;   // factor of H[A]
    Tiling factor_with_s;  // factor of H[A u S]
};

struct MsetsForResult {
    std::vector<MsetForS> msets;
    std::string note;  // set when none can exist, e.g. "insufficient vertices"
};

// Absorbing m-sets for S, built as a copy F with i_P(F) = i_P(S) plus one
// reachable (6t-1)-set per vertex pair (x_i, y_i). S must have an all-even
// index vector.
MsetsForResult absorbing_msets_for(const Hypergraph3& h, const Partition& p,
                                   const std::vector<Vertex>& s, int t, std::size_t cap);

struct AbsorbingMset {
    std::vector<Vertex> vertices;      // sorted, size m
    std::vector<IndexVector> classes;  // even 6-set classes it absorbs
    Tiling factor;                     // stored factor of H[A]
};

struct AbsorbingFamily {
    Partition partition;
    AbsorbConfig cfg;
    std::vector<AbsorbingMset> msets;    // pairwise disjoint
    std::vector<CycleCopy> exceptional;  // F_0 (r = 2) or F_1, F_2 (r = 3)
    std::vector<Vertex> w;               // all family vertices, sorted
    Tiling w_factor;                     // stored factor of H[W]
};

struct FamilyStats {
    std::uint64_t sampled = 0;
    std::uint64_t intersecting_pairs = 0;   // recorded, not gated (see README)
    std::uint64_t dropped_intersecting = 0;
    std::uint64_t dropped_not_absorbing = 0;
    std::map<IndexVector, int> capacity;    // kept m-sets per even class
    int retries = 0;
};

struct FamilyBuildResult {
    bool ok = false;
    AbsorbingFamily family;
    FamilyStats stats;
    std::string error;
};

// Randomized family selection: sample round(p * C(n,m)) m-sets (capped),
// drop intersecting and non-absorbing ones, attach exceptional odd copies
// per the partition's part count, and retry with a derived seed until every
// realizable even class has capacity.
FamilyBuildResult build_absorbing_family(const Hypergraph3& h, const Partition& p,
                                         const AbsorbConfig& cfg);

struct AbsorbResult {
    bool ok = false;
    Tiling tiling;  // perfect tiling of W u U
    std::string error;
    int msets_consumed = 0;
};

// Parity-fix with the exceptional copies, split U into even 6-sets, absorb
// each with an unused m-set of its class.
AbsorbResult absorb(const Hypergraph3& h, const AbsorbingFamily& fam, const std::vector<Vertex>& u);

// Which subset of the exceptional copies makes every coordinate of
// u_parity + sum(chosen) even; indices into f_parities, empty-first order.
std::optional<std::vector<int>> choose_exceptional_subset(
    const std::vector<int>& u_parity, const std::vector<std::vector<int>>& f_parities);

// All even 6-vectors over r parts (coordinates sum to 6).
std::vector<IndexVector> even_six_vectors(int r);

}  // namespace loosetile
