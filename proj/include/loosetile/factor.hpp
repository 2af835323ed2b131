#pragma once

#include <cstdint>
#include <string>

#include "loosetile/cycles.hpp"
#include "loosetile/hypergraph.hpp"

namespace loosetile {

// Vertex-disjoint copies plus their covered vertex set (sorted).
struct Tiling {
    std::vector<CycleCopy> copies;
    std::vector<Vertex> covered;

    static Tiling from_copies(std::vector<CycleCopy> copies);

    std::size_t size() const { return copies.size(); }
};

struct Matching3 {
    std::vector<Triple> edges;  // pairwise disjoint

    std::vector<Vertex> covered() const;
};

enum class SearchStatus { Found, None, Budget };

struct FactorResult {
    SearchStatus status = SearchStatus::None;
    Tiling tiling;               // meaningful when Found
    bool exhaustive = false;     // None backed by a completed search
    std::uint64_t nodes = 0;
    std::string reason;          // set for immediate rejections, e.g. "divisibility"
};

// Perfect tiling search: exact cover by spanning 6-sets, branching on the
// lowest uncovered vertex. Time budget in ms; <= 0 means unlimited.
FactorResult find_factor(const Hypergraph3& h, std::int64_t budget_ms = -1);
FactorResult find_factor_within(const Hypergraph3& h, const std::vector<Vertex>& allowed,
                                std::int64_t budget_ms = -1);

struct MaxTilingResult {
    Tiling tiling;
    bool optimal = false;  // maximum proven (search ran to completion)
    std::uint64_t nodes = 0;
};

MaxTilingResult max_tiling(const Hypergraph3& h, std::int64_t budget_ms = -1);

// Exactly t vertex-disjoint copies, or None (exhaustive) / Budget.
FactorResult find_t_disjoint(const Hypergraph3& h, int t, std::int64_t budget_ms = -1);

struct VerifyResult {
    bool ok = false;
    std::string diagnostic;  // names the first violation
};

// Independent checker: edge membership is re-tested by binary search on the
// sorted edge list, sharing nothing with the solvers.
VerifyResult verify_tiling(const Hypergraph3& h, const Tiling& t, bool require_perfect);

enum class MatchingMode { Greedy, Exact };

struct MatchingResult {
    Matching3 matching;
    bool optimal = false;  // Exact mode: maximum proven
    std::uint64_t nodes = 0;
};

MatchingResult max_matching3(const Hypergraph3& h, MatchingMode mode, std::int64_t budget_ms = -1);
MatchingResult max_matching3_within(const Hypergraph3& h, const std::vector<Vertex>& allowed,
                                    MatchingMode mode, std::int64_t budget_ms = -1);

}  // namespace loosetile
