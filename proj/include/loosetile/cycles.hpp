#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

#include "loosetile/hypergraph.hpp"
#include "loosetile/partition.hpp"

namespace loosetile {

// A loose 6-cycle: links l1,l2,l3 are the vertices shared by consecutive
// edges, inners sit between them. Edge set:
//   {l1, i12, l2}, {l2, i23, l3}, {l3, i31, l1}.
// Canonical form has links sorted ascending, which fixes one representative
// per edge set (rotations and the reflection are quotiented out).
struct CycleCopy {
    std::array<Vertex, 3> links;
    std::array<Vertex, 3> inners;  // i12, i23, i31

    std::array<Triple, 3> edge_triples() const;
    std::array<Vertex, 6> vertex_array() const;
    std::vector<Vertex> vertices() const;  // sorted

    bool operator==(const CycleCopy&) const = default;
};

CycleCopy canonical(const CycleCopy& c);

bool is_cycle_copy(const Hypergraph3& h, const CycleCopy& c);

// Complete 3-partite block with parts of size 2; all 8 cross triples are edges.
struct K332Copy {
    std::array<std::array<Vertex, 2>, 3> parts;

    std::array<Triple, 8> edge_triples() const;
    std::vector<Vertex> vertices() const;  // sorted
};

bool is_k332_copy(const Hypergraph3& h, const K332Copy& c);

// Visits every distinct-edge-set copy exactly once, links ascending, in
// lexicographic (links, inners) order. Visitor returns false to stop early.
// Returns true iff the enumeration ran to completion.
bool for_each_copy(const Hypergraph3& h, const std::function<bool(const CycleCopy&)>& visit);

// Same, restricted to copies whose 6 vertices all lie in `allowed`.
bool for_each_copy_within(const Hypergraph3& h, const Bitset& allowed,
                          const std::function<bool(const CycleCopy&)>& visit);

struct CopyFilter {
    const Partition* partition = nullptr;
    IndexVector vec;
};

struct EnumerationResult {
    std::vector<CycleCopy> copies;
    bool exhaustive = false;
};

// Up to cap copies, optionally restricted to a vertex-set index vector.
EnumerationResult enumerate_copies(const Hypergraph3& h, std::uint64_t cap,
                                   const CopyFilter* filter = nullptr);

// First copy spanning exactly the given 6 distinct vertices, if any.
std::optional<CycleCopy> spanning_copy(const Hypergraph3& h, const std::array<Vertex, 6>& six);

// All copies spanning exactly the given 6 vertices (at most 120).
void for_each_spanning_copy(const Hypergraph3& h, const std::array<Vertex, 6>& six,
                            const std::function<void(const CycleCopy&)>& visit);

struct K332Result {
    std::optional<K332Copy> copy;
    bool exhaustive = false;    // full scan finished; absence means nonexistence
    std::uint64_t examined = 0;  // candidate part-pair combinations tried
};

// Scans pairs in codegree-descending order, so dense hosts succeed early;
// running the scan to completion is an exhaustive existence proof.
K332Result find_k332(const Hypergraph3& h, std::uint64_t budget);

}  // namespace loosetile
