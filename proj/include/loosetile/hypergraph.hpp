#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loosetile/bitset.hpp"

namespace loosetile {

using Vertex = int;
using Triple = std::array<Vertex, 3>;  // stored strictly increasing

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

// Immutable 3-uniform hypergraph on vertices [0, n). Edges are kept as a
// sorted triple list; every unordered pair additionally carries its link
// neighborhood N(uv) as a bitset, so codegree queries are O(1) and
// set-restricted queries are word-parallel.
class Hypergraph3 {
public:
    Hypergraph3() = default;
    Hypergraph3(int n, std::vector<Triple> edges);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Triple>& edges() const { return edges_; }

    bool has_edge(Vertex a, Vertex b, Vertex c) const;

    // N(uv): third vertices completing an edge with the pair.
    const Bitset& link(Vertex u, Vertex v) const { return links_[pair_id(u, v)]; }

    long long vertex_degree(Vertex v) const { return vdeg_[v]; }
    long long pair_degree(Vertex u, Vertex v) const { return links_[pair_id(u, v)].count(); }

    std::size_t pair_id(Vertex u, Vertex v) const;

private:
    void check_vertex(Vertex v) const;

    int n_ = 0;
    std::vector<Triple> edges_;
    std::vector<Bitset> links_;
    std::vector<long long> vdeg_;
};

// deg(S) for |S| = 1 or 2: edges containing S.
long long degree(const Hypergraph3& h, std::span<const Vertex> s);

struct DegreeReport {
    long long value = 0;
    std::vector<Vertex> witness;
};

// Minimum codegree with a witness pair; requires n >= 3.
DegreeReport min_codegree(const Hypergraph3& h);

// deg(S, T): extensions of S inside T (third vertices for |S| = 2,
// unordered pairs for |S| = 1).
long long degree_into(const Hypergraph3& h, std::span<const Vertex> s, std::span<const Vertex> t);

// Missing-extension count: |T \ S| - deg for pairs, C(|T \ S|, 2) - deg for
// single vertices.
long long complement_degree(const Hypergraph3& h, std::span<const Vertex> s,
                            std::span<const Vertex> t);

// e(A_1, ..., A_k) for 1 to 3 sets: edges whose vertices can be assigned one
// per set. Shorter lists are padded by repeating the last set, so a single
// set gives the induced count e(H[A]).
long long edge_counts(const Hypergraph3& h, const std::vector<std::vector<Vertex>>& parts);

// Text format: header "h3 <n> <m>", then m lines "a b c" with
// 0 <= a < b < c < n; lines starting '#' and blank lines are skipped.
Hypergraph3 parse_h3(std::istream& in);
Hypergraph3 parse_h3(const std::string& text);
std::string serialize_h3(const Hypergraph3& h);

Hypergraph3 complete3(int n);

long long binom2(long long n);
long long binom3(long long n);

}  // namespace loosetile
