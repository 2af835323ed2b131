#pragma once

#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "loosetile/hypergraph.hpp"

namespace loosetile {

// i_P(S): per-part intersection sizes; coordinate sum = |S|.
struct IndexVector {
    std::vector<int> coords;

    auto operator<=>(const IndexVector&) const = default;

    int sum() const {
        int s = 0;
        for (int c : coords) s += c;
        return s;
    }

    std::string str() const;
};

// Ordered partition {V_1, ..., V_r} of [0, n).
class Partition {
public:
    Partition() = default;
    Partition(int n, std::vector<std::vector<Vertex>> parts);

    static Partition trivial(int n);  // single part [0, n)

    int vertex_count() const { return n_; }
    int part_count() const { return static_cast<int>(parts_.size()); }
    const std::vector<std::vector<Vertex>>& parts() const { return parts_; }
    const std::vector<Vertex>& part(int i) const { return parts_[i]; }
    int part_of(Vertex v) const { return part_of_[v]; }

    IndexVector index_vector(std::span<const Vertex> s) const;

private:
    int n_ = 0;
    std::vector<std::vector<Vertex>> parts_;
    std::vector<int> part_of_;
};

IndexVector index_vector(const Partition& p, std::span<const Vertex> s);

// Text format: header "part <n> <r>", then r lines of space-separated
// vertex ids forming a partition of [0, n).
Partition parse_part(std::istream& in);
Partition parse_part(const std::string& text);
std::string serialize_part(const Partition& p);

}  // namespace loosetile
