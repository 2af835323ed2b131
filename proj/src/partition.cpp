#include "loosetile/partition.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace loosetile {

std::string IndexVector::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(coords[i]);
    }
    return s + ")";
}

Partition::Partition(int n, std::vector<std::vector<Vertex>> parts) : n_(n), parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("partition needs at least one part");
    part_of_.assign(n, -1);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        std::sort(parts_[i].begin(), parts_[i].end());
        for (Vertex v : parts_[i]) {
            if (v < 0 || v >= n) throw std::invalid_argument("partition vertex out of range");
            if (part_of_[v] != -1) throw std::invalid_argument("partition parts overlap at vertex " + std::to_string(v));
            part_of_[v] = static_cast<int>(i);
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (part_of_[v] == -1) throw std::invalid_argument("partition misses vertex " + std::to_string(v));
}

Partition Partition::trivial(int n) {
    std::vector<Vertex> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return Partition(n, {all});
}

IndexVector Partition::index_vector(std::span<const Vertex> s) const {
    IndexVector iv;
    iv.coords.assign(parts_.size(), 0);
    for (Vertex v : s) {
        if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
        ++iv.coords[part_of_[v]];
    }
    return iv;
}

IndexVector index_vector(const Partition& p, std::span<const Vertex> s) { return p.index_vector(s); }

Partition parse_part(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_content_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t i = line.find_first_not_of(" \t\r");
            if (i == std::string::npos) continue;
            if (line[i] == '#') continue;
            return true;
        }
        return false;
    };

    if (!next_content_line()) throw ParseError(lineno + 1, "missing header");
    std::istringstream hs(line);
    std::string magic;
    long long n = -1, r = -1;
    if (!(hs >> magic >> n >> r) || magic != "part" || n < 0 || r < 1)
        throw ParseError(lineno, "malformed header, expected 'part <n> <r>'");

    std::vector<std::vector<Vertex>> parts;
    for (long long i = 0; i < r; ++i) {
        if (!std::getline(in, line)) throw ParseError(lineno + 1, "unexpected end of input, expected " + std::to_string(r) + " parts");
        ++lineno;
        std::istringstream ps(line);
        std::vector<Vertex> part;
        long long v;
        while (ps >> v) {
            if (v < 0 || v >= n) throw ParseError(lineno, "vertex out of range");
            part.push_back(static_cast<Vertex>(v));
        }
        parts.push_back(std::move(part));
    }
    try {
        return Partition(static_cast<int>(n), std::move(parts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
    }
}

Partition parse_part(const std::string& text) {
    std::istringstream in(text);
    return parse_part(in);
}

std::string serialize_part(const Partition& p) {
    std::string out = "part " + std::to_string(p.vertex_count()) + " " + std::to_string(p.part_count()) + "\n";
    for (const auto& part : p.parts()) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(part[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace loosetile
