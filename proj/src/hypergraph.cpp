#include "loosetile/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace loosetile {

long long binom2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }
long long binom3(long long n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

void Hypergraph3::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
}

std::size_t Hypergraph3::pair_id(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("pair with repeated vertex");
    return static_cast<std::size_t>(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
}

Hypergraph3::Hypergraph3(int n, std::vector<Triple> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        if (e[0] == e[1] || e[1] == e[2]) throw std::invalid_argument("edge with repeated vertex");
        if (e[0] < 0 || e[2] >= n) throw std::invalid_argument("edge vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");
    edges_ = std::move(edges);

    links_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, Bitset(n));
    vdeg_.assign(n, 0);
    for (const auto& e : edges_) {
        links_[pair_id(e[0], e[1])].set(e[2]);
        links_[pair_id(e[0], e[2])].set(e[1]);
        links_[pair_id(e[1], e[2])].set(e[0]);
        for (Vertex v : e) ++vdeg_[v];
    }
}

bool Hypergraph3::has_edge(Vertex a, Vertex b, Vertex c) const {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) return false;
    if (t[0] < 0 || t[2] >= n_) return false;
    return links_[pair_id(t[0], t[1])].test(t[2]);
}

long long degree(const Hypergraph3& h, std::span<const Vertex> s) {
    if (s.size() == 1) {
        if (s[0] < 0 || s[0] >= h.vertex_count()) throw std::invalid_argument("vertex out of range");
        return h.vertex_degree(s[0]);
    }
    if (s.size() == 2) return h.pair_degree(s[0], s[1]);
    throw std::invalid_argument("degree takes a set of 1 or 2 vertices");
}

DegreeReport min_codegree(const Hypergraph3& h) {
    int n = h.vertex_count();
    if (n < 3) throw std::invalid_argument("min_codegree needs n >= 3");
    DegreeReport best;
    best.value = -1;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            long long d = h.pair_degree(u, v);
            if (best.value < 0 || d < best.value) {
                best.value = d;
                best.witness = {u, v};
            }
        }
    return best;
}

namespace {

Bitset to_bitset(int n, std::span<const Vertex> vs) {
    Bitset b(n);
    for (Vertex v : vs) {
        if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
        b.set(v);
    }
    return b;
}

}  // namespace

long long degree_into(const Hypergraph3& h, std::span<const Vertex> s, std::span<const Vertex> t) {
    int n = h.vertex_count();
    Bitset tb = to_bitset(n, t);
    for (Vertex v : s)
        if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
    if (s.size() == 2) {
        if (s[0] == s[1]) throw std::invalid_argument("pair with repeated vertex");
        tb.reset(s[0]);
        tb.reset(s[1]);
        return h.link(s[0], s[1]).intersect_count(tb);
    }
    if (s.size() == 1) {
        Vertex v = s[0];
        tb.reset(v);
        long long twice = 0;
        tb.for_each([&](int a) { twice += h.link(v, a).intersect_count(tb); });
        return twice / 2;
    }
    throw std::invalid_argument("degree_into takes a set of 1 or 2 vertices");
}

long long complement_degree(const Hypergraph3& h, std::span<const Vertex> s,
                            std::span<const Vertex> t) {
    int n = h.vertex_count();
    Bitset tb = to_bitset(n, t);
    for (Vertex v : s) tb.reset(v);
    long long avail = tb.count();
    long long d = degree_into(h, s, t);
    if (s.size() == 2) return avail - d;
    if (s.size() == 1) return binom2(avail) - d;
    throw std::invalid_argument("complement_degree takes a set of 1 or 2 vertices");
}

long long edge_counts(const Hypergraph3& h, const std::vector<std::vector<Vertex>>& parts) {
    if (parts.empty() || parts.size() > 3) throw std::invalid_argument("edge_counts takes 1 to 3 sets");
    int n = h.vertex_count();
    std::vector<Bitset> p;
    for (const auto& part : parts) p.push_back(to_bitset(n, part));
    while (p.size() < 3) p.push_back(p.back());

    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    long long count = 0;
    for (const auto& e : h.edges()) {
        for (const auto& pm : perms) {
            if (p[0].test(e[pm[0]]) && p[1].test(e[pm[1]]) && p[2].test(e[pm[2]])) {
                ++count;
                break;
            }
        }
    }
    return count;
}

Hypergraph3 parse_h3(std::istream& in) {
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
    long long n = -1, m = -1;
    if (!(hs >> magic >> n >> m) || magic != "h3" || n < 0 || m < 0)
        throw ParseError(lineno, "malformed header, expected 'h3 <n> <m>'");
    std::string rest;
    if (hs >> rest) throw ParseError(lineno, "malformed header, trailing content");

    std::vector<Triple> edges;
    edges.reserve(m);
    std::set<Triple> seen;
    for (long long k = 0; k < m; ++k) {
        if (!next_content_line()) throw ParseError(lineno + 1, "unexpected end of input, expected " + std::to_string(m) + " edges");
        std::istringstream es(line);
        long long a, b, c;
        if (!(es >> a >> b >> c)) throw ParseError(lineno, "malformed edge line");
        if (es >> rest) throw ParseError(lineno, "malformed edge line, trailing content");
        if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n)
            throw ParseError(lineno, "vertex out of range");
        if (!(a < b && b < c)) throw ParseError(lineno, "vertices must be strictly increasing");
        Triple t{static_cast<Vertex>(a), static_cast<Vertex>(b), static_cast<Vertex>(c)};
        if (!seen.insert(t).second) throw ParseError(lineno, "duplicate edge");
        edges.push_back(t);
    }
    if (next_content_line()) throw ParseError(lineno, "trailing content after edge list");
    return Hypergraph3(static_cast<int>(n), std::move(edges));
}

Hypergraph3 parse_h3(const std::string& text) {
    std::istringstream in(text);
    return parse_h3(in);
}

std::string serialize_h3(const Hypergraph3& h) {
    std::string out = "h3 " + std::to_string(h.vertex_count()) + " " + std::to_string(h.edge_count()) + "\n";
    for (const auto& e : h.edges()) {
        out += std::to_string(e[0]);
        out += ' ';
        out += std::to_string(e[1]);
        out += ' ';
        out += std::to_string(e[2]);
        out += '\n';
    }
    return out;
}

Hypergraph3 complete3(int n) {
    std::vector<Triple> edges;
    edges.reserve(static_cast<std::size_t>(binom3(n)));
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c) edges.push_back({a, b, c});
    return Hypergraph3(n, std::move(edges));
}

}  // namespace loosetile
