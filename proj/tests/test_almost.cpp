#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loosetile/almost_tiling.hpp"
#include "loosetile/constructions.hpp"

using namespace loosetile;

namespace {

// matching is valid, disjoint, inside the host, and maximal
void check_matching(const Hypergraph3& h, const Matching3& m) {
    Bitset used(h.vertex_count());
    for (const auto& e : m.edges) {
        CHECK(h.has_edge(e[0], e[1], e[2]));
        for (Vertex v : e) {
            CHECK_FALSE(used.test(v));
            used.set(v);
        }
    }
    for (const auto& e : h.edges())
        CHECK((used.test(e[0]) || used.test(e[1]) || used.test(e[2])));
}

}  // namespace

TEST_CASE("dense host yields a matching") {
    auto r = almost_perfect_matching(complete3(11), 0.1, 0.2);
    REQUIRE(r.status == AlmostStatus::Matching);
    CHECK(r.matching.edges.size() == 3);
    check_matching(complete3(11), r.matching);
}

TEST_CASE("X-only host yields the zero certificate") {
    auto b = space_barrier(12);  // all edges touch X, e(Y) = 0
    auto r = almost_perfect_matching(b.h, 0.34, 0.05);
    REQUIRE(r.status == AlmostStatus::Certificate);
    CHECK(r.certificate.eb == 0);
    CHECK(static_cast<int>(r.certificate.b.size()) == 8);
    for (Vertex v : r.certificate.b) CHECK(v >= 3);  // B inside Y
    CHECK(edge_counts(b.h, {r.certificate.b}) == r.certificate.eb);
}

TEST_CASE("edgeless host yields the zero certificate") {
    auto r = almost_perfect_matching(Hypergraph3(12, {}), 0.34, 0.1);
    REQUIRE(r.status == AlmostStatus::Certificate);
    CHECK(r.certificate.eb == 0);
}

TEST_CASE("a failed certificate check surfaces as indeterminate") {
    // complete block plus isolated vertices: the matching stalls, no pair
    // clears the degree floor, and the padded set is far too dense for the
    // tiny gamma bound
    std::vector<Triple> edges;
    for (Vertex a = 0; a < 9; ++a)
        for (Vertex b = a + 1; b < 9; ++b)
            for (Vertex c = b + 1; c < 9; ++c) edges.push_back({a, b, c});
    Hypergraph3 h(12, edges);
    auto r = almost_perfect_matching(h, 0.001, 0.1);
    CHECK(r.status == AlmostStatus::Budget);
    CHECK(r.note.find("certificate inequality failed") != std::string::npos);
}

TEST_CASE("bad parameters are rejected") {
    CHECK_THROWS_AS(almost_perfect_matching(complete3(6), 0.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(almost_perfect_matching(complete3(6), 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("dichotomy: every outcome is self-certifying") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto inst = random_3graph(30, 0.12 + 0.03 * (seed % 4), seed);
        double gamma = 0.1, alpha = 0.2;
        auto r = almost_perfect_matching(inst.h, gamma, alpha, 30000);
        if (r.status == AlmostStatus::Matching) {
            check_matching(inst.h, r.matching);
            long long covered = 3 * static_cast<long long>(r.matching.edges.size());
            CHECK(static_cast<double>(30 - covered) <= alpha * 30);
        } else if (r.status == AlmostStatus::Certificate) {
            CHECK(static_cast<int>(r.certificate.b.size()) == 20);
            long long eb = edge_counts(inst.h, {r.certificate.b});
            CHECK(eb == r.certificate.eb);
            CHECK(static_cast<double>(eb) <= r.certificate.bound);
        }
        // Budget is the only other possibility; nothing is silently wrong
    }
}

TEST_CASE("two D-vertices on one matched edge trigger the direct augment") {
    // only edge avoiding {0,1} is (0,1,2) itself; 0 and 1 extend every
    // uncovered pair, so both land in D on the same matched edge
    std::vector<Triple> edges{{0, 1, 2}};
    for (Vertex a = 2; a < 24; ++a)
        for (Vertex b = a + 1; b < 24; ++b) {
            edges.push_back({0, a, b});
            edges.push_back({1, a, b});
        }
    Hypergraph3 h(24, edges);
    auto r = almost_perfect_matching(h, 0.5, 0.5);
    REQUIRE(r.status == AlmostStatus::Certificate);
    CHECK(r.iterations >= 2);  // the exchange loop made progress
    CHECK(r.certificate.eb == 0);
}

TEST_CASE("an edge inside V_D minus D rewires the matching") {
    // greedy matches (0,1,2) and (3,4,5); the planted edge (1,2,4) is
    // blocked at greedy time, D = {0,3}, and the exchange frees it
    std::vector<Triple> edges{{0, 1, 2}, {1, 2, 4}, {3, 4, 5}};
    for (Vertex a = 6; a < 18; a += 2) {
        edges.push_back({0, a, static_cast<Vertex>(a + 1)});
        edges.push_back({3, a, static_cast<Vertex>(a + 1)});
    }
    Hypergraph3 h(24, edges);
    auto r = almost_perfect_matching(h, 0.5, 0.5);
    REQUIRE(r.status == AlmostStatus::Certificate);
    CHECK(r.iterations >= 2);
    CHECK(static_cast<double>(r.certificate.eb) <= r.certificate.bound);
}

TEST_CASE("augmentation escapes a poor greedy start") {
    // covered-extremal hosts have perfect matchings through X, but greedy
    // lex matching stalls after consuming X three vertices at a time
    auto cov = covered_extremal(24, 8, 0.0, 0);
    auto r = almost_perfect_matching(cov.h, 0.4, 0.15, 30000);
    bool fine = (r.status == AlmostStatus::Matching &&
                 3 * r.matching.edges.size() >= static_cast<std::size_t>(24 * 0.85)) ||
                r.status == AlmostStatus::Certificate;
    CHECK(fine);
    if (r.status == AlmostStatus::Certificate)
        CHECK(static_cast<double>(r.certificate.eb) <= r.certificate.bound);
}
