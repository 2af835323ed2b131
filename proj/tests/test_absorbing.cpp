#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "loosetile/absorbing.hpp"
#include "loosetile/constructions.hpp"

using namespace loosetile;

namespace {

std::vector<Vertex> vrange(int lo, int hi) {
    std::vector<Vertex> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

}  // namespace

TEST_CASE("even six-vector enumeration") {
    CHECK(even_six_vectors(1) == std::vector<IndexVector>{IndexVector{{6}}});
    auto r2 = even_six_vectors(2);
    CHECK(r2.size() == 4);  // (0,6),(2,4),(4,2),(6,0)
    CHECK(even_six_vectors(3).size() == 10);
}

TEST_CASE("exceptional parity fix, exhaustively over residue patterns") {
    // r = 1: the empty subset always works
    CHECK(choose_exceptional_subset({0}, {}).has_value());

    // r = 2 with F0 of parity (1,1): both residue patterns fixable
    for (auto up : {std::vector<int>{0, 0}, std::vector<int>{1, 1}}) {
        auto s = choose_exceptional_subset(up, {{1, 1}});
        REQUIRE(s.has_value());
    }

    // r = 3: F1, F2 parities are two distinct odd-pair patterns; every even-sum
    // residue of U must be fixable by one of the 4 subsets
    std::vector<std::vector<int>> pats{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    for (std::size_t a = 0; a < pats.size(); ++a)
        for (std::size_t b = 0; b < pats.size(); ++b) {
            if (a == b) continue;
            for (auto up : {std::vector<int>{0, 0, 0}, pats[0], pats[1], pats[2]}) {
                auto s = choose_exceptional_subset(up, {pats[a], pats[b]});
                REQUIRE(s.has_value());
            }
        }

    // missing exceptional copies leave odd residues unfixable
    CHECK_FALSE(choose_exceptional_subset({1, 1}, {}).has_value());
}

TEST_CASE("constructive absorbing m-sets for a 6-set") {
    Hypergraph3 k60 = complete3(60);
    Partition p = Partition::trivial(60);
    std::vector<Vertex> s{0, 1, 2, 3, 4, 5};
    auto res = absorbing_msets_for(k60, p, s, 1, 2);
    REQUIRE_FALSE(res.msets.empty());
    for (const auto& m : res.msets) {
        CHECK(m.vertices.size() == 36);
        std::set<Vertex> sv(s.begin(), s.end());
        for (Vertex v : m.vertices) CHECK_FALSE(sv.count(v));
        CHECK(verify_tiling(k60, m.factor_alone, false).ok);
        CHECK(m.factor_alone.covered == m.vertices);
        CHECK(verify_tiling(k60, m.factor_with_s, false).ok);
        std::vector<Vertex> both = m.vertices;
        both.insert(both.end(), s.begin(), s.end());
        std::sort(both.begin(), both.end());
        CHECK(m.factor_with_s.covered == both);
    }
}

TEST_CASE("m-set construction edge cases") {
    Partition p12 = Partition::trivial(12);
    auto small = absorbing_msets_for(complete3(12), p12, {0, 1, 2, 3, 4, 5}, 1, 1);
    CHECK(small.msets.empty());
    CHECK(small.note == "insufficient vertices");

    Partition p48 = Partition::trivial(48);
    auto empty = absorbing_msets_for(Hypergraph3(48, {}), p48, {0, 1, 2, 3, 4, 5}, 1, 1);
    CHECK(empty.msets.empty());
    CHECK(empty.note == "no absorbing m-set found");

    // odd index vector violates the precondition
    Partition halves(48, {vrange(0, 24), vrange(24, 48)});
    CHECK_THROWS_AS(absorbing_msets_for(complete3(48), halves, {0, 1, 2, 24, 25, 26}, 1, 1),
                    std::invalid_argument);
}

TEST_CASE("family build and absorb round trip on a complete host") {
    Hypergraph3 k120 = complete3(120);
    Partition p = Partition::trivial(120);
    AbsorbConfig cfg;
    cfg.t = 1;
    cfg.gamma1 = 0.1;
    cfg.seed = 7;
    cfg.max_candidates = 8;
    auto built = build_absorbing_family(k120, p, cfg);
    REQUIRE(built.ok);
    REQUIRE_FALSE(built.family.msets.empty());
    CHECK(verify_tiling(k120, built.family.w_factor, false).ok);
    CHECK(built.stats.capacity.at(IndexVector{{6}}) >= 1);

    // m-sets are pairwise disjoint and disjoint from the exceptional copies
    Bitset seen(120);
    for (const auto& m : built.family.msets)
        for (Vertex v : m.vertices) {
            CHECK_FALSE(seen.test(v));
            seen.set(v);
        }

    // absorb the empty set: the stored factor of W comes back
    auto none = absorb(k120, built.family, {});
    REQUIRE(none.ok);
    CHECK(none.tiling.covered == built.family.w);
    CHECK(none.msets_consumed == 0);

    // absorb a 6-set disjoint from W
    std::vector<Vertex> u;
    Bitset wmask(120);
    for (Vertex v : built.family.w) wmask.set(v);
    for (Vertex v = 0; v < 120 && u.size() < 6; ++v)
        if (!wmask.test(v)) u.push_back(v);
    auto r = absorb(k120, built.family, u);
    REQUIRE(r.ok);
    CHECK(r.msets_consumed <= static_cast<int>(u.size() / 6 + built.family.exceptional.size()));
    std::vector<Vertex> expect = built.family.w;
    expect.insert(expect.end(), u.begin(), u.end());
    std::sort(expect.begin(), expect.end());
    CHECK(r.tiling.covered == expect);
    CHECK(verify_tiling(k120, r.tiling, false).ok);
}

TEST_CASE("absorb preconditions") {
    Hypergraph3 k120 = complete3(120);
    AbsorbConfig cfg;
    cfg.seed = 3;
    cfg.max_candidates = 6;
    auto built = build_absorbing_family(k120, Partition::trivial(120), cfg);
    REQUIRE(built.ok);

    std::vector<Vertex> five;
    Bitset wmask(120);
    for (Vertex v : built.family.w) wmask.set(v);
    for (Vertex v = 0; v < 120 && five.size() < 5; ++v)
        if (!wmask.test(v)) five.push_back(v);
    CHECK_THROWS_AS(absorb(k120, built.family, five), std::invalid_argument);

    std::vector<Vertex> inw{built.family.w[0], built.family.w[1], built.family.w[2],
                            built.family.w[3], built.family.w[4], built.family.w[5]};
    CHECK_THROWS_AS(absorb(k120, built.family, inw), std::invalid_argument);

    // capacity: more 6-sets than m-sets
    std::vector<Vertex> big;
    for (Vertex v = 0; v < 120 && big.size() < 6 * (built.family.msets.size() + 1); ++v)
        if (!wmask.test(v)) big.push_back(v);
    if (big.size() == 6 * (built.family.msets.size() + 1)) {
        auto r = absorb(k120, built.family, big);
        CHECK_FALSE(r.ok);
        CHECK(r.error.find("capacity") != std::string::npos);
    }
}

TEST_CASE("two-part family carries one exceptional copy and absorbs") {
    Hypergraph3 k120 = complete3(120);
    Partition p(120, {vrange(0, 60), vrange(60, 120)});
    AbsorbConfig cfg;
    cfg.seed = 2;
    cfg.max_candidates = 8;
    auto built = build_absorbing_family(k120, p, cfg);
    REQUIRE(built.ok);
    REQUIRE(built.family.exceptional.size() == 1);
    auto f0 = built.family.exceptional[0].vertices();
    auto iv = p.index_vector(f0);
    CHECK(iv.coords[0] % 2 == 1);
    CHECK(iv.coords[1] % 2 == 1);

    // absorb a (4,2) 6-set: even vector, F' stays empty
    Bitset wmask(120);
    for (Vertex v : built.family.w) wmask.set(v);
    std::vector<Vertex> u;
    for (Vertex v : p.part(0))
        if (!wmask.test(v) && u.size() < 4) u.push_back(v);
    for (Vertex v : p.part(1))
        if (!wmask.test(v) && u.size() < 6) u.push_back(v);
    auto r = absorb(k120, built.family, u);
    REQUIRE(r.ok);
    CHECK(verify_tiling(k120, r.tiling, false).ok);
}

TEST_CASE("three-part family carries two exceptional copies") {
    Hypergraph3 k120 = complete3(120);
    Partition p(120, {vrange(0, 40), vrange(40, 80), vrange(80, 120)});
    AbsorbConfig cfg;
    cfg.seed = 11;
    cfg.max_candidates = 8;
    auto built = build_absorbing_family(k120, p, cfg);
    REQUIRE(built.ok);
    REQUIRE(built.family.exceptional.size() == 2);

    // the two parity classes are distinct odd pairs
    std::vector<std::vector<int>> pars;
    for (const auto& c : built.family.exceptional) {
        auto vs = c.vertices();
        auto iv = p.index_vector(vs);
        std::vector<int> par;
        int odd = 0;
        for (int x : iv.coords) {
            par.push_back(x % 2);
            odd += x % 2;
        }
        CHECK(odd == 2);
        pars.push_back(par);
    }
    CHECK(pars[0] != pars[1]);
    CHECK(verify_tiling(k120, built.family.w_factor, false).ok);

    // absorb an even-vector 6-set spread over all three parts
    Bitset wmask(120);
    for (Vertex v : built.family.w) wmask.set(v);
    std::vector<Vertex> u;
    for (int part = 0; part < 3; ++part) {
        int got = 0;
        for (Vertex v : p.part(part))
            if (!wmask.test(v) && got < 2) {
                u.push_back(v);
                ++got;
            }
        REQUIRE(got == 2);
    }
    std::sort(u.begin(), u.end());
    auto r = absorb(k120, built.family, u);
    REQUIRE(r.ok);
    CHECK(verify_tiling(k120, r.tiling, false).ok);
}

TEST_CASE("family precondition and missing exceptional copy") {
    AbsorbConfig cfg;
    CHECK_THROWS_AS(build_absorbing_family(complete3(60), Partition::trivial(60), cfg),
                    std::invalid_argument);  // n < 3m

    // two complete blocks with no cross edges: every copy has even
    // intersection with either block, so no F0 exists within any budget
    Hypergraph3 k60 = complete3(60);
    std::vector<Triple> edges;
    for (const auto& e : k60.edges()) {
        edges.push_back(e);
        edges.push_back({e[0] + 60, e[1] + 60, e[2] + 60});
    }
    Hypergraph3 blocks(120, edges);
    Partition p(120, {vrange(0, 60), vrange(60, 120)});
    AbsorbConfig cfg2;
    cfg2.odd_budget = 200'000;
    auto r = build_absorbing_family(blocks, p, cfg2);
    CHECK_FALSE(r.ok);
    CHECK(r.error.find("F0") != std::string::npos);
}
