#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "loosetile/constructions.hpp"
#include "loosetile/extremal.hpp"

using namespace loosetile;

namespace {

std::vector<Vertex> vrange(int lo, int hi) {
    std::vector<Vertex> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

}  // namespace

TEST_CASE("minimize_eB") {
    auto cov = covered_extremal(12, 4, 0.0, 0);
    // Y with one X vertex swapped in
    std::vector<Vertex> b0 = vrange(5, 12);
    b0.insert(b0.begin(), 0);
    auto b = minimize_eB(cov.h, b0);
    CHECK(edge_counts(cov.h, {b}) == 0);

    std::vector<Vertex> y = vrange(4, 12);
    CHECK(minimize_eB(cov.h, y) == y);  // already optimal, unchanged

    // complete host: every 8-set induces C(8,3) = 56; no move helps
    auto any = vrange(0, 8);
    auto kept = minimize_eB(complete3(12), any);
    CHECK(kept == any);
    CHECK(edge_counts(complete3(12), {kept}) == 56);

    CHECK_THROWS_AS(minimize_eB(complete3(12), vrange(0, 7)), std::invalid_argument);
}

TEST_CASE("swap-local optimum inherits the eB claim") {
    // at a local optimum: a light outside vertex forces all of B light
    for (std::uint64_t seed : {1, 3, 5}) {
        auto inst = covered_extremal(18, 6, 0.15, seed);
        auto b = minimize_eB(inst.h, vrange(6, 18));
        auto cls = classify(inst.h, b, 0.2);
        std::set<Vertex> bset(b.begin(), b.end());
        std::set<Vertex> bprime(cls.bprime.begin(), cls.bprime.end());
        bool outside_light = false;
        for (Vertex v = 0; v < 18; ++v)
            if (!bset.count(v) && bprime.count(v)) outside_light = true;
        if (outside_light)
            for (Vertex v : b) CHECK(bprime.count(v));
    }
}

TEST_CASE("classify") {
    auto cov = covered_extremal(24, 8, 0.0, 0);
    auto cls = classify(cov.h, vrange(8, 24), 0.2);
    CHECK(cls.aprime == vrange(0, 8));
    CHECK(cls.bprime == vrange(8, 24));
    CHECK(cls.v0.empty());
    CHECK(cls.q1 == 0);
    CHECK(cls.q == 0);
    CHECK(cls.a_minus_aprime == 0);
    CHECK(cls.bprime_minus_b == 0);

    auto all = classify(complete3(12), vrange(0, 8), 0.1);
    CHECK(all.bprime.empty());
    CHECK(all.aprime == vrange(0, 12));

    CHECK_THROWS_AS(classify(complete3(12), vrange(0, 8), 0.6), std::invalid_argument);
}

TEST_CASE("cover_and_balance on the clean instance is a no-op") {
    auto cov = covered_extremal(24, 8, 0.0, 0);
    auto cls = classify(cov.h, vrange(8, 24), 0.2);
    auto r = cover_and_balance(cov.h, cls);
    REQUIRE(r.ok);
    CHECK(r.q1_tiling.copies.empty());
    CHECK(r.q2_tiling.copies.empty());
    CHECK(r.r_tiling.copies.empty());
    CHECK(r.a2 == vrange(0, 8));
    CHECK(r.b2 == vrange(8, 24));
    CHECK(r.s == 0);
}

TEST_CASE("cover_and_balance burns a surplus A vertex through R") {
    // one extra X vertex: |B'| = 19 = 2n/3 - 1, q = -1, s = 1
    auto cov = covered_extremal(30, 11, 0.0, 0);
    std::vector<Vertex> b = vrange(11, 30);
    b.push_back(10);  // fill B up to 20 with one X vertex
    std::sort(b.begin(), b.end());
    auto cls = classify(cov.h, b, 0.2);
    CHECK(cls.q == -1);
    CHECK(cls.q1 == 0);
    auto r = cover_and_balance(cov.h, cls);
    REQUIRE(r.ok);
    CHECK(r.s == 1);
    REQUIRE(r.r_tiling.copies.size() == 1);
    const auto& copy = r.r_tiling.copies[0];
    int in_a = 0;
    for (Vertex v : copy.vertex_array()) in_a += v < 11;
    CHECK(in_a == 3);  // pattern (3,3) over (A', B')
    CHECK(is_cycle_copy(cov.h, copy));
    CHECK(2 * r.a2.size() == r.b2.size());
}

TEST_CASE("cover_and_balance covers a V0 vertex through Q1") {
    // promote one Y vertex into V0 by adding half of its Y pairs
    auto cov = covered_extremal(24, 8, 0.0, 0);
    std::vector<Triple> edges = cov.h.edges();
    Vertex star = 8;  // first Y vertex
    int toggle = 0;
    for (Vertex a = 9; a < 24; ++a)
        for (Vertex b = a + 1; b < 24; ++b)
            if (++toggle % 2 == 0) edges.push_back({star, a, b});
    Hypergraph3 h(24, edges);

    auto cls = classify(h, vrange(8, 24), 0.2);
    REQUIRE(cls.v0 == std::vector<Vertex>{star});
    CHECK(cls.q == -1);  // B' lost the promoted vertex
    auto r = cover_and_balance(h, cls);
    REQUIRE(r.ok);
    REQUIRE(r.q1_tiling.copies.size() == 1);
    const auto& q1copy = r.q1_tiling.copies[0];
    auto vs = q1copy.vertex_array();
    CHECK(std::count(vs.begin(), vs.end(), star) == 1);
    int in_aprime = 0, in_bprime = 0;
    std::set<Vertex> bprime(cls.bprime.begin(), cls.bprime.end());
    for (Vertex v : vs) {
        if (v < 8) ++in_aprime;
        if (bprime.count(v)) ++in_bprime;
    }
    CHECK(in_aprime == 1);
    CHECK(in_bprime == 4);
    CHECK(verify_tiling(h, r.q1_tiling, false).ok);
    CHECK(2 * r.a2.size() == r.b2.size());
}

TEST_CASE("cover_and_balance burns a surplus B vertex through Q2") {
    // 7 heavy vertices {0..6} behind all their triples, plus 17 light
    // vertices carrying a bounded-degree pair cover (difference families
    // over Z_17), so every pair keeps codegree >= 8 while 17 > 2n/3
    // vertices classify light
    int n = 24;
    std::set<Triple> edges;
    for (Vertex a = 0; a < 7; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c) edges.insert({a, b, c});
    for (int d : {1, 3, 4, 5})
        for (int i = 0; i < 17; ++i) {
            Triple t{static_cast<Vertex>(7 + i), static_cast<Vertex>(7 + (i + d) % 17),
                     static_cast<Vertex>(7 + (i + 2 * d) % 17)};
            std::sort(t.begin(), t.end());
            edges.insert(t);
        }
    Hypergraph3 h(n, std::vector<Triple>(edges.begin(), edges.end()));
    REQUIRE(min_codegree(h).value == 8);

    auto cls = classify(h, vrange(8, 24), 0.2);
    CHECK(cls.q == 1);  // B' = all 17 light vertices
    CHECK(cls.q1 == 0);
    CHECK(cls.aprime == vrange(0, 7));
    REQUIRE(std::count(cls.bprime.begin(), cls.bprime.end(), 7) == 1);

    auto r = cover_and_balance(h, cls);
    REQUIRE(r.ok);
    CHECK(r.q2 == 1);
    REQUIRE(r.q2_tiling.copies.size() == 1);
    std::set<Vertex> aprime(cls.aprime.begin(), cls.aprime.end());
    std::set<Vertex> bprime(cls.bprime.begin(), cls.bprime.end());
    int in_a = 0, in_b = 0;
    for (Vertex v : r.q2_tiling.copies[0].vertex_array()) {
        in_a += aprime.count(v);
        in_b += bprime.count(v);
    }
    CHECK(in_a == 1);
    CHECK(in_b == 5);
    CHECK(verify_tiling(h, r.q2_tiling, false).ok);
    CHECK(2 * r.a2.size() == r.b2.size());

    // the full pipeline rejects this host at the size-diagnostics gate:
    // a surplus light vertex is a discrepancy the bound cannot absorb at n=24
    auto full = extremal_solve(h, 0.01);
    CHECK_FALSE(full.ok);
    CHECK(full.trace.failure_stage == "classification");
}

TEST_CASE("ideal_factor on generated ideal instances") {
    auto clean = ideal_case_instance(12, 0.0, 0);
    auto r = ideal_factor(clean.h, clean.designated.at("X"), clean.designated.at("Z"), 0.0, 0, 64);
    REQUIRE(r.ok);
    CHECK(r.attempts == 1);
    CHECK(verify_tiling(clean.h, r.tiling, true).ok);

    auto inst = ideal_case_instance(48, 0.01, 7);
    auto xs = inst.designated.at("X");
    auto r2 = ideal_factor(inst.h, xs, inst.designated.at("Z"), 0.01, 7, 64);
    REQUIRE(r2.ok);
    CHECK(verify_tiling(inst.h, r2.tiling, true).ok);
    // every copy realizes the chain pattern: two X vertices, one a link
    // (in two edges) and one an inner (in one edge), each edge 1 X + 2 Z
    std::set<Vertex> xset(xs.begin(), xs.end());
    for (const auto& c : r2.tiling.copies) {
        int links_in_x = 0, inners_in_x = 0;
        for (Vertex v : c.links) links_in_x += xset.count(v);
        for (Vertex v : c.inners) inners_in_x += xset.count(v);
        CHECK(links_in_x == 1);
        CHECK(inners_in_x == 1);
        for (const auto& e : c.edge_triples()) {
            int in_x = 0;
            for (Vertex v : e) in_x += xset.count(v);
            CHECK(in_x == 1);
        }
    }
}

TEST_CASE("ideal_factor survives real deletions") {
    // chunky rho: the generator actually removes extensions, so the good-pair
    // graph and Gamma are genuinely incomplete
    for (std::uint64_t seed : {1, 2, 3}) {
        IdealCaseStats st;
        auto inst = ideal_case_instance(48, 0.15, seed, &st);
        REQUIRE(st.deleted > 0);
        auto r = ideal_factor(inst.h, inst.designated.at("X"), inst.designated.at("Z"), 0.15,
                              seed, 64);
        REQUIRE(r.ok);
        CHECK(verify_tiling(inst.h, r.tiling, true).ok);
    }
}

TEST_CASE("ideal_factor failure is staged") {
    std::vector<Vertex> x = vrange(0, 4), z = vrange(4, 12);
    auto r = ideal_factor(Hypergraph3(12, {}), x, z, 0.0, 0, 8);
    CHECK_FALSE(r.ok);
    CHECK(r.attempts == 8);
    REQUIRE_FALSE(r.failure_stages.empty());
    CHECK(r.failure_stages[0] == "G has isolated vertices");

    CHECK_THROWS_AS(ideal_factor(complete3(12), vrange(0, 3), vrange(3, 9), 0.0, 0, 4),
                    std::invalid_argument);  // |X| odd
}

TEST_CASE("extremal_solve end to end") {
    auto cov = covered_extremal(24, 8, 0.0, 0);
    auto r = extremal_solve(cov.h, 0.01);
    REQUIRE(r.ok);
    CHECK(verify_tiling(cov.h, r.tiling, true).ok);
    CHECK(r.trace.eps1_clamped);  // 8 sqrt(24 eps) > 0.24 at eps = 0.01

    auto noisy = covered_extremal(48, 16, 0.002, 11);
    REQUIRE(edge_counts(noisy.h, {noisy.designated.at("Y")}) <= 0.001 * 48 * 48 * 48);
    auto r2 = extremal_solve(noisy.h, 0.001);
    REQUIRE(r2.ok);
    CHECK(verify_tiling(noisy.h, r2.tiling, true).ok);
}

TEST_CASE("extremal_solve rejections") {
    auto barrier = space_barrier(12);
    CHECK_THROWS_AS(extremal_solve(barrier.h, 0.01), std::invalid_argument);  // delta2 = 3 < 4
    CHECK_THROWS_AS(extremal_solve(complete3(12), 0.2), std::invalid_argument);  // eps >= 1/24
    CHECK_THROWS_AS(extremal_solve(complete3(13), 0.01), std::invalid_argument);  // divisibility
}

TEST_CASE("extremal_solve honors a caller-supplied B") {
    auto cov = covered_extremal(24, 8, 0.0, 0);
    ExtremalOptions opts;
    opts.b0 = vrange(8, 24);
    auto r = extremal_solve(cov.h, 0.01, opts);
    REQUIRE(r.ok);
    CHECK(r.trace.b == vrange(8, 24));
}
