#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "loosetile/factor.hpp"
#include "loosetile/hypergraph.hpp"

namespace loosetile {

// Degree-into-B classification of all vertices, with the size diagnostics
// the pipeline gates on.
struct Classification {
    std::vector<Vertex> aprime, bprime, v0;
    double eps1 = 0.0;
    long long q1 = 0;  // |V0|
    long long q = 0;   // |B'| - 2n/3
    long long a_minus_aprime = 0;
    long long b_minus_bprime = 0;
    long long aprime_minus_a = 0;
    long long bprime_minus_b = 0;
};

struct CoverBalanceResult {
    bool ok = false;
    Tiling q1_tiling;  // copies: 1 A' + 1 V0 + 4 B'
    Tiling q2_tiling;  // copies: 1 A' + 5 B'
    Tiling r_tiling;   // copies: 3 A_1 + 3 B_1
    std::vector<Vertex> a2, b2;
    long long s = 0;
    long long q2 = 0;
    std::string failure;  // stage + stuck vertex when !ok
};

struct IdealFactorResult {
    bool ok = false;
    Tiling tiling;
    int attempts = 0;
    std::vector<std::string> failure_stages;  // one entry per failed attempt
};

struct PipelineTrace {
    std::vector<Vertex> b_seed, b;
    long long eb = -1;
    double eps = 0.0, eps1 = 0.0, rho = 0.0;
    bool eps1_clamped = false, rho_clamped = false;
    Classification cls;
    CoverBalanceResult cover;
    IdealFactorResult ideal;
    std::string failure_stage;  // empty on success
    std::string failure_detail;
};

struct ExtremalResult {
    bool ok = false;
    Tiling tiling;
    PipelineTrace trace;
};

struct ExtremalOptions {
    std::optional<std::vector<Vertex>> b0;  // caller-supplied B seed
    std::uint64_t seed = 0;
    int max_attempts = 64;
    std::int64_t minimize_budget_ms = 30000;
};

// Single-swap hill climb on e(B); |B0| must be 2n/3.
std::vector<Vertex> minimize_eB(const Hypergraph3& h, std::vector<Vertex> b0,
                                std::int64_t budget_ms = -1);

// A' = heavy-into-B vertices, B' = light, V0 = rest; eps1 < 1/2.
Classification classify(const Hypergraph3& h, const std::vector<Vertex>& b, double eps1);

// Q1/Q2/R tilings: cover V0, burn off the B' surplus (or deficit via R)
// until 2|A2| = |B2|. Needs codegree >= n/3 for the Q2 matching.
CoverBalanceResult cover_and_balance(const Hypergraph3& h, const Classification& cls);

// Perfect factor on X u Z via chained matchings in the good-pair graph and a
// Hall matching between X-pairs and Z-chains; resamples the random split on
// failure, up to max_attempts.
IdealFactorResult ideal_factor(const Hypergraph3& h, const std::vector<Vertex>& x,
                               const std::vector<Vertex>& z, double rho, std::uint64_t seed,
                               int max_attempts);

// End-to-end: minimize e(B), classify, cover and balance, ideal factor.
// Requires n = 0 mod 6 and min codegree >= n/3.
ExtremalResult extremal_solve(const Hypergraph3& h, double eps, const ExtremalOptions& opts = {});

}  // namespace loosetile
