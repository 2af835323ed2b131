#pragma once

#include <cstdint>
#include <string>

#include "loosetile/factor.hpp"
#include "loosetile/hypergraph.hpp"

namespace loosetile {

// Witness of extremality: a floor(2n/3)-set inducing few edges.
struct ExtremalCertificate {
    std::vector<Vertex> b;
    long long eb = 0;      // recomputed induced edge count
    double bound = 0.0;    // the gamma * n^3 threshold it satisfies
};

enum class AlmostStatus { Matching, Certificate, Budget };

struct AlmostResult {
    AlmostStatus status = AlmostStatus::Budget;
    Matching3 matching;              // Matching outcome: maximal, uncovered <= alpha*n
    ExtremalCertificate certificate; // Certificate outcome
    std::uint64_t iterations = 0;
    std::string note;                // which branch fired / why Budget
};

// Augment-or-certify: grow a maximal matching by the pair-system exchange
// until few vertices are uncovered, or emit a checked extremal certificate.
// Every output is self-certifying; Budget is the explicit third outcome.
AlmostResult almost_perfect_matching(const Hypergraph3& h, double gamma, double alpha,
                                     std::int64_t budget_ms = -1);

}  // namespace loosetile
