#pragma once

#include <cstdint>
#include <vector>

#include "hyperflow/cutcost.hpp"
#include "hyperflow/hypergraph.hpp"

namespace hyperflow {

// Two-block k-uniform hypergraph stochastic block model. A size-k subset is a
// hyperedge with probability p when it lies inside one block, and q_j when the
// smaller side of the block split has cardinality j (1 <= j <= floor(k/2)).
struct HsbmParams {
    int32_t k = 3;
    int32_t n = 100;
    int32_t block_a = 0; // 0 means n/2
    int32_t block_b = 0;
    double p = 0.0;
    std::vector<double> q; // length floor(k/2)
    uint64_t rng_seed = 1;
    bool shuffle_labels = false; // default: block 0 = nodes 0..block_a-1

    void validate() const;
};

struct HsbmResult {
    Hypergraph graph;
    std::vector<int32_t> labels; // block id per node
};

HsbmResult hsbm_generate(const HsbmParams& params);

// Expected-graph conductance of one block for two equal blocks with
// q = (q1, 0, ..., 0), computed combinatorially.
double hsbm_expected_conductance(int32_t k, int32_t n, double p, double q1,
                                 const CutCost& cost);

// Bisection on q1 so the expected-graph block conductance matches the target
// within 1e-3. Throws if the target is outside the achievable range.
double hsbm_calibrate_q(int32_t k, int32_t n, double p, double target_conductance,
                        const CutCost& cost);

} // namespace hyperflow
