#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hyperflow/diffusion.hpp"
#include "hyperflow/hsbm.hpp"
#include "hyperflow/sweep.hpp"

using namespace hyperflow;

namespace {

int64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    int64_t c = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

} // namespace

TEST_CASE("deterministic extremes: p=1, q=0 gives all intra edges") {
    HsbmParams params;
    params.k = 3;
    params.n = 20;
    params.p = 1.0;
    params.q = {0.0};
    params.rng_seed = 7;
    auto res = hsbm_generate(params);
    CHECK(res.graph.num_edges() == 2 * binom(10, 3));
    NodeSet block0 = NodeSet::of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(res.graph.cut_set(block0).empty());
    for (NodeId v = 0; v < 10; ++v) CHECK(res.labels[v] == 0);
    for (NodeId v = 10; v < 20; ++v) CHECK(res.labels[v] == 1);
}

TEST_CASE("generated hypergraphs are k-uniform and reproducible") {
    HsbmParams params;
    params.k = 4;
    params.n = 24;
    params.p = 0.15;
    params.q = {0.05, 0.02};
    params.rng_seed = 99;
    auto a = hsbm_generate(params);
    auto b = hsbm_generate(params);
    CHECK(a.graph.num_edges() == b.graph.num_edges());
    for (EdgeId e = 0; e < a.graph.num_edges(); ++e) {
        auto ea = a.graph.edge(e);
        auto eb = b.graph.edge(e);
        CHECK(std::vector<NodeId>(ea.begin(), ea.end()) ==
              std::vector<NodeId>(eb.begin(), eb.end()));
        CHECK(a.graph.edge_size(e) == 4);
    }

    params.rng_seed = 100;
    auto c = hsbm_generate(params);
    CHECK(c.graph.num_edges() != a.graph.num_edges()); // different draw
}

TEST_CASE("empirical class frequencies match the model probabilities") {
    // k = 4 with q = (0.01, 0): count edges per split class over repeated
    // draws and compare with the expected counts within Monte-Carlo error.
    HsbmParams params;
    params.k = 4;
    params.n = 24;
    params.p = 0.02;
    params.q = {0.01, 0.0};
    int64_t mono_total = 0, one_total = 0, two_total = 0;
    int draws = 200;
    for (int d = 0; d < draws; ++d) {
        params.rng_seed = 1000 + d;
        HsbmResult res;
        try {
            res = hsbm_generate(params);
        } catch (const std::runtime_error&) {
            continue; // empty draw (possible at these rates), counts stay 0
        }
        for (EdgeId e = 0; e < res.graph.num_edges(); ++e) {
            int in0 = 0;
            for (NodeId v : res.graph.edge(e)) in0 += res.labels[v] == 0 ? 1 : 0;
            int j = std::min(in0, 4 - in0);
            if (j == 0) ++mono_total;
            if (j == 1) ++one_total;
            if (j == 2) ++two_total;
        }
    }
    double n_mono = 2.0 * binom(12, 4) * draws;
    double n_one = 2.0 * binom(12, 1) * binom(12, 3) * draws;
    auto within = [](double count, double trials, double prob, double z) {
        double mean = trials * prob;
        double sd = std::sqrt(trials * prob * (1.0 - prob));
        return std::abs(count - mean) <= z * sd;
    };
    CHECK(within(static_cast<double>(mono_total), n_mono, params.p, 3.0));
    CHECK(within(static_cast<double>(one_total), n_one, params.q[0], 3.0));
    CHECK(two_total == 0);
}

TEST_CASE("q all equal reduces to the standard block model") {
    // With p = q the split classes are indistinguishable: every k-subset is
    // present with the same probability, so the edge count matches a single
    // binomial at the full C(n,k) count within Monte-Carlo error.
    HsbmParams params;
    params.k = 4;
    params.n = 16;
    params.p = 0.3;
    params.q = {0.3, 0.3};
    int64_t total = 0;
    int draws = 100;
    for (int d = 0; d < draws; ++d) {
        params.rng_seed = 500 + d;
        total += hsbm_generate(params).graph.num_edges();
    }
    double trials = static_cast<double>(binom(16, 4)) * draws;
    double mean = trials * 0.3;
    double sd = std::sqrt(trials * 0.3 * 0.7);
    CHECK(std::abs(static_cast<double>(total) - mean) <= 3.0 * sd);
}

TEST_CASE("expected intra-edge count anchor: p = 0.0765, k = 3") {
    HsbmParams params;
    params.k = 3;
    params.n = 100;
    params.p = 0.0765;
    params.q = {0.0041};
    params.rng_seed = 12345;
    auto res = hsbm_generate(params);
    int64_t intra0 = 0;
    for (EdgeId e = 0; e < res.graph.num_edges(); ++e) {
        int in0 = 0;
        for (NodeId v : res.graph.edge(e)) in0 += res.labels[v] == 0 ? 1 : 0;
        if (in0 == 3) ++intra0;
    }
    // ~1500 expected intra-cluster edges per block
    CHECK(std::abs(static_cast<double>(intra0) - 1500.0) <= 4.0 * std::sqrt(1500.0));
}

TEST_CASE("calibration hits the paper's clean and noisy regimes") {
    auto unit = make_unit_cost();
    CHECK(hsbm_calibrate_q(3, 100, 0.04, 0.0, *unit) == 0.0);

    // The fourth-set anchors: p = 0.04 with conductance 0.05 and 0.3
    // correspond to q near 0.001 and 0.011.
    double q_clean = hsbm_calibrate_q(3, 100, 0.04, 0.05, *unit);
    double q_noisy = hsbm_calibrate_q(3, 100, 0.04, 0.3, *unit);
    CHECK(q_clean == doctest::Approx(0.001).epsilon(0.1));
    CHECK(q_noisy == doctest::Approx(0.011).epsilon(0.1));
    CHECK(hsbm_expected_conductance(3, 100, 0.04, q_clean, *unit) ==
          doctest::Approx(0.05).epsilon(1e-6));

    // Realized conductance on a sampled instance stays near the target.
    for (double target : {0.05, 0.3}) {
        double q1 = hsbm_calibrate_q(3, 100, 0.0765, target, *unit);
        HsbmParams params;
        params.k = 3;
        params.n = 100;
        params.p = 0.0765;
        params.q = {q1};
        params.rng_seed = 777;
        auto res = hsbm_generate(params);
        std::vector<NodeId> ids(50);
        std::iota(ids.begin(), ids.end(), 0);
        double realized = conductance(res.graph, *unit, NodeSet::of(ids));
        CHECK(std::abs(realized - target) <= 0.05);
    }
}

TEST_CASE("calibration rejects targets beyond the achievable cap") {
    auto card = make_cardinality_cost();
    // cardinality conductance caps at 2/(k*floor(k/2)) = 0.25 for k = 4
    CHECK_THROWS_AS(hsbm_calibrate_q(4, 100, 0.0, 0.3, *card), std::invalid_argument);
    CHECK_NOTHROW(hsbm_calibrate_q(4, 100, 0.0, 0.2, *card));
}

TEST_CASE("conductance scale formula for boundary-only hypergraphs") {
    auto card = make_cardinality_cost();
    for (int k = 2; k <= 5; ++k) {
        HsbmParams params;
        params.k = k;
        params.n = 20;
        params.p = 0.0;
        params.q.assign(k / 2, 0.0);
        params.q[0] = 1.0;
        params.rng_seed = 3;
        auto res = hsbm_generate(params);
        std::vector<NodeId> ids(10);
        std::iota(ids.begin(), ids.end(), 0);
        double phi = conductance(res.graph, *card, NodeSet::of(ids));
        double expected = 2.0 / (k * (k / 2));
        CHECK(std::abs(phi - expected) <= 1e-12);
    }
}

TEST_CASE("diffusion seeded in a small block touches only its neighborhood") {
    // Small target block inside a larger graph: the working set must stay
    // well below the full node set and the mass bound must hold.
    auto unit = make_unit_cost();
    HsbmParams params;
    params.k = 3;
    params.n = 80;
    params.block_a = 16;
    params.p = 0.25;
    params.q = {0.002};
    params.rng_seed = 31;
    auto res = hsbm_generate(params);

    std::vector<NodeId> block(16);
    std::iota(block.begin(), block.end(), 0);
    NodeSet target = NodeSet::of(block);
    double mass = 3.0 * res.graph.volume(target);
    auto src = make_source(res.graph, NodeSet::of({0}), mass);
    DiffusionConfig cfg;
    cfg.sigma = 0.01;
    cfg.gap_tol = 1e-5;
    cfg.max_iters = 100000;
    auto st = am_solve(res.graph, *unit, src, cfg);
    CHECK(st.converged());

    auto rep = check_locality(res.graph, st, src, cfg.support_eps);
    CHECK(rep.volume_bounded);
    CHECK(rep.edges_bounded);
    // the working set stays a small fraction of the hypergraph
    CHECK(st.trace.back().support < res.graph.num_nodes() / 2);

    auto sweep = sweep_cut(res.graph, *unit, st.x);
    auto scores = f1_scores(sweep.best, target);
    CHECK(scores.f1 >= 0.9); // clean regime recovers the block from one seed
}
