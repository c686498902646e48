#include <doctest.h>

#include <set>

#include "hyperflow/hypergraph.hpp"
#include "hyperflow/rng.hpp"
#include "hyperflow/sweep.hpp"

using namespace hyperflow;

namespace {

Hypergraph random_hypergraph(Rng& rng, int32_t n, int32_t m, int32_t max_size) {
    std::vector<std::vector<NodeId>> edges;
    while (static_cast<int32_t>(edges.size()) < m) {
        int32_t k = 2 + static_cast<int32_t>(rng.uniform_index(max_size - 1));
        std::vector<NodeId> e;
        while (static_cast<int32_t>(e.size()) < k) {
            NodeId v = static_cast<NodeId>(rng.uniform_index(n));
            if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
        }
        edges.push_back(std::move(e));
    }
    return Hypergraph::build(n, edges);
}

} // namespace

TEST_CASE("build computes degrees from incident weights") {
    Hypergraph h = Hypergraph::build(3, {{0, 1}, {1, 2}});
    CHECK(h.num_nodes() == 3);
    CHECK(h.num_edges() == 2);
    CHECK(h.degree(0) == doctest::Approx(1.0));
    CHECK(h.degree(1) == doctest::Approx(2.0));
    CHECK(h.degree(2) == doctest::Approx(1.0));

    std::vector<double> theta{2.0};
    Hypergraph weighted = Hypergraph::build(3, {{0, 1, 2}}, &theta);
    for (NodeId v = 0; v < 3; ++v) CHECK(weighted.degree(v) == doctest::Approx(2.0));
}

TEST_CASE("build drops singletons and errors on empty result") {
    Hypergraph h = Hypergraph::build(3, {{0}, {0, 1}, {2, 2, 2}});
    CHECK(h.num_edges() == 1);
    CHECK(h.dropped_singletons() == 2); // {0} and the collapsed {2,2,2}

    CHECK_THROWS_AS(Hypergraph::build(2, {{0}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph::build(2, {{0, 5}}), std::invalid_argument);
    std::vector<double> bad_theta{0.0};
    CHECK_THROWS_AS(Hypergraph::build(2, {{0, 1}}, &bad_theta), std::invalid_argument);
}

TEST_CASE("duplicate hyperedges count toward degrees") {
    Hypergraph h = Hypergraph::build(2, {{0, 1}, {0, 1}});
    CHECK(h.num_edges() == 2);
    CHECK(h.degree(0) == doctest::Approx(2.0));
}

TEST_CASE("volume basics") {
    Hypergraph h = Hypergraph::build(3, {{0, 1}, {1, 2}});
    CHECK(h.volume(NodeSet::of({})) == 0.0);
    CHECK(h.volume(NodeSet::of({0, 1, 2})) == doctest::Approx(4.0));
}

TEST_CASE("volume splits complement-additively") {
    Rng rng(7);
    Hypergraph h = random_hypergraph(rng, 14, 20, 5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<NodeId> ids;
        for (NodeId v = 0; v < 14; ++v) {
            if (rng.uniform() < 0.5) ids.push_back(v);
        }
        NodeSet s = NodeSet::of(ids);
        CHECK(h.volume(s) + h.volume(s.complement(14)) ==
              doctest::Approx(h.total_volume()).epsilon(1e-12));
    }
}

TEST_CASE("cut_set matches brute-force membership scan and is symmetric") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Hypergraph h = random_hypergraph(rng, 10, 12, 4);
        std::vector<NodeId> ids;
        for (NodeId v = 0; v < 10; ++v) {
            if (rng.uniform() < 0.4) ids.push_back(v);
        }
        NodeSet s = NodeSet::of(ids);

        std::set<EdgeId> expected;
        for (EdgeId e = 0; e < h.num_edges(); ++e) {
            bool in = false, out = false;
            for (NodeId v : h.edge(e)) (s.contains(v) ? in : out) = true;
            if (in && out) expected.insert(e);
        }
        auto got = h.cut_set(s);
        CHECK(std::set<EdgeId>(got.begin(), got.end()) == expected);
        auto comp = h.cut_set(s.complement(10));
        CHECK(std::set<EdgeId>(comp.begin(), comp.end()) == expected);
    }
    Hypergraph h = Hypergraph::build(3, {{0, 1}, {1, 2}});
    CHECK(h.cut_set(NodeSet::of({})).empty());
    CHECK(h.cut_set(NodeSet::of({0, 1, 2})).empty());
    CHECK(h.cut_set(NodeSet::of({0, 1})) == std::vector<EdgeId>{1});
}

TEST_CASE("conductance agrees with direct summation on random instances") {
    Rng rng(13);
    auto unit = make_unit_cost();
    for (int trial = 0; trial < 10; ++trial) {
        Hypergraph h = random_hypergraph(rng, 12, 16, 5);
        std::vector<NodeId> ids;
        for (NodeId v = 0; v < 12; ++v) {
            if (rng.uniform() < 0.5) ids.push_back(v);
        }
        if (ids.empty() || static_cast<int32_t>(ids.size()) == 12) continue;
        NodeSet s = NodeSet::of(ids);
        double cut = 0.0;
        for (EdgeId e = 0; e < h.num_edges(); ++e) {
            int inside = 0;
            for (NodeId v : h.edge(e)) inside += s.contains(v);
            if (inside > 0 && inside < h.edge_size(e)) cut += h.theta(e);
        }
        double denom = std::min(h.volume(s), h.total_volume() - h.volume(s));
        if (denom <= 0.0) continue;
        CHECK(conductance(h, *unit, s) == doctest::Approx(cut / denom).epsilon(1e-12));
    }
}

TEST_CASE("conductance rejects empty and full sets") {
    Hypergraph h = Hypergraph::build(3, {{0, 1}, {1, 2}});
    auto unit = make_unit_cost();
    CHECK_THROWS_AS(conductance(h, *unit, NodeSet::of({})), std::invalid_argument);
    CHECK_THROWS_AS(conductance(h, *unit, NodeSet::of({0, 1, 2})), std::invalid_argument);
    CHECK(conductance(h, *unit, NodeSet::of({0, 1})) == doctest::Approx(1.0)); // min side vol 1

    Hypergraph cycle = Hypergraph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(conductance(cycle, *unit, NodeSet::of({0, 1})) == doctest::Approx(0.5));
}

TEST_CASE("conductance on 2-uniform hypergraph equals graph conductance") {
    Rng rng(17);
    auto unit = make_unit_cost();
    for (int trial = 0; trial < 10; ++trial) {
        int32_t n = 8 + static_cast<int32_t>(rng.uniform_index(12));
        std::vector<std::vector<NodeId>> edges;
        for (NodeId a = 0; a < n; ++a) {
            for (NodeId b = a + 1; b < n; ++b) {
                if (rng.uniform() < 0.3) edges.push_back({a, b});
            }
        }
        if (edges.empty()) continue;
        Hypergraph h = Hypergraph::build(n, edges);
        std::vector<NodeId> ids;
        for (NodeId v = 0; v < n; ++v) {
            if (rng.uniform() < 0.5) ids.push_back(v);
        }
        if (ids.empty() || static_cast<int32_t>(ids.size()) == n) continue;
        NodeSet s = NodeSet::of(ids);

        // Independent plain-graph computation.
        double cut = 0.0, vol_s = 0.0, vol_rest = 0.0;
        for (auto& e : edges) cut += s.contains(e[0]) != s.contains(e[1]) ? 1.0 : 0.0;
        for (NodeId v = 0; v < n; ++v) {
            double deg = 0.0;
            for (auto& e : edges) deg += (e[0] == v || e[1] == v) ? 1.0 : 0.0;
            (s.contains(v) ? vol_s : vol_rest) += deg;
        }
        double denom = std::min(vol_s, vol_rest);
        if (denom <= 0.0) continue;
        CHECK(conductance(h, *unit, s) == doctest::Approx(cut / denom).epsilon(1e-12));
    }
}

TEST_CASE("isolated nodes are allowed but zero-volume sets are rejected") {
    Hypergraph h = Hypergraph::build(4, {{0, 1}, {1, 2}}); // node 3 isolated
    CHECK(h.degree(3) == 0.0);
    auto unit = make_unit_cost();
    CHECK_THROWS_AS(conductance(h, *unit, NodeSet::of({3})), std::invalid_argument);
}

TEST_CASE("names round through index lookup") {
    Hypergraph h = Hypergraph::build(3, {{0, 1}, {1, 2}});
    CHECK(h.name(1) == "1");
    CHECK(h.index_of("2") == 2);
    CHECK(h.index_of("7") == -1);
    h.set_names({"a", "b", "c"});
    CHECK(h.name(0) == "a");
    CHECK(h.index_of("c") == 2);
    CHECK(h.index_of("zz") == -1);
}

TEST_CASE("connected components") {
    Hypergraph h = Hypergraph::build(5, {{0, 1}, {2, 3}});
    CHECK(h.connected_components() == 3); // two edges + isolated node 4
}
