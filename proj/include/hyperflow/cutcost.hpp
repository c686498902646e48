#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hyperflow/hypergraph.hpp"

namespace hyperflow {

// Submodular hyperedge cut-cost w_e over subsets of a hyperedge, normalized so
// that max_S w_e(S) = 1 and w_e(empty) = w_e(e) = 0. Subsets are addressed
// either by size (size-symmetric models) or by a bitmask over the positions of
// the edge's node list (position-dependent models, |e| <= 16).
class CutCost {
public:
    enum class Kind { Unit, Cardinality, Motif4, Custom };

    virtual ~CutCost() = default;
    virtual Kind kind() const = 0;
    // True when w_e(S) depends only on |S| and |e|.
    virtual bool size_based() const = 0;
    virtual double eval_size(int edge_size, int subset_size) const;
    virtual double eval_mask(int edge_size, uint32_t mask) const;
    // 0 = any size accepted.
    virtual int required_edge_size() const { return 0; }

    // w_e(S ∩ e) for a node set over the full graph.
    double evaluate(std::span<const NodeId> edge, const NodeSet& s) const;

    void check_edge_size(int edge_size) const;
};

std::shared_ptr<const CutCost> make_unit_cost();
std::shared_ptr<const CutCost> make_cardinality_cost();
// Fig.-style four-node motif cost on ordered pairs ({v1,v2},{v3,v4}):
// singletons -> gamma1, within-pair split -> gamma2, cross split -> 1,
// symmetric under complement. gamma1, gamma2 in [0, 1].
std::shared_ptr<const CutCost> make_motif4_cost(double gamma1, double gamma2);
// Explicit table over all 2^k subsets, indexed by position bitmask.
std::shared_ptr<const CutCost> make_custom_cost(int edge_size, std::vector<double> table);

double motif4_gamma1(const CutCost& w);
double motif4_gamma2(const CutCost& w);

// Divides a raw table by its maximum; returns the normalized cost and the
// normalization constant theta. Throws if the table is all-zero or invalid.
std::pair<std::shared_ptr<const CutCost>, double>
normalize_custom_table(int edge_size, std::vector<double> raw_table);

// Greedy linear maximization over the base polytope of w_e: sorts the nodes of
// e by y descending (ties by ascending node index) and assigns marginal gains.
// rho is written positionally (aligned with `edge`); returns rho . y, the
// Lovász extension value f_e(y).
double greedy_max_base(const CutCost& w, std::span<const NodeId> edge,
                       std::span<const double> y_local, std::span<double> rho_out);

// f_e(y) without materializing rho.
double lovasz(const CutCost& w, std::span<const NodeId> edge,
              std::span<const double> y_local);

// Lovász extension at the restriction of a full node vector x to the edge.
double lovasz_global(const CutCost& w, std::span<const NodeId> edge,
                     std::span<const double> x_full);

struct SubmodularityWitness {
    uint32_t set_a;
    uint32_t set_b;
    double violation;
};

// Exhaustive submodularity verification over all subset pairs; |e| <= 12.
std::optional<SubmodularityWitness> check_submodular(const CutCost& w, int edge_size);

} // namespace hyperflow
