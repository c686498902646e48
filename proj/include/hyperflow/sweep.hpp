#pragma once

#include <span>
#include <vector>

#include "hyperflow/cutcost.hpp"
#include "hyperflow/hypergraph.hpp"

namespace hyperflow {

struct SweepRow {
    double threshold;
    int32_t size;
    double volume;
    double cut;
    double conductance;
};

struct SweepResult {
    std::vector<SweepRow> profile; // thresholds descending
    NodeSet best;
    double best_conductance = 0.0;
};

// Conductance of a node set: sum_e theta_e w_e(S) / min(vol(S), vol(V\S)).
// Requires a proper nonempty S with positive volume on both sides.
double conductance(const Hypergraph& h, const CutCost& w, const NodeSet& s);

// Evaluates the conductance profile over the level sets S_h = {v : x_v >= h}
// for every distinct positive value h of x; returns the minimizing set.
// Degenerate level sets (zero volume on either side) are skipped.
SweepResult sweep_cut(const Hypergraph& h, const CutCost& w, std::span<const double> x);

struct EvalScores {
    double precision;
    double recall;
    double f1;
};

EvalScores f1_scores(const NodeSet& pred, const NodeSet& truth);

// Nodes with positive x, sorted by x descending (ties by ascending index).
std::vector<NodeId> rank_nodes(std::span<const double> x, const NodeSet* exclude = nullptr);

struct AssumptionReport {
    double alpha;              // vol(S ∩ C) / vol(C)
    double beta;               // vol(S ∩ C) / vol(S)
    double target_conductance; // Phi(C)
    double sigma_bound;        // beta * Phi(C) / 3
    bool mass_ok;              // delta >= 3 / alpha
    bool sigma_ok;             // sigma <= beta * Phi(C) / 3
};

AssumptionReport check_assumptions(const Hypergraph& h, const CutCost& w,
                                   const NodeSet& seeds, const NodeSet& target,
                                   double sigma, double delta);

} // namespace hyperflow
