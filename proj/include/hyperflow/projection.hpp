#pragma once

#include <span>
#include <vector>

#include "hyperflow/cutcost.hpp"
#include "hyperflow/hypergraph.hpp"

namespace hyperflow {

// Per-hyperedge sub-problem of the flow step: given a shifted routing s_e and
// softness sigma, minimize (1/p) phi^p + (1/(p sigma^{p-1})) ||s_e - r_e||_p^p
// over r_e in phi * B_e. All solvers write r_e positionally (aligned with the
// edge's node list) and return phi_e. Outputs satisfy sum(r_e) = 0.

struct ProjectionOptions {
    int subgradient_iters = 500;
    double bisect_tol = 1e-10;
};

// Exact O(k log k) solver for the unit cut-cost at p = 2.
double project_unit_exact(std::span<const double> s, double sigma, std::span<double> r);

// Threshold solver for the unit cut-cost at p > 2 (also valid at p = 2, where
// it reduces to the exact path up to the bisection tolerance).
double project_unit_lp(std::span<const double> s, double sigma, double p,
                       double bisect_tol, std::span<double> r);

// Projected subgradient on the dual sub-problem; valid for any submodular
// cut-cost at p = 2. Step schedule (1/k) with normalized subgradient, iterates
// restricted to the hyperplane {y : sigma 1'y = 1's}.
double project_subgradient(const CutCost& w, std::span<const NodeId> edge,
                           std::span<const double> s, double sigma, int iters,
                           std::span<double> r);

// Exact solver for size-symmetric cut-costs (cardinality) at p = 2. The dual
// optimum is comonotone with s, so its level sets form consecutive blocks in
// sorted order; all 2^(k-1) block partitions are checked against the KKT
// system. Intended for |e| <= 12.
double project_size_based_exact(const CutCost& w, std::span<const double> s,
                                double sigma, std::span<double> r);

// Exhaustive candidate search for the four-node motif cost with
// (gamma1, gamma2) = (1/2, 0) at p = 2. Positions (0,1) and (2,3) are the two
// role pairs.
double project_motif4(std::span<const double> s, double sigma, std::span<double> r);

// Routes to the fastest applicable solver for (cut-cost, p); throws
// std::invalid_argument for unsupported combinations (p > 2 with a non-unit
// cut-cost).
double project_edge(const CutCost& w, std::span<const NodeId> edge,
                    std::span<const double> s, double sigma, double p,
                    const ProjectionOptions& opts, std::span<double> r);

// Value of the sub-problem objective at (phi, r); used for safeguarding and in
// tests.
double edge_objective(std::span<const double> s, std::span<const double> r,
                      double phi, double sigma, double p);

// Closed-form s-step over the whole hypergraph: s_e = r_e + A_e D^{-1} excess
// with excess = [Delta - sum_e theta_e r_e - d]_+. `r` and `s` are flat arrays
// aligned with the hypergraph pin layout (edge_offset(e) + position).
void s_step(const Hypergraph& h, std::span<const double> r,
            std::span<const double> delta, std::span<double> s,
            std::span<double> excess_out);

} // namespace hyperflow
