#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperflow/cutcost.hpp"
#include "hyperflow/hypergraph.hpp"
#include "hyperflow/projection.hpp"

namespace hyperflow {

struct DiffusionConfig {
    double sigma = 0.01;        // excess softness, > 0
    double p = 2.0;             // norm exponent, >= 2
    int32_t max_iters = 2000;
    double gap_tol = 1e-6;      // stop at relative duality gap <= gap_tol
    double support_eps = 1e-8;  // threshold for supp(.) accounting
    double seed_mass_factor = 3.0;
    int32_t subgradient_iters = 500;
    double bisect_tol = 1e-10;
    int32_t threads = 1;
    double stall_tol = 1e-10;   // objective-change fallback stop
    int32_t stall_iters = 10;

    double q() const { return p / (p - 1.0); }
    void validate() const;
};

struct SourceVector {
    std::vector<double> delta; // dense, supported on seeds
    NodeSet seeds;
    double total_mass = 0.0;
};

// Degree-proportional source: delta_v = d_v * total_mass / vol(seeds) on the
// seed set. A single seed receives the full mass exactly.
SourceVector make_source(const Hypergraph& h, const NodeSet& seeds, double total_mass);

enum class SolveStatus : int32_t {
    Trivial = 0,      // no excess anywhere, zero solution is optimal
    GapConverged = 1, // relative duality gap reached gap_tol
    Stalled = 2,      // objective change below stall_tol for stall_iters
    IterLimit = 3,
};

struct IterationStats {
    int32_t iter;
    double primal;
    double dual;
    double gap;
    int32_t support; // |supp_eps(x)|
};

struct DiffusionState {
    std::vector<double> phi;           // per edge
    std::vector<double> r;             // pin-aligned routings
    std::vector<double> s;             // pin-aligned shifted routings
    std::vector<double> z;             // per node excess control
    std::vector<double> x;             // per node dual embedding, x = z^{p-1}
    std::vector<double> excess;        // [Delta - sum theta r - d]_+
    std::vector<EdgeId> active_edges;  // ascending
    std::vector<IterationStats> trace;
    SolveStatus status = SolveStatus::Trivial;
    int32_t iterations = 0;
    double final_gap_rel = 0.0;

    bool converged() const {
        return status == SolveStatus::Trivial || status == SolveStatus::GapConverged ||
               status == SolveStatus::Stalled;
    }
};

DiffusionState am_solve(const Hypergraph& h, const CutCost& w, const SourceVector& src,
                        const DiffusionConfig& cfg);

double primal_objective(const Hypergraph& h, std::span<const double> phi,
                        std::span<const double> z, const DiffusionConfig& cfg);

double dual_objective(const Hypergraph& h, const CutCost& w, std::span<const double> delta,
                      std::span<const double> x, const DiffusionConfig& cfg);

double duality_gap(const Hypergraph& h, const CutCost& w, const SourceVector& src,
                   const DiffusionState& state, const DiffusionConfig& cfg);

// z = (1/sigma) D^{-1} [Delta - sum_e theta_e r_e - d]_+ and x = z^{p-1}.
void recover_dual(const Hypergraph& h, std::span<const double> r,
                  std::span<const double> delta, const DiffusionConfig& cfg,
                  std::span<double> z_out, std::span<double> x_out);

struct LocalityReport {
    double support_volume;    // vol(supp_eps(x))
    double source_mass;       // ||Delta||_1
    double active_edge_theta; // sum of theta over supp_eps(phi)
    bool volume_bounded;      // support_volume <= source_mass
    bool edges_bounded;       // active_edge_theta <= support_volume
};

LocalityReport check_locality(const Hypergraph& h, const DiffusionState& state,
                              const SourceVector& src, double support_eps);

} // namespace hyperflow
