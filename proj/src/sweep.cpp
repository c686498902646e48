#include "hyperflow/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyperflow {

double conductance(const Hypergraph& h, const CutCost& w, const NodeSet& s) {
    if (s.empty() || s.size() >= h.num_nodes())
        throw std::invalid_argument("conductance: S must be a proper nonempty subset");
    double vol = h.volume(s);
    double side = std::min(vol, h.total_volume() - vol);
    if (!(side > 0.0))
        throw std::invalid_argument("conductance: both sides must have positive volume");
    double cut = 0.0;
    for (EdgeId e : h.cut_set(s)) cut += h.theta(e) * w.evaluate(h.edge(e), s);
    return cut / side;
}

SweepResult sweep_cut(const Hypergraph& h, const CutCost& w, std::span<const double> x) {
    if (static_cast<int32_t>(x.size()) != h.num_nodes())
        throw std::invalid_argument("sweep_cut: size mismatch");
    std::vector<NodeId> order;
    for (NodeId v = 0; v < h.num_nodes(); ++v) {
        if (x[v] < 0.0) throw std::invalid_argument("sweep_cut: x must be nonnegative");
        if (x[v] > 0.0) order.push_back(v);
    }
    if (order.empty()) throw std::invalid_argument("sweep_cut: x is identically zero");
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (x[a] != x[b]) return x[a] > x[b];
        return a < b;
    });

    std::vector<uint8_t> member(h.num_nodes(), 0);
    std::vector<int32_t> inside(h.num_edges(), 0);
    std::vector<EdgeId> seen_edges; // incident to the growing set, ascending discovery
    std::vector<uint8_t> edge_seen(h.num_edges(), 0);

    SweepResult result;
    double vol = 0.0;
    double total = h.total_volume();
    double best = std::numeric_limits<double>::infinity();
    size_t best_size = 0;

    size_t i = 0;
    std::vector<NodeId> members;
    while (i < order.size()) {
        double level = x[order[i]];
        while (i < order.size() && x[order[i]] == level) {
            NodeId v = order[i];
            member[v] = 1;
            members.push_back(v);
            vol += h.degree(v);
            for (EdgeId e : h.incident(v)) {
                ++inside[e];
                if (!edge_seen[e]) {
                    edge_seen[e] = 1;
                    seen_edges.push_back(e);
                }
            }
            ++i;
        }
        double side = std::min(vol, total - vol);
        if (!(side > 0.0)) continue; // degenerate level set
        // Exact recomputation of the cut value over the boundary edges.
        double cut = 0.0;
        for (EdgeId e : seen_edges) {
            int32_t in = inside[e];
            int32_t k = h.edge_size(e);
            if (in == 0 || in == k) continue;
            if (w.size_based()) {
                cut += h.theta(e) * w.eval_size(k, in);
            } else {
                auto nodes = h.edge(e);
                uint32_t mask = 0;
                for (int32_t j = 0; j < k; ++j) {
                    if (member[nodes[j]]) mask |= 1u << j;
                }
                cut += h.theta(e) * w.eval_mask(k, mask);
            }
        }
        double cond = cut / side;
        result.profile.push_back({level, static_cast<int32_t>(members.size()), vol, cut, cond});
        if (cond < best) {
            best = cond;
            best_size = members.size();
        }
    }
    if (result.profile.empty())
        throw std::invalid_argument("sweep_cut: no admissible level set");
    result.best_conductance = best;
    result.best = NodeSet::of(std::vector<NodeId>(members.begin(), members.begin() + best_size));
    return result;
}

EvalScores f1_scores(const NodeSet& pred, const NodeSet& truth) {
    if (pred.empty() || truth.empty())
        throw std::invalid_argument("f1_scores: empty input set");
    double common = static_cast<double>(pred.intersect(truth).size());
    double precision = common / pred.size();
    double recall = common / truth.size();
    double f1 = (precision + recall) > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    return {precision, recall, f1};
}

std::vector<NodeId> rank_nodes(std::span<const double> x, const NodeSet* exclude) {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < static_cast<NodeId>(x.size()); ++v) {
        if (x[v] > 0.0 && (!exclude || !exclude->contains(v))) out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
        if (x[a] != x[b]) return x[a] > x[b];
        return a < b;
    });
    return out;
}

AssumptionReport check_assumptions(const Hypergraph& h, const CutCost& w,
                                   const NodeSet& seeds, const NodeSet& target,
                                   double sigma, double delta) {
    if (target.empty()) throw std::invalid_argument("check_assumptions: empty target");
    double vol_overlap = h.volume(seeds.intersect(target));
    double vol_target = h.volume(target);
    double vol_seeds = h.volume(seeds);
    AssumptionReport rep{};
    rep.alpha = vol_target > 0.0 ? vol_overlap / vol_target : 0.0;
    rep.beta = vol_seeds > 0.0 ? vol_overlap / vol_seeds : 0.0;
    rep.target_conductance = conductance(h, w, target);
    rep.sigma_bound = rep.beta * rep.target_conductance / 3.0;
    rep.mass_ok = rep.alpha > 0.0 && delta >= 3.0 / rep.alpha - 1e-12;
    rep.sigma_ok = sigma <= rep.sigma_bound + 1e-12;
    return rep;
}

} // namespace hyperflow
