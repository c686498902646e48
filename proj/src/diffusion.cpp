#include "hyperflow/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hyperflow {

namespace {

double pow_general(double v, double e) {
    if (e == 1.0) return v;
    if (e == 2.0) return v * v;
    return std::pow(v, e);
}

} // namespace

void DiffusionConfig::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("config: sigma must be > 0");
    if (!(p >= 2.0)) throw std::invalid_argument("config: p must be >= 2");
    if (!(support_eps > 0.0)) throw std::invalid_argument("config: support_eps must be > 0");
    if (max_iters < 0) throw std::invalid_argument("config: max_iters must be >= 0");
    if (subgradient_iters < 1) throw std::invalid_argument("config: subgradient_iters must be >= 1");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

SourceVector make_source(const Hypergraph& h, const NodeSet& seeds, double total_mass) {
    if (seeds.empty()) throw std::invalid_argument("make_source: empty seed set");
    if (!(total_mass > 0.0)) throw std::invalid_argument("make_source: total_mass must be > 0");
    for (NodeId v : seeds) {
        if (v >= h.num_nodes()) throw std::invalid_argument("make_source: seed out of range");
        if (h.degree(v) <= 0.0)
            throw std::invalid_argument("make_source: seed node has zero degree");
    }
    SourceVector src;
    src.seeds = seeds;
    src.total_mass = total_mass;
    src.delta.assign(h.num_nodes(), 0.0);
    if (seeds.size() == 1) {
        src.delta[*seeds.begin()] = total_mass;
        return src;
    }
    double vol = h.volume(seeds);
    for (NodeId v : seeds) src.delta[v] = h.degree(v) * total_mass / vol;
    return src;
}

double primal_objective(const Hypergraph& h, std::span<const double> phi,
                        std::span<const double> z, const DiffusionConfig& cfg) {
    double p = cfg.p;
    double flow = 0.0;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        if (phi[e] != 0.0) flow += h.theta(e) * pow_general(phi[e], p);
    }
    double excess = 0.0;
    for (NodeId v = 0; v < h.num_nodes(); ++v) {
        if (z[v] != 0.0) excess += h.degree(v) * pow_general(z[v], p);
    }
    return flow / p + cfg.sigma * excess / p;
}

double dual_objective(const Hypergraph& h, const CutCost& w, std::span<const double> delta,
                      std::span<const double> x, const DiffusionConfig& cfg) {
    double q = cfg.q();
    double linear = 0.0, node_cost = 0.0;
    for (NodeId v = 0; v < h.num_nodes(); ++v) {
        if (x[v] != 0.0) {
            linear += (delta[v] - h.degree(v)) * x[v];
            node_cost += h.degree(v) * pow_general(x[v], q);
        }
    }
    double edge_cost = 0.0;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        double f = lovasz_global(w, h.edge(e), x);
        if (f != 0.0) edge_cost += h.theta(e) * pow_general(f, q);
    }
    return linear - edge_cost / q - cfg.sigma * node_cost / q;
}

void recover_dual(const Hypergraph& h, std::span<const double> r,
                  std::span<const double> delta, const DiffusionConfig& cfg,
                  std::span<double> z_out, std::span<double> x_out) {
    int32_t n = h.num_nodes();
    std::vector<double> net(delta.begin(), delta.end());
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        auto nodes = h.edge(e);
        int64_t off = h.edge_offset(e);
        for (size_t i = 0; i < nodes.size(); ++i) net[nodes[i]] -= h.theta(e) * r[off + i];
    }
    for (NodeId v = 0; v < n; ++v) {
        double ex = net[v] - h.degree(v);
        double z = ex > 0.0 ? ex / (cfg.sigma * h.degree(v)) : 0.0;
        z_out[v] = z;
        x_out[v] = (cfg.p == 2.0) ? z : pow_general(z, cfg.p - 1.0);
    }
}

double duality_gap(const Hypergraph& h, const CutCost& w, const SourceVector& src,
                   const DiffusionState& state, const DiffusionConfig& cfg) {
    return primal_objective(h, state.phi, state.z, cfg) -
           dual_objective(h, w, src.delta, state.x, cfg);
}

LocalityReport check_locality(const Hypergraph& h, const DiffusionState& state,
                              const SourceVector& src, double support_eps) {
    LocalityReport rep{};
    for (NodeId v = 0; v < h.num_nodes(); ++v) {
        if (state.x[v] > support_eps) rep.support_volume += h.degree(v);
    }
    for (double d : src.delta) rep.source_mass += std::abs(d);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        if (state.phi[e] > support_eps) rep.active_edge_theta += h.theta(e);
    }
    rep.volume_bounded = rep.support_volume <= rep.source_mass;
    rep.edges_bounded = rep.active_edge_theta <= rep.support_volume;
    return rep;
}

namespace {

struct ActiveSolver {
    const Hypergraph& h;
    const CutCost& w;
    const SourceVector& src;
    const DiffusionConfig& cfg;
    ProjectionOptions opts;

    DiffusionState st;
    std::vector<uint8_t> edge_active;
    std::vector<uint8_t> node_touched;
    std::vector<NodeId> touched; // ascending insertion batches, order stable
    std::vector<double> net;     // Delta - sum theta r, maintained on touched nodes

    explicit ActiveSolver(const Hypergraph& hg, const CutCost& cost, const SourceVector& source,
                          const DiffusionConfig& config)
        : h(hg), w(cost), src(source), cfg(config) {
        opts.subgradient_iters = cfg.subgradient_iters;
        opts.bisect_tol = cfg.bisect_tol;
        int32_t n = h.num_nodes();
        st.phi.assign(h.num_edges(), 0.0);
        st.r.assign(h.total_pins(), 0.0);
        st.s.assign(h.total_pins(), 0.0);
        st.z.assign(n, 0.0);
        st.x.assign(n, 0.0);
        st.excess.assign(n, 0.0);
        edge_active.assign(h.num_edges(), 0);
        node_touched.assign(n, 0);
        net.assign(n, 0.0);
    }

    void touch(NodeId v) {
        if (!node_touched[v]) {
            node_touched[v] = 1;
            touched.push_back(v);
            net[v] = src.delta[v];
        }
    }

    // Activates edges incident to nodes with positive excess; returns true if
    // the active set grew.
    bool activate_from_excess() {
        std::vector<EdgeId> fresh;
        for (NodeId v : touched) {
            if (st.excess[v] <= 0.0) continue;
            for (EdgeId e : h.incident(v)) {
                if (!edge_active[e]) {
                    edge_active[e] = 1;
                    fresh.push_back(e);
                }
            }
        }
        if (fresh.empty()) return false;
        std::sort(fresh.begin(), fresh.end());
        fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
        for (EdgeId e : fresh) {
            for (NodeId v : h.edge(e)) touch(v);
        }
        std::vector<EdgeId> merged;
        merged.reserve(st.active_edges.size() + fresh.size());
        std::merge(st.active_edges.begin(), st.active_edges.end(), fresh.begin(), fresh.end(),
                   std::back_inserter(merged));
        st.active_edges = std::move(merged);
        return true;
    }

    void compute_excess() {
        for (NodeId v : touched) {
            double ex = net[v] - h.degree(v);
            st.excess[v] = ex > 0.0 ? ex : 0.0;
        }
    }

    void update_z_x() {
        double pm1 = cfg.p - 1.0;
        for (NodeId v : touched) {
            double z = st.excess[v] > 0.0 ? st.excess[v] / (cfg.sigma * h.degree(v)) : 0.0;
            st.z[v] = z;
            st.x[v] = (cfg.p == 2.0) ? z : pow_general(z, pm1);
        }
    }

    void apply_s_step() {
        for (EdgeId e : st.active_edges) {
            auto nodes = h.edge(e);
            int64_t off = h.edge_offset(e);
            for (size_t i = 0; i < nodes.size(); ++i) {
                st.s[off + i] = st.r[off + i] + st.excess[nodes[i]] / h.degree(nodes[i]);
            }
        }
    }

    void project_range(size_t lo, size_t hi, std::vector<double>& scratch) {
        for (size_t idx = lo; idx < hi; ++idx) {
            EdgeId e = st.active_edges[idx];
            auto nodes = h.edge(e);
            int64_t off = h.edge_offset(e);
            size_t k = nodes.size();
            std::span<const double> s_e(st.s.data() + off, k);
            std::span<double> r_new(scratch.data(), k);
            double phi_new = project_edge(w, nodes, s_e, cfg.sigma, cfg.p, opts, r_new);
            std::span<const double> r_old(st.r.data() + off, k);
            double obj_new = edge_objective(s_e, r_new, phi_new, cfg.sigma, cfg.p);
            double obj_old = edge_objective(s_e, r_old, st.phi[e], cfg.sigma, cfg.p);
            // Block minimization must never move uphill; inexact sub-solvers
            // keep the previous point when they fail to improve it.
            if (obj_new <= obj_old) {
                std::copy(r_new.begin(), r_new.end(), st.r.begin() + off);
                st.phi[e] = phi_new;
            }
        }
    }

    void flow_step() {
        size_t m = st.active_edges.size();
        int nthreads = cfg.threads;
        if (nthreads <= 1 || m < 64) {
            std::vector<double> scratch(64);
            project_range(0, m, scratch);
            return;
        }
        size_t chunk = (m + nthreads - 1) / nthreads;
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) {
            size_t lo = t * chunk;
            size_t hi = std::min(m, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([this, lo, hi] {
                std::vector<double> scratch(64);
                project_range(lo, hi, scratch);
            });
        }
        for (auto& th : pool) th.join();
    }

    void reduce_net() {
        for (NodeId v : touched) net[v] = src.delta[v];
        for (EdgeId e : st.active_edges) {
            auto nodes = h.edge(e);
            int64_t off = h.edge_offset(e);
            double th = h.theta(e);
            for (size_t i = 0; i < nodes.size(); ++i) net[nodes[i]] -= th * st.r[off + i];
        }
    }

    double primal_now() const {
        double p = cfg.p;
        double flow = 0.0;
        for (EdgeId e : st.active_edges) flow += h.theta(e) * pow_general(st.phi[e], p);
        double excess_cost = 0.0;
        for (NodeId v : touched) {
            if (st.z[v] != 0.0) excess_cost += h.degree(v) * pow_general(st.z[v], p);
        }
        return flow / p + cfg.sigma * excess_cost / p;
    }

    double dual_now() const {
        double q = cfg.q();
        double linear = 0.0, node_cost = 0.0;
        for (NodeId v : touched) {
            if (st.x[v] != 0.0) {
                linear += (src.delta[v] - h.degree(v)) * st.x[v];
                node_cost += h.degree(v) * pow_general(st.x[v], q);
            }
        }
        double edge_cost = 0.0;
        for (EdgeId e : st.active_edges) {
            double f = lovasz_global(w, h.edge(e), st.x);
            if (f != 0.0) edge_cost += h.theta(e) * pow_general(f, q);
        }
        return linear - edge_cost / q - cfg.sigma * node_cost / q;
    }

    int32_t support_count() const {
        int32_t c = 0;
        for (NodeId v : touched) {
            if (st.x[v] > cfg.support_eps) ++c;
        }
        return c;
    }

    void record(int32_t iter) {
        double primal = primal_now();
        double dual = dual_now();
        double gap = primal - dual;
        st.trace.push_back({iter, primal, dual, gap, support_count()});
        st.final_gap_rel = gap / std::max(1.0, std::abs(primal));
    }

    DiffusionState run() {
        for (NodeId v = 0; v < h.num_nodes(); ++v) {
            if (src.delta[v] != 0.0) touch(v);
        }
        compute_excess();
        bool any_excess = false;
        for (NodeId v : touched) any_excess |= st.excess[v] > 0.0;
        if (!any_excess) {
            st.status = SolveStatus::Trivial;
            st.trace.push_back({0, 0.0, 0.0, 0.0, 0});
            return std::move(st);
        }
        activate_from_excess();
        apply_s_step();
        update_z_x();
        record(0);

        int32_t stall_count = 0;
        for (int32_t iter = 1; iter <= cfg.max_iters; ++iter) {
            st.iterations = iter;
            flow_step();
            reduce_net();
            compute_excess();
            activate_from_excess();
            apply_s_step();
            update_z_x();
            record(iter);

            if (st.final_gap_rel <= cfg.gap_tol) {
                st.status = SolveStatus::GapConverged;
                return std::move(st);
            }
            const auto& tr = st.trace;
            double change = std::abs(tr[tr.size() - 1].primal - tr[tr.size() - 2].primal);
            if (change <= cfg.stall_tol * std::max(1.0, std::abs(tr.back().primal))) {
                if (++stall_count >= cfg.stall_iters) {
                    st.status = SolveStatus::Stalled;
                    return std::move(st);
                }
            } else {
                stall_count = 0;
            }
        }
        st.status = SolveStatus::IterLimit;
        return std::move(st);
    }
};

} // namespace

DiffusionState am_solve(const Hypergraph& h, const CutCost& w, const SourceVector& src,
                        const DiffusionConfig& cfg) {
    cfg.validate();
    if (static_cast<int32_t>(src.delta.size()) != h.num_nodes())
        throw std::invalid_argument("am_solve: source size mismatch");
    for (EdgeId e = 0; e < h.num_edges(); ++e) w.check_edge_size(h.edge_size(e));
    if (w.kind() != CutCost::Kind::Unit && cfg.p != 2.0)
        throw std::invalid_argument("am_solve: p > 2 is only supported with the unit cut-cost");
    ActiveSolver solver(h, w, src, cfg);
    return solver.run();
}

} // namespace hyperflow
