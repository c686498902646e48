#include "hyperflow.h"

#include <cstring>
#include <string>

#include "hyperflow/diffusion.hpp"
#include "hyperflow/hsbm.hpp"
#include "hyperflow/io.hpp"
#include "hyperflow/sweep.hpp"

namespace {

thread_local std::string g_last_error;

using hyperflow::CutCost;
using hyperflow::DiffusionConfig;
using hyperflow::DiffusionState;
using hyperflow::Hypergraph;
using hyperflow::NodeSet;
using hyperflow::SourceVector;
using hyperflow::SweepResult;

hfd_status fail(hfd_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename F>
hfd_status guarded(F&& fn) {
    try {
        fn();
        return HFD_OK;
    } catch (const std::invalid_argument& e) {
        return fail(HFD_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(HFD_ERR_DATA, e.what());
    } catch (const std::exception& e) {
        return fail(HFD_ERR_NUMERIC, e.what());
    }
}

NodeSet make_set(const int32_t* nodes, int32_t n) {
    if (n > 0 && !nodes) throw std::invalid_argument("null node array");
    return NodeSet::of(std::vector<int32_t>(nodes, nodes + n));
}

} // namespace

struct hfd_graph {
    Hypergraph impl;
};

struct hfd_cutcost {
    std::shared_ptr<const CutCost> impl;
};

struct hfd_diffusion {
    DiffusionState state;
    SourceVector source;
    double support_eps;
    const Hypergraph* graph;
};

struct hfd_sweep {
    SweepResult result;
};

extern "C" {

const char* hfd_last_error(void) { return g_last_error.c_str(); }

hfd_status hfd_graph_build(int32_t num_nodes, const int32_t* edge_nodes,
                           const int64_t* edge_offsets, int32_t num_edges,
                           const double* theta, hfd_graph** out) {
    return guarded([&] {
        if (!out || !edge_nodes || !edge_offsets)
            throw std::invalid_argument("hfd_graph_build: null argument");
        std::vector<std::vector<int32_t>> edges(num_edges);
        for (int32_t e = 0; e < num_edges; ++e) {
            edges[e].assign(edge_nodes + edge_offsets[e], edge_nodes + edge_offsets[e + 1]);
        }
        std::vector<double> th;
        const std::vector<double>* th_ptr = nullptr;
        if (theta) {
            th.assign(theta, theta + num_edges);
            th_ptr = &th;
        }
        *out = new hfd_graph{Hypergraph::build(num_nodes, edges, th_ptr)};
    });
}

hfd_status hfd_graph_load(const char* edges_path, const char* weights_path,
                          const char* roles_path, hfd_graph** out) {
    return guarded([&] {
        if (!out || !edges_path) throw std::invalid_argument("hfd_graph_load: null argument");
        std::string wp, rp;
        const std::string* wq = nullptr;
        const std::string* rq = nullptr;
        if (weights_path) {
            wp = weights_path;
            wq = &wp;
        }
        if (roles_path) {
            rp = roles_path;
            rq = &rp;
        }
        *out = new hfd_graph{hyperflow::load_hypergraph(edges_path, wq, rq)};
    });
}

hfd_status hfd_graph_save(const hfd_graph* g, const char* edges_path) {
    return guarded([&] {
        if (!g || !edges_path) throw std::invalid_argument("hfd_graph_save: null argument");
        hyperflow::save_hypergraph(g->impl, edges_path);
    });
}

void hfd_graph_free(hfd_graph* g) { delete g; }

int32_t hfd_graph_num_nodes(const hfd_graph* g) { return g ? g->impl.num_nodes() : 0; }
int32_t hfd_graph_num_edges(const hfd_graph* g) { return g ? g->impl.num_edges() : 0; }
int32_t hfd_graph_dropped_singletons(const hfd_graph* g) {
    return g ? g->impl.dropped_singletons() : 0;
}
int32_t hfd_graph_components(const hfd_graph* g) {
    return g ? g->impl.connected_components() : 0;
}
double hfd_graph_degree(const hfd_graph* g, int32_t v) {
    if (!g || v < 0 || v >= g->impl.num_nodes()) return 0.0;
    return g->impl.degree(v);
}
double hfd_graph_total_volume(const hfd_graph* g) { return g ? g->impl.total_volume() : 0.0; }

hfd_status hfd_graph_volume(const hfd_graph* g, const int32_t* nodes, int32_t n,
                            double* out) {
    return guarded([&] {
        if (!g || !out) throw std::invalid_argument("hfd_graph_volume: null argument");
        *out = g->impl.volume(make_set(nodes, n));
    });
}

hfd_status hfd_graph_node_name(const hfd_graph* g, int32_t v, char* buf, int32_t buflen) {
    return guarded([&] {
        if (!g || !buf || buflen <= 0)
            throw std::invalid_argument("hfd_graph_node_name: bad argument");
        std::string name = g->impl.name(v);
        if (static_cast<int32_t>(name.size()) + 1 > buflen)
            throw std::invalid_argument("hfd_graph_node_name: buffer too small");
        std::memcpy(buf, name.c_str(), name.size() + 1);
    });
}

int32_t hfd_graph_node_index(const hfd_graph* g, const char* name) {
    if (!g || !name) return -1;
    return g->impl.index_of(name);
}

hfd_status hfd_cutcost_unit(hfd_cutcost** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null out");
        *out = new hfd_cutcost{hyperflow::make_unit_cost()};
    });
}

hfd_status hfd_cutcost_cardinality(hfd_cutcost** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null out");
        *out = new hfd_cutcost{hyperflow::make_cardinality_cost()};
    });
}

hfd_status hfd_cutcost_motif4(double gamma1, double gamma2, hfd_cutcost** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null out");
        *out = new hfd_cutcost{hyperflow::make_motif4_cost(gamma1, gamma2)};
    });
}

hfd_status hfd_cutcost_custom_load(const char* path, hfd_cutcost** out, double* theta_out) {
    return guarded([&] {
        if (!out || !path) throw std::invalid_argument("null argument");
        auto [cost, theta] = hyperflow::load_custom_cost(path);
        if (theta_out) *theta_out = theta;
        *out = new hfd_cutcost{std::move(cost)};
    });
}

void hfd_cutcost_free(hfd_cutcost* w) { delete w; }

hfd_status hfd_conductance(const hfd_graph* g, const hfd_cutcost* w, const int32_t* nodes,
                           int32_t n, double* out) {
    return guarded([&] {
        if (!g || !w || !out) throw std::invalid_argument("hfd_conductance: null argument");
        *out = hyperflow::conductance(g->impl, *w->impl, make_set(nodes, n));
    });
}

void hfd_config_defaults(hfd_config* cfg) {
    if (!cfg) return;
    DiffusionConfig d;
    cfg->sigma = d.sigma;
    cfg->p = d.p;
    cfg->max_iters = d.max_iters;
    cfg->gap_tol = d.gap_tol;
    cfg->support_eps = d.support_eps;
    cfg->seed_mass_factor = d.seed_mass_factor;
    cfg->subgradient_iters = d.subgradient_iters;
    cfg->threads = d.threads;
}

hfd_status hfd_diffuse(const hfd_graph* g, const hfd_cutcost* w, const int32_t* seeds,
                       int32_t nseeds, double total_mass, const hfd_config* cfg,
                       hfd_diffusion** out) {
    return guarded([&] {
        if (!g || !w || !out || !seeds) throw std::invalid_argument("hfd_diffuse: null argument");
        DiffusionConfig c;
        if (cfg) {
            c.sigma = cfg->sigma;
            c.p = cfg->p;
            c.max_iters = cfg->max_iters;
            c.gap_tol = cfg->gap_tol;
            c.support_eps = cfg->support_eps;
            c.seed_mass_factor = cfg->seed_mass_factor;
            c.subgradient_iters = cfg->subgradient_iters;
            c.threads = cfg->threads;
        }
        SourceVector src = hyperflow::make_source(g->impl, make_set(seeds, nseeds), total_mass);
        DiffusionState st = hyperflow::am_solve(g->impl, *w->impl, src, c);
        *out = new hfd_diffusion{std::move(st), std::move(src), c.support_eps, &g->impl};
    });
}

void hfd_diffusion_free(hfd_diffusion* d) { delete d; }

int32_t hfd_diffusion_status(const hfd_diffusion* d) {
    return d ? static_cast<int32_t>(d->state.status) : -1;
}
int32_t hfd_diffusion_iterations(const hfd_diffusion* d) { return d ? d->state.iterations : 0; }
double hfd_diffusion_gap(const hfd_diffusion* d) { return d ? d->state.final_gap_rel : 0.0; }

hfd_status hfd_diffusion_embedding(const hfd_diffusion* d, double* x, int32_t n) {
    return guarded([&] {
        if (!d || !x) throw std::invalid_argument("hfd_diffusion_embedding: null argument");
        if (n != static_cast<int32_t>(d->state.x.size()))
            throw std::invalid_argument("hfd_diffusion_embedding: bad length");
        std::memcpy(x, d->state.x.data(), sizeof(double) * d->state.x.size());
    });
}

int32_t hfd_diffusion_trace_len(const hfd_diffusion* d) {
    return d ? static_cast<int32_t>(d->state.trace.size()) : 0;
}

hfd_status hfd_diffusion_trace_row(const hfd_diffusion* d, int32_t i, double row[5]) {
    return guarded([&] {
        if (!d || !row) throw std::invalid_argument("hfd_diffusion_trace_row: null argument");
        if (i < 0 || i >= static_cast<int32_t>(d->state.trace.size()))
            throw std::invalid_argument("hfd_diffusion_trace_row: index out of range");
        const auto& t = d->state.trace[i];
        row[0] = t.iter;
        row[1] = t.primal;
        row[2] = t.dual;
        row[3] = t.gap;
        row[4] = t.support;
    });
}

hfd_status hfd_diffusion_locality(const hfd_diffusion* d, double out[2]) {
    return guarded([&] {
        if (!d || !out) throw std::invalid_argument("hfd_diffusion_locality: null argument");
        auto rep = hyperflow::check_locality(*d->graph, d->state, d->source, d->support_eps);
        out[0] = rep.support_volume;
        out[1] = rep.source_mass;
    });
}

hfd_status hfd_sweep_run(const hfd_graph* g, const hfd_cutcost* w, const double* x,
                         int32_t n, hfd_sweep** out) {
    return guarded([&] {
        if (!g || !w || !x || !out) throw std::invalid_argument("hfd_sweep_run: null argument");
        std::span<const double> xs(x, static_cast<size_t>(n));
        *out = new hfd_sweep{hyperflow::sweep_cut(g->impl, *w->impl, xs)};
    });
}

void hfd_sweep_free(hfd_sweep* s) { delete s; }

int32_t hfd_sweep_len(const hfd_sweep* s) {
    return s ? static_cast<int32_t>(s->result.profile.size()) : 0;
}

hfd_status hfd_sweep_row(const hfd_sweep* s, int32_t i, double row[5]) {
    return guarded([&] {
        if (!s || !row) throw std::invalid_argument("hfd_sweep_row: null argument");
        if (i < 0 || i >= static_cast<int32_t>(s->result.profile.size()))
            throw std::invalid_argument("hfd_sweep_row: index out of range");
        const auto& r = s->result.profile[i];
        row[0] = r.threshold;
        row[1] = r.size;
        row[2] = r.volume;
        row[3] = r.cut;
        row[4] = r.conductance;
    });
}

int32_t hfd_sweep_best_size(const hfd_sweep* s) { return s ? s->result.best.size() : 0; }
double hfd_sweep_best_conductance(const hfd_sweep* s) {
    return s ? s->result.best_conductance : 0.0;
}

hfd_status hfd_sweep_best(const hfd_sweep* s, int32_t* nodes, int32_t cap) {
    return guarded([&] {
        if (!s || !nodes) throw std::invalid_argument("hfd_sweep_best: null argument");
        if (cap < s->result.best.size())
            throw std::invalid_argument("hfd_sweep_best: buffer too small");
        std::copy(s->result.best.begin(), s->result.best.end(), nodes);
    });
}

hfd_status hfd_f1(const int32_t* pred, int32_t npred, const int32_t* truth, int32_t ntruth,
                  double scores[3]) {
    return guarded([&] {
        if (!scores) throw std::invalid_argument("hfd_f1: null argument");
        auto e = hyperflow::f1_scores(make_set(pred, npred), make_set(truth, ntruth));
        scores[0] = e.precision;
        scores[1] = e.recall;
        scores[2] = e.f1;
    });
}

hfd_status hfd_rank(const double* x, int32_t n, const int32_t* exclude, int32_t nexclude,
                    int32_t* out, int32_t cap, int32_t* written) {
    return guarded([&] {
        if (!x || !out || !written) throw std::invalid_argument("hfd_rank: null argument");
        NodeSet excl;
        if (exclude && nexclude > 0) excl = make_set(exclude, nexclude);
        auto order = hyperflow::rank_nodes(std::span<const double>(x, static_cast<size_t>(n)),
                                           exclude ? &excl : nullptr);
        int32_t count = std::min<int32_t>(cap, static_cast<int32_t>(order.size()));
        std::copy(order.begin(), order.begin() + count, out);
        *written = count;
    });
}

hfd_status hfd_hsbm_generate(const hfd_hsbm_params* params, hfd_graph** out, int32_t* labels) {
    return guarded([&] {
        if (!params || !out) throw std::invalid_argument("hfd_hsbm_generate: null argument");
        hyperflow::HsbmParams p;
        p.k = params->k;
        p.n = params->n;
        p.block_a = params->block_a;
        p.p = params->p;
        p.q.assign(params->q, params->q + params->q_len);
        p.rng_seed = params->rng_seed;
        p.shuffle_labels = params->shuffle_labels != 0;
        auto result = hyperflow::hsbm_generate(p);
        if (labels)
            std::copy(result.labels.begin(), result.labels.end(), labels);
        *out = new hfd_graph{std::move(result.graph)};
    });
}

hfd_status hfd_hsbm_calibrate(int32_t k, int32_t n, double p, double target_conductance,
                              const hfd_cutcost* w, double* q1_out) {
    return guarded([&] {
        if (!w || !q1_out) throw std::invalid_argument("hfd_hsbm_calibrate: null argument");
        *q1_out = hyperflow::hsbm_calibrate_q(k, n, p, target_conductance, *w->impl);
    });
}

} // extern "C"
