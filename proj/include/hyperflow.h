/* hyperflow: local clustering and node ranking on submodular hypergraphs
 * via hyper-flow diffusion. C API over the shared library; all handles are
 * opaque and must be released with the matching *_free function. Functions
 * return HFD_OK on success; on failure hfd_last_error() describes the fault
 * for the calling thread. */

#ifndef HYPERFLOW_H
#define HYPERFLOW_H

#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum hfd_status {
    HFD_OK = 0,
    HFD_ERR_INVALID_ARGUMENT = 1,
    HFD_ERR_DATA = 2,
    HFD_ERR_NUMERIC = 3,
    HFD_ERR_UNSUPPORTED = 4
} hfd_status;

const char* hfd_last_error(void);

/* ---- hypergraph ---- */

typedef struct hfd_graph hfd_graph;

/* Dense node indices in [0, num_nodes); edge_offsets has num_edges + 1
 * entries delimiting edge_nodes. Singleton edges are dropped. theta may be
 * NULL (unit weights). */
hfd_status hfd_graph_build(int32_t num_nodes, const int32_t* edge_nodes,
                           const int64_t* edge_offsets, int32_t num_edges,
                           const double* theta, hfd_graph** out);
/* Text loader; weights_path and roles_path may be NULL. */
hfd_status hfd_graph_load(const char* edges_path, const char* weights_path,
                          const char* roles_path, hfd_graph** out);
hfd_status hfd_graph_save(const hfd_graph* g, const char* edges_path);
void hfd_graph_free(hfd_graph* g);

int32_t hfd_graph_num_nodes(const hfd_graph* g);
int32_t hfd_graph_num_edges(const hfd_graph* g);
int32_t hfd_graph_dropped_singletons(const hfd_graph* g);
int32_t hfd_graph_components(const hfd_graph* g);
double hfd_graph_degree(const hfd_graph* g, int32_t v);
double hfd_graph_total_volume(const hfd_graph* g);
hfd_status hfd_graph_volume(const hfd_graph* g, const int32_t* nodes, int32_t n,
                            double* out);
hfd_status hfd_graph_node_name(const hfd_graph* g, int32_t v, char* buf, int32_t buflen);
/* Returns -1 when the name is unknown. */
int32_t hfd_graph_node_index(const hfd_graph* g, const char* name);

/* ---- cut-costs ---- */

typedef struct hfd_cutcost hfd_cutcost;

hfd_status hfd_cutcost_unit(hfd_cutcost** out);
hfd_status hfd_cutcost_cardinality(hfd_cutcost** out);
hfd_status hfd_cutcost_motif4(double gamma1, double gamma2, hfd_cutcost** out);
/* Table file: edge size k followed by 2^k values; normalized on load, the
 * normalization constant is stored in *theta_out when non-NULL. */
hfd_status hfd_cutcost_custom_load(const char* path, hfd_cutcost** out, double* theta_out);
void hfd_cutcost_free(hfd_cutcost* w);

hfd_status hfd_conductance(const hfd_graph* g, const hfd_cutcost* w,
                           const int32_t* nodes, int32_t n, double* out);

/* ---- diffusion ---- */

typedef struct hfd_config {
    double sigma;
    double p;
    int32_t max_iters;
    double gap_tol;
    double support_eps;
    double seed_mass_factor;
    int32_t subgradient_iters;
    int32_t threads;
} hfd_config;

void hfd_config_defaults(hfd_config* cfg);

typedef struct hfd_diffusion hfd_diffusion;

/* Spreads total_mass from the seed set (degree-proportional split). */
hfd_status hfd_diffuse(const hfd_graph* g, const hfd_cutcost* w, const int32_t* seeds,
                       int32_t nseeds, double total_mass, const hfd_config* cfg,
                       hfd_diffusion** out);
void hfd_diffusion_free(hfd_diffusion* d);

/* 0 trivial (no excess), 1 gap converged, 2 stalled, 3 iteration limit. */
int32_t hfd_diffusion_status(const hfd_diffusion* d);
int32_t hfd_diffusion_iterations(const hfd_diffusion* d);
double hfd_diffusion_gap(const hfd_diffusion* d);
/* Copies the dual node embedding (length num_nodes). */
hfd_status hfd_diffusion_embedding(const hfd_diffusion* d, double* x, int32_t n);
int32_t hfd_diffusion_trace_len(const hfd_diffusion* d);
/* row = {iter, primal, dual, gap, support_size} */
hfd_status hfd_diffusion_trace_row(const hfd_diffusion* d, int32_t i, double row[5]);
/* out = {vol(supp(x)), ||Delta||_1}; the first must not exceed the second. */
hfd_status hfd_diffusion_locality(const hfd_diffusion* d, double out[2]);

/* ---- sweep cut and evaluation ---- */

typedef struct hfd_sweep hfd_sweep;

hfd_status hfd_sweep_run(const hfd_graph* g, const hfd_cutcost* w, const double* x,
                         int32_t n, hfd_sweep** out);
void hfd_sweep_free(hfd_sweep* s);
int32_t hfd_sweep_len(const hfd_sweep* s);
/* row = {threshold, size, volume, cut, conductance} */
hfd_status hfd_sweep_row(const hfd_sweep* s, int32_t i, double row[5]);
int32_t hfd_sweep_best_size(const hfd_sweep* s);
double hfd_sweep_best_conductance(const hfd_sweep* s);
hfd_status hfd_sweep_best(const hfd_sweep* s, int32_t* nodes, int32_t cap);

/* scores = {precision, recall, f1} */
hfd_status hfd_f1(const int32_t* pred, int32_t npred, const int32_t* truth,
                  int32_t ntruth, double scores[3]);

/* Ranks nodes with positive x by descending value (ties by index); skips
 * excluded nodes. Writes at most cap indices, the count into *written. */
hfd_status hfd_rank(const double* x, int32_t n, const int32_t* exclude,
                    int32_t nexclude, int32_t* out, int32_t cap, int32_t* written);

/* ---- synthetic generator ---- */

typedef struct hfd_hsbm_params {
    int32_t k;
    int32_t n;
    int32_t block_a; /* 0 = n/2 */
    double p;
    const double* q; /* floor(k/2) entries */
    int32_t q_len;
    uint64_t rng_seed;
    int32_t shuffle_labels;
} hfd_hsbm_params;

/* labels may be NULL; otherwise it receives n block ids. */
hfd_status hfd_hsbm_generate(const hfd_hsbm_params* params, hfd_graph** out,
                             int32_t* labels);
hfd_status hfd_hsbm_calibrate(int32_t k, int32_t n, double p, double target_conductance,
                              const hfd_cutcost* w, double* q1_out);

#if defined(__cplusplus)
}
#endif

#endif /* HYPERFLOW_H */
