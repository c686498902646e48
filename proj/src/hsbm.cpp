#include "hyperflow/hsbm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hyperflow/rng.hpp"

namespace hyperflow {

namespace {

int64_t binomial(int32_t n, int32_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    int64_t c = 1;
    for (int32_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// idx-th k-subset of {0..n-1} in lexicographic order.
void unrank_combination(int32_t n, int32_t k, int64_t idx, std::vector<int32_t>& out) {
    out.clear();
    int32_t start = 0;
    for (int32_t picked = 0; picked < k; ++picked) {
        for (int32_t v = start;; ++v) {
            int64_t block = binomial(n - v - 1, k - picked - 1);
            if (idx < block) {
                out.push_back(v);
                start = v + 1;
                break;
            }
            idx -= block;
        }
    }
}

// Visits each index of [0, count) independently with probability prob, via
// geometric gap sampling; identical in distribution to per-index Bernoulli
// draws but with cost proportional to the number of hits.
template <typename F>
void sample_indices(Rng& rng, int64_t count, double prob, F&& emit) {
    if (count <= 0 || prob <= 0.0) return;
    if (prob >= 1.0) {
        for (int64_t i = 0; i < count; ++i) emit(i);
        return;
    }
    double log1mp = std::log1p(-prob);
    int64_t pos = -1;
    while (true) {
        double u = 1.0 - rng.uniform(); // (0, 1]
        double gap = std::floor(std::log(u) / log1mp);
        if (gap > static_cast<double>(count)) break;
        pos += 1 + static_cast<int64_t>(gap);
        if (pos >= count) break;
        emit(pos);
    }
}

} // namespace

void HsbmParams::validate() const {
    if (k < 2) throw std::invalid_argument("hsbm: k must be >= 2");
    if (n < k) throw std::invalid_argument("hsbm: n must be >= k");
    int32_t a = block_a > 0 ? block_a : n / 2;
    int32_t b = block_b > 0 ? block_b : n - a;
    if (a + b != n || a <= 0 || b <= 0)
        throw std::invalid_argument("hsbm: block sizes must be positive and sum to n");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("hsbm: p must be in [0,1]");
    if (static_cast<int32_t>(q.size()) != k / 2)
        throw std::invalid_argument("hsbm: q must have floor(k/2) entries");
    for (double v : q) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("hsbm: q_j must be in [0,1]");
    }
}

HsbmResult hsbm_generate(const HsbmParams& params) {
    params.validate();
    int32_t n = params.n;
    int32_t k = params.k;
    int32_t na = params.block_a > 0 ? params.block_a : n / 2;
    int32_t nb = n - na;

    Rng rng(params.rng_seed);
    std::vector<int32_t> node_of(n); // position in (block0 ++ block1) -> node id
    std::iota(node_of.begin(), node_of.end(), 0);
    if (params.shuffle_labels) {
        for (int32_t i = n - 1; i > 0; --i) {
            int32_t j = static_cast<int32_t>(rng.uniform_index(i + 1));
            std::swap(node_of[i], node_of[j]);
        }
    }
    std::vector<int32_t> labels(n);
    for (int32_t pos = 0; pos < n; ++pos) labels[node_of[pos]] = pos < na ? 0 : 1;

    std::vector<std::vector<NodeId>> edges;
    std::vector<int32_t> sub_a, sub_b;

    // Classes by composition: j nodes from block 0 and k - j from block 1,
    // visited in a fixed order for reproducibility.
    for (int32_t j = k; j >= 0; --j) {
        int32_t ja = j, jb = k - j;
        if (ja > na || jb > nb) continue;
        double prob;
        if (ja == 0 || jb == 0) {
            prob = params.p;
        } else {
            prob = params.q[std::min(ja, jb) - 1];
        }
        if (prob <= 0.0) continue;
        int64_t ca = binomial(na, ja);
        int64_t cb = binomial(nb, jb);
        auto emit = [&](int64_t idx) {
            int64_t ia = idx / cb;
            int64_t ib = idx % cb;
            unrank_combination(na, ja, ia, sub_a);
            unrank_combination(nb, jb, ib, sub_b);
            std::vector<NodeId> edge;
            edge.reserve(k);
            for (int32_t v : sub_a) edge.push_back(node_of[v]);
            for (int32_t v : sub_b) edge.push_back(node_of[na + v]);
            edges.push_back(std::move(edge));
        };
        int64_t count = ca * cb;
        if (k >= 6) {
            sample_indices(rng, count, prob, emit);
        } else {
            for (int64_t idx = 0; idx < count; ++idx) {
                if (rng.uniform() < prob) emit(idx);
            }
        }
    }
    if (edges.empty()) throw std::runtime_error("hsbm: generated hypergraph has no edges");

    HsbmResult result{Hypergraph::build(n, edges), std::move(labels)};
    return result;
}

double hsbm_expected_conductance(int32_t k, int32_t n, double p, double q1,
                                 const CutCost& cost) {
    if (n % 2 != 0) throw std::invalid_argument("expected conductance: n must be even");
    int32_t half = n / 2;
    double cnt_mono = static_cast<double>(binomial(half, k));
    double cnt_one = static_cast<double>(half) * static_cast<double>(binomial(half, k - 1));
    double w1 = cost.eval_size(k, 1);
    double cut = 2.0 * w1 * cnt_one * q1;
    double vol = k * cnt_mono * p + k * cnt_one * q1;
    if (!(vol > 0.0)) return 0.0;
    return cut / vol;
}

double hsbm_calibrate_q(int32_t k, int32_t n, double p, double target_conductance,
                        const CutCost& cost) {
    if (target_conductance < 0.0)
        throw std::invalid_argument("calibrate: target conductance must be >= 0");
    if (target_conductance == 0.0) return 0.0;
    double hi_value = hsbm_expected_conductance(k, n, p, 1.0, cost);
    if (target_conductance > hi_value + 1e-12)
        throw std::invalid_argument("calibrate: target conductance above achievable range");
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (hsbm_expected_conductance(k, n, p, mid, cost) < target_conductance) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace hyperflow
