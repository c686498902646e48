#include "hyperflow/projection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace hyperflow {

namespace {

// |c|^t * sign(c); the sign convention used by the lp threshold solver.
double signed_pow(double c, double t) {
    if (c == 0.0) return 0.0;
    double m = std::pow(std::abs(c), t);
    return c < 0.0 ? -m : m;
}

template <typename T>
class SmallBuf {
public:
    explicit SmallBuf(int n) {
        if (n <= 64) {
            data_ = stack_.data();
        } else {
            heap_.resize(n);
            data_ = heap_.data();
        }
        size_ = n;
    }
    T* data() { return data_; }
    T& operator[](int i) { return data_[i]; }
    std::span<T> span() { return {data_, static_cast<size_t>(size_)}; }

private:
    std::array<T, 64> stack_;
    std::vector<T> heap_;
    T* data_ = nullptr;
    int size_ = 0;
};

struct SortedEdge {
    SmallBuf<int> order;     // positions sorted by s descending
    explicit SortedEdge(std::span<const double> s) : order(static_cast<int>(s.size())) {
        int k = static_cast<int>(s.size());
        for (int i = 0; i < k; ++i) order[i] = i;
        std::sort(order.data(), order.data() + k,
                  [&](int a, int b) { return s[a] > s[b]; });
    }
};

} // namespace

double edge_objective(std::span<const double> s, std::span<const double> r,
                      double phi, double sigma, double p) {
    double fit = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        double diff = s[i] - r[i];
        fit += (p == 2.0) ? diff * diff : std::pow(std::abs(diff), p);
    }
    double phi_term = (p == 2.0) ? phi * phi : std::pow(phi, p);
    return phi_term / p + fit / (p * std::pow(sigma, p - 1.0));
}

double project_unit_exact(std::span<const double> s, double sigma, std::span<double> r) {
    int k = static_cast<int>(s.size());
    if (!(sigma > 0.0)) throw std::invalid_argument("project_unit_exact: sigma must be > 0");

    SortedEdge sorted(s);
    const int* ord = sorted.order.data();
    double smax = s[ord[0]], smin = s[ord[k - 1]];
    if (smax == smin) {
        std::fill(r.begin(), r.end(), 0.0);
        return 0.0;
    }

    double a = smax / sigma;
    double b = smin / sigma;
    int ia = 0;         // top group = positions ord[0..ia)
    double sum_top = 0.0;
    while (ia < k && s[ord[ia]] == smax) sum_top += s[ord[ia++]];
    int ib = 0;         // bottom group = positions ord[k-ib..k)
    while (ib < k && s[ord[k - 1 - ib]] == smin) ++ib;

    auto gamma = [&](double aa, double bb, int na, double st) {
        return aa - bb + sigma * aa * static_cast<double>(na) - st;
    };

    while (true) {
        if (ia + ib >= k) break; // all nodes absorbed into the threshold groups
        double wa = sigma * ia;
        double wb = sigma * ib;
        double a1 = s[ord[ia]] / sigma;
        double b1 = b + (a - a1) * wa / wb;
        double b2 = s[ord[k - 1 - ib]] / sigma;
        double a2 = a - (b2 - b) * wb / wa;

        double ca, cb;
        bool top_event = (b1 <= b2);
        if (top_event) {
            ca = a1;
            cb = b1;
        } else {
            ca = a2;
            cb = b2;
        }
        // Nodes landing exactly on a threshold contribute zero to gamma, so the
        // candidate value can be evaluated with the current group sums.
        if (ca <= cb || gamma(ca, cb, ia, sum_top) <= 0.0) break;
        a = ca;
        b = cb;
        if (top_event) {
            double hit = s[ord[ia]];
            while (ia < k && s[ord[ia]] == hit) sum_top += s[ord[ia++]];
        } else {
            double hit = s[ord[k - 1 - ib]];
            while (ib < k && s[ord[k - 1 - ib]] == hit) ++ib;
        }
    }

    double wa = sigma * ia;
    double wb = sigma * ib;
    double g = gamma(a, b, ia, sum_top);
    double z = wa * wb + wa + wb;
    double a_star = a - g * wb / z;
    double b_star = b + g * wa / z;

    for (int i = 0; i < k; ++i) {
        int pos = ord[i];
        if (i < ia) {
            r[pos] = s[pos] - sigma * a_star;
        } else if (i >= k - ib) {
            r[pos] = s[pos] - sigma * b_star;
        } else {
            r[pos] = 0.0;
        }
    }
    return std::max(a_star - b_star, 0.0);
}

double project_unit_lp(std::span<const double> s, double sigma, double p,
                       double bisect_tol, std::span<double> r) {
    int k = static_cast<int>(s.size());
    if (!(sigma > 0.0)) throw std::invalid_argument("project_unit_lp: sigma must be > 0");
    if (!(p >= 2.0)) throw std::invalid_argument("project_unit_lp: p must be >= 2");
    double q1 = 1.0 / (p - 1.0); // q - 1 where q = p/(p-1)

    SortedEdge sorted(s);
    const int* ord = sorted.order.data();
    double smax = s[ord[0]], smin = s[ord[k - 1]];
    if (smax == smin) {
        std::fill(r.begin(), r.end(), 0.0);
        return 0.0;
    }

    // Work in lambda-space: lambda = a^{q-1} is the upper threshold on s/sigma,
    // mu the lower one. The maintenance rule for mu is linear in lambda and
    // coincides with flow conservation, so sum(r) stays 0.
    double lam = smax / sigma;
    double mu = smin / sigma;
    int ia = 0;
    double sum_top = 0.0;
    while (ia < k && s[ord[ia]] == smax) sum_top += s[ord[ia++]];
    int ib = 0;
    while (ib < k && s[ord[k - 1 - ib]] == smin) ++ib;

    auto gamma_p = [&](double lam_v, double mu_v, int na, double st) {
        double ahat = signed_pow(lam_v, p - 1.0);
        double bhat = signed_pow(mu_v, p - 1.0);
        return signed_pow(ahat - bhat, q1) + sigma * lam_v * static_cast<double>(na) - st;
    };

    bool gamma_break = false;
    double lam_cand = lam;
    while (true) {
        if (ia + ib >= k) break;
        double wa = sigma * ia;
        double wb = sigma * ib;
        double lam1 = s[ord[ia]] / sigma;
        double mu1 = mu + (lam - lam1) * wa / wb;
        double mu2 = s[ord[k - 1 - ib]] / sigma;
        double lam2 = lam - (mu2 - mu) * wb / wa;

        double cl, cm;
        bool top_event = (mu1 <= mu2);
        if (top_event) {
            cl = lam1;
            cm = mu1;
        } else {
            cl = lam2;
            cm = mu2;
        }
        if (cl <= cm) break;
        if (gamma_p(cl, cm, ia, sum_top) <= 0.0) {
            gamma_break = true;
            lam_cand = cl;
            break;
        }
        lam = cl;
        mu = cm;
        if (top_event) {
            double hit = s[ord[ia]];
            while (ia < k && s[ord[ia]] == hit) sum_top += s[ord[ia++]];
        } else {
            double hit = s[ord[k - 1 - ib]];
            while (ib < k && s[ord[k - 1 - ib]] == hit) ++ib;
        }
    }

    double wa = sigma * ia;
    double wb = sigma * ib;
    auto mu_of = [&](double lam_v) { return mu + (lam - lam_v) * wa / wb; };

    double hi = lam;
    double lo = gamma_break ? lam_cand : (mu * wb + lam * wa) / (wa + wb);
    double ghi = gamma_p(hi, mu_of(hi), ia, sum_top);
    double glo = gamma_p(lo, mu_of(lo), ia, sum_top);
    double lam_star;
    if (ghi <= 0.0) {
        lam_star = hi;
    } else if (glo >= 0.0) {
        lam_star = lo;
        if (glo > std::max(1.0, std::abs(sum_top)) * 1e-7)
            throw std::runtime_error("project_unit_lp: bisection bracket lost");
    } else {
        while (hi - lo > bisect_tol) {
            double mid = 0.5 * (lo + hi);
            if (gamma_p(mid, mu_of(mid), ia, sum_top) > 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lam_star = 0.5 * (lo + hi);
    }
    double mu_star = mu_of(lam_star);

    for (int i = 0; i < k; ++i) {
        int pos = ord[i];
        if (i < ia) {
            r[pos] = s[pos] - sigma * lam_star;
        } else if (i >= k - ib) {
            r[pos] = s[pos] - sigma * mu_star;
        } else {
            r[pos] = 0.0;
        }
    }
    double ahat = signed_pow(lam_star, p - 1.0);
    double bhat = signed_pow(mu_star, p - 1.0);
    return std::max(signed_pow(ahat - bhat, q1), 0.0);
}

double project_subgradient(const CutCost& w, std::span<const NodeId> edge,
                           std::span<const double> s, double sigma, int iters,
                           std::span<double> r) {
    int k = static_cast<int>(edge.size());
    if (iters < 1) throw std::invalid_argument("project_subgradient: iters must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("project_subgradient: sigma must be > 0");
    w.check_edge_size(k);

    double s_sum = 0.0;
    for (double v : s) s_sum += v;
    double level = s_sum / sigma; // hyperplane: 1'y = 1's / sigma

    SmallBuf<double> y(k), rho(k), g(k), best(k);
    // Start at the hyperplane projection of the origin; unlike s/sigma this
    // stays within O(1) of the optimum as sigma shrinks.
    for (int i = 0; i < k; ++i) y[i] = level / static_cast<double>(k);
    double best_obj = std::numeric_limits<double>::infinity();
    bool unit = (w.kind() == CutCost::Kind::Unit);

    for (int it = 1; it <= iters; ++it) {
        double f;
        int imax = 0, imin = 0;
        if (unit) {
            for (int i = 1; i < k; ++i) {
                if (y[i] > y[imax] || (y[i] == y[imax] && edge[i] < edge[imax])) imax = i;
                if (y[i] < y[imin] || (y[i] == y[imin] && edge[i] > edge[imin])) imin = i;
            }
            f = y[imax] - y[imin];
        } else {
            f = greedy_max_base(w, edge, y.span(), rho.span());
        }

        double obj = 0.5 * f * f;
        for (int i = 0; i < k; ++i) obj += 0.5 * sigma * y[i] * y[i] - s[i] * y[i];
        if (obj < best_obj) {
            best_obj = obj;
            std::copy(y.data(), y.data() + k, best.data());
        }

        double gnorm2 = 0.0;
        if (unit) {
            for (int i = 0; i < k; ++i) {
                double gi = sigma * y[i] - s[i];
                if (i == imax) gi += f;
                if (i == imin) gi -= f;
                g[i] = gi;
                gnorm2 += gi * gi;
            }
        } else {
            for (int i = 0; i < k; ++i) {
                double gi = f * rho[i] + sigma * y[i] - s[i];
                g[i] = gi;
                gnorm2 += gi * gi;
            }
        }
        if (gnorm2 == 0.0) {
            best_obj = obj;
            std::copy(y.data(), y.data() + k, best.data());
            break;
        }
        double step = 1.0 / (static_cast<double>(it) * std::sqrt(gnorm2));
        double y_sum = 0.0;
        for (int i = 0; i < k; ++i) {
            y[i] -= step * g[i];
            y_sum += y[i];
        }
        double shift = (level - y_sum) / static_cast<double>(k);
        for (int i = 0; i < k; ++i) y[i] += shift;
    }

    double rty = 0.0;
    for (int i = 0; i < k; ++i) {
        r[i] = s[i] - sigma * best[i];
        rty += r[i] * best[i];
    }
    if (rty <= 0.0) {
        std::fill(r.begin(), r.end(), 0.0);
        return 0.0;
    }
    return std::sqrt(rty);
}

double project_size_based_exact(const CutCost& w, std::span<const double> s,
                                double sigma, std::span<double> r) {
    int k = static_cast<int>(s.size());
    if (!w.size_based())
        throw std::invalid_argument("project_size_based_exact: needs a size-based cut-cost");
    if (k > 12)
        throw std::invalid_argument("project_size_based_exact: edge size limited to 12");
    if (!(sigma > 0.0)) throw std::invalid_argument("project_size_based_exact: sigma must be > 0");

    SortedEdge sorted(s);
    const int* ord = sorted.order.data();

    SmallBuf<double> wpref(k + 1);
    for (int t = 0; t <= k; ++t) wpref[t] = w.eval_size(k, t);

    double scale = 1.0;
    for (int i = 0; i < k; ++i) scale = std::max(scale, std::abs(s[i]));
    const double tol = 1e-9 * scale;

    // phi = 0 candidate.
    double best_obj = 0.0;
    for (double v : s) best_obj += v * v / (2.0 * sigma);
    double best_phi = 0.0;
    std::fill(r.begin(), r.end(), 0.0);

    SmallBuf<double> y_of(k), cand_r(k);
    SmallBuf<int> block_end(k);
    uint32_t partitions = 1u << (k - 1);
    for (uint32_t mask = 0; mask < partitions; ++mask) {
        int nblocks = 0;
        for (int i = 0; i < k - 1; ++i) {
            if (mask & (1u << i)) block_end[nblocks++] = i + 1;
        }
        block_end[nblocks++] = k;

        // f (1 + sum W_b^2 / (sigma n_b)) = sum W_b S_b / (sigma n_b)
        double num = 0.0, den = sigma;
        int start = 0;
        for (int b = 0; b < nblocks; ++b) {
            int end = block_end[b];
            double nb = end - start;
            double wb = wpref[end] - wpref[start];
            double sb = 0.0;
            for (int i = start; i < end; ++i) sb += s[ord[i]];
            num += wb * sb / nb;
            den += wb * wb / nb;
            start = end;
        }
        double f = num / den;
        if (!(f > 0.0)) continue;

        bool ok = true;
        double prev_y = std::numeric_limits<double>::infinity();
        start = 0;
        for (int b = 0; b < nblocks && ok; ++b) {
            int end = block_end[b];
            double nb = end - start;
            double wb = wpref[end] - wpref[start];
            double sb = 0.0;
            for (int i = start; i < end; ++i) sb += s[ord[i]];
            double yb = (sb - f * wb) / (sigma * nb);
            if (yb > prev_y + tol / sigma) {
                ok = false;
                break;
            }
            prev_y = std::min(prev_y, yb);
            // Face membership inside the block: partial sums of the largest
            // rho entries stay below the size-function increments.
            double run = 0.0;
            for (int i = start; i < end; ++i) {
                double rv = s[ord[i]] - sigma * yb;
                y_of[i] = yb;
                run += rv / f;
                if (i < end - 1 && run > wpref[start + (i - start) + 1] - wpref[start] + tol) {
                    ok = false;
                    break;
                }
            }
            start = end;
        }
        if (!ok) continue;

        double obj = 0.5 * f * f;
        for (int i = 0; i < k; ++i) {
            double rv = s[ord[i]] - sigma * y_of[i];
            cand_r[ord[i]] = rv;
            double diff = s[ord[i]] - rv;
            obj += diff * diff / (2.0 * sigma);
        }
        if (obj < best_obj) {
            best_obj = obj;
            best_phi = f;
            std::copy(cand_r.data(), cand_r.data() + k, r.begin());
        }
    }
    return best_phi;
}

double project_motif4(std::span<const double> s, double sigma, std::span<double> r) {
    if (s.size() != 4) throw std::invalid_argument("project_motif4: |e| must be 4");
    if (!(sigma > 0.0)) throw std::invalid_argument("project_motif4: sigma must be > 0");

    double d12 = s[0] - s[1];
    double d34 = s[2] - s[3];

    // Candidate shape vectors (rho0, -rho0, rho2, -rho2); both pairs conserve
    // flow independently because the within-pair cut-cost is zero.
    std::array<std::pair<double, double>, 13> cand;
    int n = 0;
    if (d12 != 0.0 && d34 == 0.0) {
        cand[n++] = {0.5, 0.0};
        cand[n++] = {-0.5, 0.0};
    } else if (d12 == 0.0 && d34 != 0.0) {
        cand[n++] = {0.0, 0.5};
        cand[n++] = {0.0, -0.5};
    } else if (d12 != 0.0 && d34 != 0.0) {
        for (double u : {0.5, -0.5})
            for (double v : {0.5, -0.5}) cand[n++] = {u, v};
        double a = (0.5 + sigma) * d12 / d34;
        if (std::abs(a) <= 0.5) {
            for (double sa : {1.0, -1.0})
                for (double v : {0.5, -0.5}) cand[n++] = {sa * a, v};
        }
        double b = (0.5 + sigma) * d34 / d12;
        if (std::abs(b) <= 0.5) {
            for (double u : {0.5, -0.5})
                for (double sb : {1.0, -1.0}) cand[n++] = {u, sb * b};
        }
    }

    // phi = 0 candidate.
    double best_obj = 0.0;
    for (double v : s) best_obj += v * v / (2.0 * sigma);
    double best_phi = 0.0;
    double best_r0 = 0.0, best_r2 = 0.0;

    for (int i = 0; i < n; ++i) {
        auto [u, v] = cand[i];
        double norm2 = 2.0 * u * u + 2.0 * v * v;
        double sdotrho = u * d12 + v * d34;
        double phi = sdotrho / (sigma + norm2);
        if (phi <= 0.0) continue;
        double r0 = phi * u, r2 = phi * v;
        double fit = (s[0] - r0) * (s[0] - r0) + (s[1] + r0) * (s[1] + r0) +
                     (s[2] - r2) * (s[2] - r2) + (s[3] + r2) * (s[3] + r2);
        double obj = 0.5 * phi * phi + fit / (2.0 * sigma);
        if (obj < best_obj) {
            best_obj = obj;
            best_phi = phi;
            best_r0 = r0;
            best_r2 = r2;
        }
    }

    r[0] = best_r0;
    r[1] = -best_r0;
    r[2] = best_r2;
    r[3] = -best_r2;
    return best_phi;
}

double project_edge(const CutCost& w, std::span<const NodeId> edge,
                    std::span<const double> s, double sigma, double p,
                    const ProjectionOptions& opts, std::span<double> r) {
    if (w.kind() == CutCost::Kind::Unit) {
        if (p == 2.0) return project_unit_exact(s, sigma, r);
        return project_unit_lp(s, sigma, p, opts.bisect_tol, r);
    }
    if (p != 2.0)
        throw std::invalid_argument("project_edge: p > 2 is only supported with the unit cut-cost");
    if (w.kind() == CutCost::Kind::Motif4 && motif4_gamma1(w) == 0.5 &&
        motif4_gamma2(w) == 0.0) {
        return project_motif4(s, sigma, r);
    }
    if (w.size_based() && s.size() <= 12) {
        return project_size_based_exact(w, s, sigma, r);
    }
    return project_subgradient(w, edge, s, sigma, opts.subgradient_iters, r);
}

void s_step(const Hypergraph& h, std::span<const double> r,
            std::span<const double> delta, std::span<double> s,
            std::span<double> excess_out) {
    int32_t n = h.num_nodes();
    if (static_cast<int64_t>(r.size()) != h.total_pins() ||
        static_cast<int64_t>(s.size()) != h.total_pins() ||
        static_cast<int32_t>(delta.size()) != n ||
        static_cast<int32_t>(excess_out.size()) != n)
        throw std::invalid_argument("s_step: size mismatch");

    std::vector<double> net(delta.begin(), delta.end());
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        auto nodes = h.edge(e);
        int64_t off = h.edge_offset(e);
        double th = h.theta(e);
        for (size_t i = 0; i < nodes.size(); ++i) net[nodes[i]] -= th * r[off + i];
    }
    for (NodeId v = 0; v < n; ++v) {
        double ex = net[v] - h.degree(v);
        excess_out[v] = ex > 0.0 ? ex : 0.0;
    }
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        auto nodes = h.edge(e);
        int64_t off = h.edge_offset(e);
        for (size_t i = 0; i < nodes.size(); ++i) {
            NodeId v = nodes[i];
            s[off + i] = r[off + i] + excess_out[v] / h.degree(v);
        }
    }
}

} // namespace hyperflow
