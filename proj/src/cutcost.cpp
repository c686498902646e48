#include "hyperflow/cutcost.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hyperflow {

namespace {

constexpr int kMaxMaskEdgeSize = 16;
constexpr int kMaxSubmodularCheckSize = 12;

class UnitCost final : public CutCost {
public:
    Kind kind() const override { return Kind::Unit; }
    bool size_based() const override { return true; }
    double eval_size(int edge_size, int subset_size) const override {
        return (subset_size > 0 && subset_size < edge_size) ? 1.0 : 0.0;
    }
};

class CardinalityCost final : public CutCost {
public:
    Kind kind() const override { return Kind::Cardinality; }
    bool size_based() const override { return true; }
    double eval_size(int edge_size, int subset_size) const override {
        int m = std::min(subset_size, edge_size - subset_size);
        return static_cast<double>(m) / static_cast<double>(edge_size / 2);
    }
};

class Motif4Cost final : public CutCost {
public:
    Motif4Cost(double g1, double g2) : gamma1_(g1), gamma2_(g2) {}
    Kind kind() const override { return Kind::Motif4; }
    bool size_based() const override { return false; }
    int required_edge_size() const override { return 4; }
    double eval_mask(int edge_size, uint32_t mask) const override {
        if (edge_size != 4) throw std::invalid_argument("motif cut-cost requires |e| = 4");
        int a = std::popcount(mask & 0x3u);
        int b = std::popcount(mask & 0xCu);
        int total = a + b;
        if (total == 0 || total == 4) return 0.0;
        if (total == 1 || total == 3) return gamma1_;
        return (a == 1) ? 1.0 : gamma2_; // (1,1) cross split vs within-pair split
    }
    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }

private:
    double gamma1_;
    double gamma2_;
};

class CustomCost final : public CutCost {
public:
    CustomCost(int edge_size, std::vector<double> table)
        : edge_size_(edge_size), table_(std::move(table)) {}
    Kind kind() const override { return Kind::Custom; }
    bool size_based() const override { return false; }
    int required_edge_size() const override { return edge_size_; }
    double eval_mask(int edge_size, uint32_t mask) const override {
        if (edge_size != edge_size_)
            throw std::invalid_argument("custom cut-cost: edge size mismatch");
        return table_[mask];
    }

private:
    int edge_size_;
    std::vector<double> table_;
};

void validate_table(int edge_size, const std::vector<double>& table) {
    if (edge_size < 2 || edge_size > kMaxMaskEdgeSize)
        throw std::invalid_argument("custom cut-cost: edge size must be in [2, 16]");
    size_t expected = size_t{1} << edge_size;
    if (table.size() != expected)
        throw std::invalid_argument("custom cut-cost: table must have 2^k entries");
    if (table.front() != 0.0 || table.back() != 0.0)
        throw std::invalid_argument("custom cut-cost: w(empty) and w(e) must be 0");
    for (double v : table) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("custom cut-cost: table values must be finite and >= 0");
    }
}

} // namespace

double CutCost::eval_size(int, int) const {
    throw std::logic_error("eval_size not supported by this cut-cost");
}

double CutCost::eval_mask(int edge_size, uint32_t mask) const {
    // Size-based models answer mask queries through popcount.
    return eval_size(edge_size, std::popcount(mask));
}

void CutCost::check_edge_size(int edge_size) const {
    int req = required_edge_size();
    if (req != 0 && edge_size != req)
        throw std::invalid_argument("cut-cost does not accept this hyperedge size");
    if (!size_based() && edge_size > kMaxMaskEdgeSize)
        throw std::invalid_argument("position-dependent cut-cost limited to |e| <= 16");
}

double CutCost::evaluate(std::span<const NodeId> edge, const NodeSet& s) const {
    int k = static_cast<int>(edge.size());
    check_edge_size(k);
    if (size_based()) {
        int inside = 0;
        for (NodeId v : edge) inside += s.contains(v) ? 1 : 0;
        return eval_size(k, inside);
    }
    uint32_t mask = 0;
    for (int i = 0; i < k; ++i) {
        if (s.contains(edge[i])) mask |= 1u << i;
    }
    return eval_mask(k, mask);
}

std::shared_ptr<const CutCost> make_unit_cost() { return std::make_shared<UnitCost>(); }

std::shared_ptr<const CutCost> make_cardinality_cost() {
    return std::make_shared<CardinalityCost>();
}

std::shared_ptr<const CutCost> make_motif4_cost(double gamma1, double gamma2) {
    if (!(gamma1 >= 0.0 && gamma1 <= 1.0 && gamma2 >= 0.0 && gamma2 <= 1.0))
        throw std::invalid_argument("motif cut-cost: gamma parameters must be in [0, 1]");
    return std::make_shared<Motif4Cost>(gamma1, gamma2);
}

std::shared_ptr<const CutCost> make_custom_cost(int edge_size, std::vector<double> table) {
    validate_table(edge_size, table);
    return std::make_shared<CustomCost>(edge_size, std::move(table));
}

double motif4_gamma1(const CutCost& w) {
    auto* m = dynamic_cast<const Motif4Cost*>(&w);
    if (!m) throw std::invalid_argument("not a motif cut-cost");
    return m->gamma1();
}

double motif4_gamma2(const CutCost& w) {
    auto* m = dynamic_cast<const Motif4Cost*>(&w);
    if (!m) throw std::invalid_argument("not a motif cut-cost");
    return m->gamma2();
}

std::pair<std::shared_ptr<const CutCost>, double>
normalize_custom_table(int edge_size, std::vector<double> raw_table) {
    validate_table(edge_size, raw_table);
    double theta = *std::max_element(raw_table.begin(), raw_table.end());
    if (theta <= 0.0)
        throw std::invalid_argument("custom cut-cost: table is identically zero");
    for (double& v : raw_table) v /= theta;
    return {make_custom_cost(edge_size, std::move(raw_table)), theta};
}

double greedy_max_base(const CutCost& w, std::span<const NodeId> edge,
                       std::span<const double> y_local, std::span<double> rho_out) {
    int k = static_cast<int>(edge.size());
    w.check_edge_size(k);
    if (static_cast<int>(y_local.size()) != k || static_cast<int>(rho_out.size()) != k)
        throw std::invalid_argument("greedy_max_base: span size mismatch");

    std::array<int, 64> small_order;
    std::vector<int> big_order;
    std::span<int> order;
    if (k <= 64) {
        order = std::span<int>(small_order.data(), k);
    } else {
        big_order.resize(k);
        order = big_order;
    }
    for (int i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (y_local[a] != y_local[b]) return y_local[a] > y_local[b];
        return edge[a] < edge[b];
    });

    double value = 0.0;
    if (w.size_based()) {
        double prev = 0.0;
        for (int i = 0; i < k; ++i) {
            double cur = w.eval_size(k, i + 1);
            rho_out[order[i]] = cur - prev;
            value += (cur - prev) * y_local[order[i]];
            prev = cur;
        }
    } else {
        uint32_t mask = 0;
        double prev = 0.0;
        for (int i = 0; i < k; ++i) {
            mask |= 1u << order[i];
            double cur = w.eval_mask(k, mask);
            rho_out[order[i]] = cur - prev;
            value += (cur - prev) * y_local[order[i]];
            prev = cur;
        }
    }
    return value;
}

double lovasz(const CutCost& w, std::span<const NodeId> edge,
              std::span<const double> y_local) {
    int k = static_cast<int>(edge.size());
    if (w.kind() == CutCost::Kind::Unit) {
        // f_e(y) = max y - min y; greedy reduces to the extreme entries.
        double lo = y_local[0], hi = y_local[0];
        for (int i = 1; i < k; ++i) {
            lo = std::min(lo, y_local[i]);
            hi = std::max(hi, y_local[i]);
        }
        return hi - lo;
    }
    std::array<double, 64> small_rho;
    std::vector<double> big_rho;
    std::span<double> rho;
    if (k <= 64) {
        rho = std::span<double>(small_rho.data(), k);
    } else {
        big_rho.resize(k);
        rho = big_rho;
    }
    return greedy_max_base(w, edge, y_local, rho);
}

double lovasz_global(const CutCost& w, std::span<const NodeId> edge,
                     std::span<const double> x_full) {
    int k = static_cast<int>(edge.size());
    std::array<double, 64> small_buf;
    std::vector<double> big_buf;
    std::span<double> local;
    if (k <= 64) {
        local = std::span<double>(small_buf.data(), k);
    } else {
        big_buf.resize(k);
        local = big_buf;
    }
    for (int i = 0; i < k; ++i) local[i] = x_full[edge[i]];
    return lovasz(w, edge, local);
}

std::optional<SubmodularityWitness> check_submodular(const CutCost& w, int edge_size) {
    if (edge_size > kMaxSubmodularCheckSize)
        throw std::invalid_argument("check_submodular: edge size limited to 12");
    w.check_edge_size(edge_size);
    uint32_t full = (1u << edge_size) - 1;
    std::vector<double> table(full + 1);
    for (uint32_t m = 0; m <= full; ++m) table[m] = w.eval_mask(edge_size, m);
    for (uint32_t a = 0; a <= full; ++a) {
        for (uint32_t b = a; b <= full; ++b) {
            double lhs = table[a] + table[b];
            double rhs = table[a | b] + table[a & b];
            if (lhs < rhs - 1e-12) {
                return SubmodularityWitness{a, b, rhs - lhs};
            }
        }
    }
    return std::nullopt;
}

} // namespace hyperflow
