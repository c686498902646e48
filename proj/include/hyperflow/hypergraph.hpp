#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyperflow {

using NodeId = int32_t;
using EdgeId = int32_t;

// Sorted, duplicate-free set of node indices.
class NodeSet {
public:
    NodeSet() = default;
    static NodeSet of(std::vector<NodeId> ids);

    bool contains(NodeId v) const;
    int32_t size() const { return static_cast<int32_t>(ids_.size()); }
    bool empty() const { return ids_.empty(); }
    const std::vector<NodeId>& ids() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    NodeSet complement(int32_t num_nodes) const;
    NodeSet intersect(const NodeSet& other) const;

private:
    std::vector<NodeId> ids_;
};

// Immutable hypergraph with per-edge positive weights. Node order inside a
// hyperedge is preserved from construction (it carries role information for
// position-dependent cut-costs); duplicate hyperedges are kept as distinct
// edges and contribute multiplicity to degrees.
class Hypergraph {
public:
    static Hypergraph build(int32_t num_nodes,
                            const std::vector<std::vector<NodeId>>& edges,
                            const std::vector<double>* theta = nullptr);

    int32_t num_nodes() const { return num_nodes_; }
    int32_t num_edges() const { return static_cast<int32_t>(theta_.size()); }
    int32_t dropped_singletons() const { return dropped_singletons_; }

    std::span<const NodeId> edge(EdgeId e) const {
        return {edge_nodes_.data() + edge_offsets_[e],
                edge_nodes_.data() + edge_offsets_[e + 1]};
    }
    int32_t edge_size(EdgeId e) const {
        return static_cast<int32_t>(edge_offsets_[e + 1] - edge_offsets_[e]);
    }
    int64_t edge_offset(EdgeId e) const { return edge_offsets_[e]; }
    int64_t total_pins() const { return static_cast<int64_t>(edge_nodes_.size()); }

    double theta(EdgeId e) const { return theta_[e]; }
    double degree(NodeId v) const { return degrees_[v]; }
    const std::vector<double>& degrees() const { return degrees_; }

    std::span<const EdgeId> incident(NodeId v) const {
        return {inc_edges_.data() + inc_offsets_[v],
                inc_edges_.data() + inc_offsets_[v + 1]};
    }

    double volume(const NodeSet& s) const;
    double total_volume() const { return total_volume_; }

    // Hyperedges with at least one node inside and one outside s.
    std::vector<EdgeId> cut_set(const NodeSet& s) const;

    int32_t connected_components() const;

    // Optional external string identifiers.
    bool has_names() const { return !names_.empty(); }
    void set_names(std::vector<std::string> names);
    std::string name(NodeId v) const;
    NodeId index_of(const std::string& name) const; // -1 if unknown

private:
    int32_t num_nodes_ = 0;
    int32_t dropped_singletons_ = 0;
    double total_volume_ = 0.0;
    std::vector<int64_t> edge_offsets_;
    std::vector<NodeId> edge_nodes_;
    std::vector<double> theta_;
    std::vector<double> degrees_;
    std::vector<int64_t> inc_offsets_;
    std::vector<EdgeId> inc_edges_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> name_index_;
};

} // namespace hyperflow
