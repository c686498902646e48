#include "hyperflow/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperflow {

NodeSet NodeSet::of(std::vector<NodeId> ids) {
    for (NodeId v : ids) {
        if (v < 0) throw std::invalid_argument("NodeSet: negative node index");
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    NodeSet s;
    s.ids_ = std::move(ids);
    return s;
}

bool NodeSet::contains(NodeId v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

NodeSet NodeSet::complement(int32_t num_nodes) const {
    std::vector<NodeId> out;
    out.reserve(num_nodes - size());
    size_t j = 0;
    for (NodeId v = 0; v < num_nodes; ++v) {
        if (j < ids_.size() && ids_[j] == v) {
            ++j;
        } else {
            out.push_back(v);
        }
    }
    NodeSet s;
    s.ids_ = std::move(out);
    return s;
}

NodeSet NodeSet::intersect(const NodeSet& other) const {
    std::vector<NodeId> out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(out));
    NodeSet s;
    s.ids_ = std::move(out);
    return s;
}

Hypergraph Hypergraph::build(int32_t num_nodes,
                             const std::vector<std::vector<NodeId>>& edges,
                             const std::vector<double>* theta) {
    if (num_nodes <= 0) throw std::invalid_argument("Hypergraph: num_nodes must be positive");
    if (edges.empty()) throw std::invalid_argument("Hypergraph: edge list is empty");
    if (theta && theta->size() != edges.size())
        throw std::invalid_argument("Hypergraph: theta size does not match edge count");

    Hypergraph h;
    h.num_nodes_ = num_nodes;
    h.edge_offsets_.push_back(0);

    std::vector<uint8_t> seen(num_nodes, 0);
    std::vector<NodeId> dedup;
    for (size_t i = 0; i < edges.size(); ++i) {
        dedup.clear();
        for (NodeId v : edges[i]) {
            if (v < 0 || v >= num_nodes)
                throw std::invalid_argument("Hypergraph: node index out of range");
            if (!seen[v]) {
                seen[v] = 1;
                dedup.push_back(v); // stable: keeps role order
            }
        }
        for (NodeId v : dedup) seen[v] = 0;

        if (dedup.size() < 2) {
            ++h.dropped_singletons_;
            continue;
        }
        double w = theta ? (*theta)[i] : 1.0;
        if (!(w > 0.0)) throw std::invalid_argument("Hypergraph: theta must be positive");
        h.edge_nodes_.insert(h.edge_nodes_.end(), dedup.begin(), dedup.end());
        h.edge_offsets_.push_back(static_cast<int64_t>(h.edge_nodes_.size()));
        h.theta_.push_back(w);
    }
    if (h.theta_.empty())
        throw std::invalid_argument("Hypergraph: no hyperedges left after dropping singletons");

    h.degrees_.assign(num_nodes, 0.0);
    std::vector<int32_t> inc_count(num_nodes, 0);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        for (NodeId v : h.edge(e)) {
            h.degrees_[v] += h.theta_[e];
            ++inc_count[v];
        }
    }
    h.inc_offsets_.assign(num_nodes + 1, 0);
    for (NodeId v = 0; v < num_nodes; ++v)
        h.inc_offsets_[v + 1] = h.inc_offsets_[v] + inc_count[v];
    h.inc_edges_.resize(h.edge_nodes_.size());
    std::vector<int64_t> cursor(h.inc_offsets_.begin(), h.inc_offsets_.end() - 1);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        for (NodeId v : h.edge(e)) h.inc_edges_[cursor[v]++] = e;
    }
    for (double d : h.degrees_) h.total_volume_ += d;
    return h;
}

double Hypergraph::volume(const NodeSet& s) const {
    double vol = 0.0;
    for (NodeId v : s) {
        if (v >= num_nodes_) throw std::invalid_argument("volume: node index out of range");
        vol += degrees_[v];
    }
    return vol;
}

std::vector<EdgeId> Hypergraph::cut_set(const NodeSet& s) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < num_edges(); ++e) {
        int32_t inside = 0;
        int32_t sz = edge_size(e);
        for (NodeId v : edge(e)) inside += s.contains(v) ? 1 : 0;
        if (inside > 0 && inside < sz) out.push_back(e);
    }
    return out;
}

int32_t Hypergraph::connected_components() const {
    std::vector<uint8_t> visited(num_nodes_, 0);
    std::vector<NodeId> stack;
    int32_t components = 0;
    for (NodeId start = 0; start < num_nodes_; ++start) {
        if (visited[start]) continue;
        ++components;
        visited[start] = 1;
        stack.push_back(start);
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (EdgeId e : incident(v)) {
                for (NodeId u : edge(e)) {
                    if (!visited[u]) {
                        visited[u] = 1;
                        stack.push_back(u);
                    }
                }
            }
        }
    }
    return components;
}

void Hypergraph::set_names(std::vector<std::string> names) {
    if (static_cast<int32_t>(names.size()) != num_nodes_)
        throw std::invalid_argument("set_names: size mismatch");
    names_ = std::move(names);
    name_index_.clear();
    for (NodeId v = 0; v < num_nodes_; ++v) name_index_.emplace(names_[v], v);
}

std::string Hypergraph::name(NodeId v) const {
    if (v < 0 || v >= num_nodes_) throw std::invalid_argument("name: node index out of range");
    if (names_.empty()) return std::to_string(v);
    return names_[v];
}

NodeId Hypergraph::index_of(const std::string& name) const {
    if (names_.empty()) {
        try {
            size_t pos = 0;
            long value = std::stol(name, &pos);
            if (pos != name.size() || value < 0 || value >= num_nodes_) return -1;
            return static_cast<NodeId>(value);
        } catch (const std::exception&) {
            return -1;
        }
    }
    auto it = name_index_.find(name);
    return it == name_index_.end() ? -1 : it->second;
}

} // namespace hyperflow
