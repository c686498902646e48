#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperflow/cutcost.hpp"
#include "hyperflow/hypergraph.hpp"

namespace hyperflow {

// Text formats. Hyperedge files carry one hyperedge per line, node IDs
// separated by whitespace or commas; IDs may be arbitrary strings and are
// interned to dense indices in first-appearance order. Lines starting with '#'
// are skipped. An optional weights file carries one positive theta per edge
// line; an optional roles file carries, per edge line, the same node IDs in
// role order (used by position-dependent cut-costs).

Hypergraph load_hypergraph(const std::string& edges_path,
                           const std::string* weights_path = nullptr,
                           const std::string* roles_path = nullptr);

void save_hypergraph(const Hypergraph& h, const std::string& edges_path);

// One "id label" pair per line.
std::vector<std::pair<std::string, std::string>> load_labels(const std::string& path);

void save_labels(const std::string& path, const std::vector<std::string>& ids,
                 const std::vector<std::string>& labels);

// Custom cut-cost table: first token is the edge size k, followed by 2^k
// values in position-bitmask order. The table is normalized on load; the
// normalization constant is returned alongside.
std::pair<std::shared_ptr<const CutCost>, double> load_custom_cost(const std::string& path);

} // namespace hyperflow
