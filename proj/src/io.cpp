#include "hyperflow/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hyperflow {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string token;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
            if (!token.empty()) {
                out.push_back(std::move(token));
                token.clear();
            }
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty()) out.push_back(std::move(token));
    return out;
}

std::vector<std::vector<std::string>> read_token_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        auto tokens = tokenize(line);
        if (!tokens.empty()) lines.push_back(std::move(tokens));
    }
    return lines;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("cannot parse number '" + s + "' in " + context);
    }
}

} // namespace

Hypergraph load_hypergraph(const std::string& edges_path, const std::string* weights_path,
                           const std::string* roles_path) {
    auto lines = read_token_lines(edges_path);
    if (lines.empty()) throw std::runtime_error("hypergraph file has no edges: " + edges_path);

    std::unordered_map<std::string, NodeId> intern;
    std::vector<std::string> names;
    auto id_of = [&](const std::string& token) {
        auto it = intern.find(token);
        if (it != intern.end()) return it->second;
        NodeId id = static_cast<NodeId>(names.size());
        intern.emplace(token, id);
        names.push_back(token);
        return id;
    };

    std::vector<std::vector<NodeId>> edges;
    edges.reserve(lines.size());
    for (const auto& tokens : lines) {
        std::vector<NodeId> edge;
        edge.reserve(tokens.size());
        for (const auto& t : tokens) edge.push_back(id_of(t));
        edges.push_back(std::move(edge));
    }

    if (roles_path) {
        auto role_lines = read_token_lines(*roles_path);
        if (role_lines.size() != edges.size())
            throw std::runtime_error("roles file line count does not match edge count");
        for (size_t i = 0; i < edges.size(); ++i) {
            std::vector<NodeId> ordered;
            ordered.reserve(role_lines[i].size());
            for (const auto& t : role_lines[i]) {
                auto it = intern.find(t);
                if (it == intern.end())
                    throw std::runtime_error("roles file names unknown node '" + t + "'");
                ordered.push_back(it->second);
            }
            auto sorted_a = edges[i];
            auto sorted_b = ordered;
            std::sort(sorted_a.begin(), sorted_a.end());
            std::sort(sorted_b.begin(), sorted_b.end());
            if (sorted_a != sorted_b)
                throw std::runtime_error("roles file disagrees with edge " + std::to_string(i));
            edges[i] = std::move(ordered);
        }
    }

    std::vector<double> theta;
    const std::vector<double>* theta_ptr = nullptr;
    if (weights_path) {
        auto weight_lines = read_token_lines(*weights_path);
        if (weight_lines.size() != edges.size())
            throw std::runtime_error("weights file line count does not match edge count");
        theta.reserve(weight_lines.size());
        for (const auto& tokens : weight_lines) {
            if (tokens.size() != 1)
                throw std::runtime_error("weights file must have one value per line");
            theta.push_back(parse_double(tokens[0], *weights_path));
        }
        theta_ptr = &theta;
    }

    try {
        Hypergraph h = Hypergraph::build(static_cast<int32_t>(names.size()), edges, theta_ptr);
        h.set_names(std::move(names));
        return h;
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("invalid hypergraph data: ") + e.what());
    }
}

void save_hypergraph(const Hypergraph& h, const std::string& edges_path) {
    std::ofstream out(edges_path);
    if (!out) throw std::runtime_error("cannot write file: " + edges_path);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        auto nodes = h.edge(e);
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (i) out << ' ';
            out << h.name(nodes[i]);
        }
        out << '\n';
    }
}

std::vector<std::pair<std::string, std::string>> load_labels(const std::string& path) {
    auto lines = read_token_lines(path);
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(lines.size());
    for (const auto& tokens : lines) {
        if (tokens.size() != 2)
            throw std::runtime_error("labels file must have 'id label' per line: " + path);
        out.emplace_back(tokens[0], tokens[1]);
    }
    return out;
}

void save_labels(const std::string& path, const std::vector<std::string>& ids,
                 const std::vector<std::string>& labels) {
    if (ids.size() != labels.size()) throw std::invalid_argument("save_labels: size mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (size_t i = 0; i < ids.size(); ++i) out << ids[i] << ' ' << labels[i] << '\n';
}

std::pair<std::shared_ptr<const CutCost>, double> load_custom_cost(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    int edge_size = 0;
    if (!(in >> edge_size) || edge_size < 2 || edge_size > 16)
        throw std::runtime_error("custom cost file: bad edge size");
    size_t entries = size_t{1} << edge_size;
    std::vector<double> table(entries);
    for (size_t i = 0; i < entries; ++i) {
        if (!(in >> table[i]))
            throw std::runtime_error("custom cost file: expected 2^k table values");
    }
    try {
        return normalize_custom_table(edge_size, std::move(table));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("invalid custom cost table: ") + e.what());
    }
}

} // namespace hyperflow
