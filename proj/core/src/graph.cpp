#include "spacedcl/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <string>
#include <string_view>

#include "parse_util.hpp"
#include "spacedcl/error.hpp"

namespace spacedcl {

Graph Graph::from_edges(std::size_t node_count, std::span<const EdgePair> edges) {
  Graph g;
  g.adjacency_.resize(node_count);
  g.edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) throw ParseError("self-loop on node " + std::to_string(u));
    if (u >= node_count || v >= node_count) {
      throw SchemaError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") references a node outside [0, " + std::to_string(node_count) + ")");
    }
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
  for (auto [u, v] : g.edges_) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& nbrs = adjacency_.at(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::span<const double> Graph::features(NodeId v) const {
  if (!has_features()) return {};
  return std::span<const double>(features_).subspan(std::size_t{v} * feature_dim_, feature_dim_);
}

void Graph::set_features(std::size_t dim, std::vector<double> values) {
  if (values.size() != dim * node_count()) {
    throw SchemaError("feature matrix has " + std::to_string(values.size()) +
                      " values, expected " + std::to_string(dim * node_count()));
  }
  feature_dim_ = dim;
  features_ = std::move(values);
}

void Graph::set_labels(std::vector<int> labels) {
  if (labels.size() != node_count()) {
    throw SchemaError("label vector size " + std::to_string(labels.size()) +
                      " does not match node count " + std::to_string(node_count()));
  }
  labels_ = std::move(labels);
}

namespace {

std::string line_error(std::size_t line_no, std::string_view what) {
  return "line " + std::to_string(line_no) + ": " + std::string(what);
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::vector<EdgePair> edges;
  std::optional<std::size_t> declared_nodes;
  std::size_t max_id_plus_one = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = detail::trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      auto body = detail::trim(view.substr(1));
      constexpr std::string_view directive = "nodes:";
      if (body.starts_with(directive)) {
        auto n = detail::parse_integer<std::size_t>(detail::trim(body.substr(directive.size())));
        if (!n) throw ParseError(line_error(line_no, "malformed node-count directive"));
        declared_nodes = *n;
      }
      continue;
    }
    auto fields = detail::split_whitespace(view);
    if (fields.size() != 2) throw ParseError(line_error(line_no, "expected two node ids"));
    auto u = detail::parse_integer<NodeId>(fields[0]);
    auto v = detail::parse_integer<NodeId>(fields[1]);
    if (!u || !v) throw ParseError(line_error(line_no, "node id is not a non-negative integer"));
    if (*u == *v) throw ParseError(line_error(line_no, "self-loop"));
    edges.emplace_back(*u, *v);
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(*u, *v) + std::size_t{1});
  }
  std::size_t node_count = max_id_plus_one;
  if (declared_nodes) {
    if (*declared_nodes < max_id_plus_one) {
      throw SchemaError("declared node count " + std::to_string(*declared_nodes) +
                        " is smaller than max node id + 1 = " + std::to_string(max_id_plus_one));
    }
    node_count = *declared_nodes;
  }
  return Graph::from_edges(node_count, edges);
}

void parse_features(std::istream& in, Graph& g) {
  std::size_t dim = 0;
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = detail::split(view, ',');
    auto node = detail::parse_integer<NodeId>(detail::trim(fields[0]));
    if (!node) {
      if (first_data_row && line_no == 1) continue;  // header
      throw ParseError(line_error(line_no, "feature row must start with a node id"));
    }
    if (first_data_row) {
      dim = fields.size() - 1;
      if (dim == 0) throw SchemaError(line_error(line_no, "feature row has no values"));
      values.assign(dim * g.node_count(), 0.0);
      first_data_row = false;
    }
    if (fields.size() - 1 != dim) {
      throw SchemaError(line_error(line_no, "expected " + std::to_string(dim) + " feature values, got " +
                                                std::to_string(fields.size() - 1)));
    }
    if (*node >= g.node_count()) {
      throw SchemaError(line_error(line_no, "unknown node id " + std::to_string(*node)));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      auto x = detail::parse_double(detail::trim(fields[j + 1]));
      if (!x) throw ParseError(line_error(line_no, "malformed feature value"));
      values[std::size_t{*node} * dim + j] = *x;
    }
  }
  if (dim == 0) throw SchemaError("feature file contains no rows");
  g.set_features(dim, std::move(values));
}

void parse_labels(std::istream& in, Graph& g) {
  std::vector<int> labels(g.node_count(), -1);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = detail::split_whitespace(view);
    if (fields.size() != 2) throw ParseError(line_error(line_no, "expected \"node_id label\""));
    auto node = detail::parse_integer<NodeId>(fields[0]);
    auto label = detail::parse_integer<int>(fields[1]);
    if (!node || !label) throw ParseError(line_error(line_no, "malformed label line"));
    if (*node >= g.node_count()) {
      throw SchemaError(line_error(line_no, "unknown node id " + std::to_string(*node)));
    }
    labels[*node] = *label;
  }
  g.set_labels(std::move(labels));
}

Graph load_dataset(const std::filesystem::path& edge_path,
                   const std::optional<std::filesystem::path>& feature_path,
                   const std::optional<std::filesystem::path>& label_path) {
  auto open = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw SchemaError("cannot open " + p.string());
    return in;
  };
  auto prefixed = [](const std::filesystem::path& p, const Error& e) -> Error {
    return Error(e.kind(), p.string() + ": " + e.what());
  };
  Graph g;
  {
    auto in = open(edge_path);
    try {
      g = parse_edge_list(in);
    } catch (const Error& e) {
      throw prefixed(edge_path, e);
    }
  }
  if (feature_path) {
    auto in = open(*feature_path);
    try {
      parse_features(in, g);
    } catch (const Error& e) {
      throw prefixed(*feature_path, e);
    }
  }
  if (label_path) {
    auto in = open(*label_path);
    try {
      parse_labels(in, g);
    } catch (const Error& e) {
      throw prefixed(*label_path, e);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Subgraphs

std::size_t Subgraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& nbrs : adjacency) twice += nbrs.size();
  return twice / 2;
}

bool Subgraph::has_edge(LocalId u, LocalId v) const {
  const auto& nbrs = adjacency[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<LocalId, LocalId>> Subgraph::edges() const {
  std::vector<std::pair<LocalId, LocalId>> out;
  for (LocalId u = 0; u < adjacency.size(); ++u) {
    for (LocalId v : adjacency[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes,
                          std::span<const NodeId> targets) {
  Subgraph sg;
  sg.nodes.assign(nodes.begin(), nodes.end());
  std::sort(sg.nodes.begin(), sg.nodes.end());
  sg.nodes.erase(std::unique(sg.nodes.begin(), sg.nodes.end()), sg.nodes.end());
  auto local_of = [&](NodeId v) -> std::optional<LocalId> {
    auto it = std::lower_bound(sg.nodes.begin(), sg.nodes.end(), v);
    if (it == sg.nodes.end() || *it != v) return std::nullopt;
    return static_cast<LocalId>(it - sg.nodes.begin());
  };
  sg.adjacency.resize(sg.nodes.size());
  for (LocalId i = 0; i < sg.nodes.size(); ++i) {
    for (NodeId w : g.neighbors(sg.nodes[i])) {
      if (auto j = local_of(w)) sg.adjacency[i].push_back(*j);
    }
  }
  for (NodeId t : targets) {
    auto local = local_of(t);
    if (!local) throw DomainError("target " + std::to_string(t) + " is not in the subgraph");
    sg.targets.push_back(*local);
  }
  return sg;
}

Subgraph extract_ego_subgraph(const Graph& g, std::span<const NodeId> targets, unsigned hops,
                              std::size_t node_cap) {
  if (targets.empty()) throw DomainError("ego extraction needs at least one target");
  if (hops < 1) throw DomainError("hops must be >= 1");
  for (NodeId t : targets) {
    if (!g.contains(t)) throw DomainError("target node " + std::to_string(t) + " is not in the graph");
  }
  if (node_cap < targets.size()) throw DomainError("node_cap is smaller than the target count");

  // Multi-source BFS, recording (layer, id) for every reached node.
  constexpr unsigned unreached = std::numeric_limits<unsigned>::max();
  std::vector<unsigned> dist(g.node_count(), unreached);
  std::vector<NodeId> frontier;
  std::vector<std::pair<unsigned, NodeId>> reached;
  for (NodeId t : targets) {
    if (dist[t] == unreached) {
      dist[t] = 0;
      frontier.push_back(t);
      reached.emplace_back(0, t);
    }
  }
  for (unsigned layer = 1; layer <= hops && !frontier.empty(); ++layer) {
    std::vector<NodeId> next;
    for (NodeId u : frontier) {
      for (NodeId w : g.neighbors(u)) {
        if (dist[w] == unreached) {
          dist[w] = layer;
          next.push_back(w);
          reached.emplace_back(layer, w);
        }
      }
    }
    frontier = std::move(next);
  }
  if (reached.size() > node_cap) {
    std::sort(reached.begin(), reached.end());
    reached.resize(node_cap);
  }
  std::vector<NodeId> nodes;
  nodes.reserve(reached.size());
  for (auto [layer, v] : reached) nodes.push_back(v);
  return induced_subgraph(g, nodes, targets);
}

Subgraph make_subgraph(std::size_t node_count, std::span<const EdgePair> edges,
                       std::span<const NodeId> targets) {
  auto g = Graph::from_edges(node_count, edges);
  std::vector<NodeId> all(node_count);
  for (NodeId v = 0; v < node_count; ++v) all[v] = v;
  return induced_subgraph(g, all, targets);
}

}  // namespace spacedcl
