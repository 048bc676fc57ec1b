#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace spacedcl {

using NodeId = std::uint32_t;
using LocalId = std::uint32_t;
using EdgePair = std::pair<NodeId, NodeId>;

/// Undirected, unweighted dataset graph. Immutable once built.
///
/// Adjacency is stored as per-node sorted neighbor lists; edges are kept in
/// canonical (u < v) lexicographic order.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Duplicate and reversed edges collapse into one
  /// undirected edge; self-loops and out-of-range ids throw ParseError /
  /// SchemaError.
  static Graph from_edges(std::size_t node_count, std::span<const EdgePair> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<EdgePair>& edges() const noexcept { return edges_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
  bool has_edge(NodeId u, NodeId v) const;
  bool contains(NodeId v) const noexcept { return v < adjacency_.size(); }

  bool has_features() const noexcept { return feature_dim_ > 0; }
  std::size_t feature_dim() const noexcept { return feature_dim_; }
  std::span<const double> features(NodeId v) const;
  /// Row-major node_count x dim matrix.
  void set_features(std::size_t dim, std::vector<double> values);

  bool has_labels() const noexcept { return !labels_.empty(); }
  /// -1 marks a node without a label.
  int label(NodeId v) const { return labels_.empty() ? -1 : labels_.at(v); }
  const std::vector<int>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<int> labels);

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<EdgePair> edges_;
  std::size_t feature_dim_ = 0;
  std::vector<double> features_;
  std::vector<int> labels_;
};

/// Edge list text: "u v" per line (space or tab), '#' comments. An optional
/// "# nodes: N" directive fixes node_count (allowing isolated nodes);
/// otherwise node_count = max id + 1.
Graph parse_edge_list(std::istream& in);
/// Feature CSV: optional header, rows "node_id,f1,...,fd". Rows not present
/// stay zero.
void parse_features(std::istream& in, Graph& g);
/// Label lines: "node_id label".
void parse_labels(std::istream& in, Graph& g);

Graph load_dataset(const std::filesystem::path& edge_path,
                   const std::optional<std::filesystem::path>& feature_path = std::nullopt,
                   const std::optional<std::filesystem::path>& label_path = std::nullopt);

/// Induced subgraph around a sample's targets. Local ids follow ascending
/// original id, so every "ties by node id" rule in the index code is a
/// "ties by local id" rule.
struct Subgraph {
  std::vector<NodeId> nodes;                  // original ids, ascending
  std::vector<std::vector<LocalId>> adjacency;  // local ids, sorted
  std::vector<LocalId> targets;                // local ids of the sample targets

  std::size_t size() const noexcept { return nodes.size(); }
  std::size_t edge_count() const noexcept;
  std::size_t degree(LocalId v) const { return adjacency[v].size(); }
  bool has_edge(LocalId u, LocalId v) const;
  /// Canonical (u < v) edges in lexicographic order.
  std::vector<std::pair<LocalId, LocalId>> edges() const;
};

/// Union of the `hops`-hop neighbourhoods of all targets with induced edges.
/// When the union exceeds node_cap, targets are kept and the remaining slots
/// are filled by BFS layer, then ascending node id.
Subgraph extract_ego_subgraph(const Graph& g, std::span<const NodeId> targets,
                              unsigned hops = 1, std::size_t node_cap = 256);

/// Subgraph induced by an explicit node set.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes,
                          std::span<const NodeId> targets);

/// Convenience for tests and small fixtures: a standalone graph on
/// node_count nodes viewed as a subgraph.
Subgraph make_subgraph(std::size_t node_count, std::span<const EdgePair> edges,
                       std::span<const NodeId> targets = {});

}  // namespace spacedcl
