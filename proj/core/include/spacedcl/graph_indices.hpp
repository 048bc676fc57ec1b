#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "spacedcl/graph.hpp"

namespace spacedcl {

enum class GraphIndexKind : std::uint8_t {
  // degree based
  degree,
  treewidth_min_degree,
  degree_mixing_matrix,
  average_neighbor_degree,
  average_degree_connectivity,
  degree_assortativity_coefficient,
  // centrality
  katz_centrality,
  degree_centrality,
  closeness_centrality,
  eigenvector_centrality,
  group_degree_centrality,
  // flow
  min_weighted_dominating_set,
  min_weighted_vertex_cover,
  min_edge_dominating_set,
  min_maximal_matching,
  // computing based
  ramsey_r2,
  average_clustering,
  resource_allocation_index,
  // connectivity
  subgraph_connectivity,
  local_node_connectivity,
  // basic properties
  large_clique_size,
  common_neighbors,
  number_of_edges,
  number_of_nodes,
  density,
  local_bridges,
};

enum class GraphIndexCategory : std::uint8_t { degree, centrality, flow, computing, connectivity, basic };

inline constexpr std::size_t graph_index_count = 26;
extern const std::array<GraphIndexKind, graph_index_count> all_graph_index_kinds;

std::string_view to_string(GraphIndexKind kind) noexcept;
std::string_view to_string(GraphIndexCategory category) noexcept;
std::optional<GraphIndexKind> parse_graph_index_kind(std::string_view name) noexcept;
GraphIndexCategory category_of(GraphIndexKind kind) noexcept;
/// Kinds defined on a target pair rather than on a single subgraph.
bool is_pairwise(GraphIndexKind kind) noexcept;

struct GraphIndexOptions {
  /// Use the e / (v (v-1)) density instead of the undirected 2e / (v (v-1)).
  bool literal_density = false;
  double katz_alpha = 0.1;
  double katz_beta = 1.0;
  int max_iter = 1000;
  double tol = 1e-6;
};

/// Raw complexity score of one subgraph. Node-valued kinds are evaluated at
/// the targets (summed when there are several); graph-valued kinds use the
/// whole subgraph; set-valued kinds return the set size. Degenerate inputs
/// score 0. Pairwise kinds throw DomainError unless there are exactly two
/// targets.
double compute_index(GraphIndexKind kind, const Subgraph& sg, const GraphIndexOptions& opts = {});

/// Scores of the approximation/heuristic family (flow kinds, ramsey_r2,
/// large_clique_size, treewidth_min_degree). Throws DomainError for any
/// other kind.
double approx_cover_family(GraphIndexKind kind, const Subgraph& sg);

// ---------------------------------------------------------------------------
// Building blocks. Every routine is deterministic; internal choices break
// ties by ascending local id.

/// Katz recurrence x = alpha A x + beta, solved by fixed-point iteration until
/// the L2 change drops below tol, then normalised to unit L2. Returns nullopt
/// when alpha >= 1 / lambda_max or the iteration does not converge.
std::optional<std::vector<double>> katz_centrality(const Subgraph& sg, double alpha = 0.1, double beta = 1.0,
                                                   int max_iter = 1000, double tol = 1e-6);
/// Power iteration on (A + I), unit-L2 normalised; nullopt on non-convergence.
std::optional<std::vector<double>> eigenvector_centrality(const Subgraph& sg, int max_iter = 1000,
                                                          double tol = 1e-6);
/// Wasserman-Faust closeness: ((r-1)/sum_d) * ((r-1)/(n-1)) over the r nodes
/// reachable from each node.
std::vector<double> closeness_centrality(const Subgraph& sg);
/// Local clustering coefficient per node.
std::vector<double> clustering(const Subgraph& sg);

/// 2-approximate cover: both endpoints of a greedy maximal matching in
/// lexicographic edge order.
std::vector<LocalId> approx_vertex_cover(const Subgraph& sg);
/// Greedy dominating set, each step taking the node that dominates the most
/// not-yet-dominated nodes.
std::vector<LocalId> greedy_dominating_set(const Subgraph& sg);
/// Greedy maximal matching in lexicographic edge order.
std::vector<std::pair<LocalId, LocalId>> maximal_matching(const Subgraph& sg);
/// Small maximal matching: repeatedly takes the eligible edge that dominates
/// the most not-yet-dominated edges.
std::vector<std::pair<LocalId, LocalId>> min_maximal_matching(const Subgraph& sg);

struct RamseyResult {
  std::vector<LocalId> clique;
  std::vector<LocalId> independent_set;
};
/// Recursive Ramsey construction (pivot = smallest remaining id).
RamseyResult ramsey_r2(const Subgraph& sg);
/// Degree-pruned greedy clique search; at least one node for a non-empty graph.
std::vector<LocalId> large_clique(const Subgraph& sg);
/// Upper bound on treewidth from min-degree elimination.
int treewidth_min_degree(const Subgraph& sg);

/// Maximum number of internally vertex-disjoint s-t paths for non-adjacent
/// s, t. For adjacent targets: 1 + the same quantity with the edge removed.
int local_node_connectivity(const Subgraph& sg, LocalId s, LocalId t);
/// Minimum vertex cut of the whole subgraph (n - 1 for complete graphs,
/// 0 when disconnected or a single node).
int node_connectivity(const Subgraph& sg);

}  // namespace spacedcl
