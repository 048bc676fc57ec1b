#include "spacedcl/graph_indices.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "spacedcl/error.hpp"
#include "spacedcl/log.hpp"

namespace spacedcl {

const std::array<GraphIndexKind, graph_index_count> all_graph_index_kinds = {
    GraphIndexKind::degree,
    GraphIndexKind::treewidth_min_degree,
    GraphIndexKind::degree_mixing_matrix,
    GraphIndexKind::average_neighbor_degree,
    GraphIndexKind::average_degree_connectivity,
    GraphIndexKind::degree_assortativity_coefficient,
    GraphIndexKind::katz_centrality,
    GraphIndexKind::degree_centrality,
    GraphIndexKind::closeness_centrality,
    GraphIndexKind::eigenvector_centrality,
    GraphIndexKind::group_degree_centrality,
    GraphIndexKind::min_weighted_dominating_set,
    GraphIndexKind::min_weighted_vertex_cover,
    GraphIndexKind::min_edge_dominating_set,
    GraphIndexKind::min_maximal_matching,
    GraphIndexKind::ramsey_r2,
    GraphIndexKind::average_clustering,
    GraphIndexKind::resource_allocation_index,
    GraphIndexKind::subgraph_connectivity,
    GraphIndexKind::local_node_connectivity,
    GraphIndexKind::large_clique_size,
    GraphIndexKind::common_neighbors,
    GraphIndexKind::number_of_edges,
    GraphIndexKind::number_of_nodes,
    GraphIndexKind::density,
    GraphIndexKind::local_bridges,
};

std::string_view to_string(GraphIndexKind kind) noexcept {
  switch (kind) {
    case GraphIndexKind::degree: return "degree";
    case GraphIndexKind::treewidth_min_degree: return "treewidth_min_degree";
    case GraphIndexKind::degree_mixing_matrix: return "degree_mixing_matrix";
    case GraphIndexKind::average_neighbor_degree: return "average_neighbor_degree";
    case GraphIndexKind::average_degree_connectivity: return "average_degree_connectivity";
    case GraphIndexKind::degree_assortativity_coefficient: return "degree_assortativity_coefficient";
    case GraphIndexKind::katz_centrality: return "katz_centrality";
    case GraphIndexKind::degree_centrality: return "degree_centrality";
    case GraphIndexKind::closeness_centrality: return "closeness_centrality";
    case GraphIndexKind::eigenvector_centrality: return "eigenvector_centrality";
    case GraphIndexKind::group_degree_centrality: return "group_degree_centrality";
    case GraphIndexKind::min_weighted_dominating_set: return "min_weighted_dominating_set";
    case GraphIndexKind::min_weighted_vertex_cover: return "min_weighted_vertex_cover";
    case GraphIndexKind::min_edge_dominating_set: return "min_edge_dominating_set";
    case GraphIndexKind::min_maximal_matching: return "min_maximal_matching";
    case GraphIndexKind::ramsey_r2: return "ramsey_r2";
    case GraphIndexKind::average_clustering: return "average_clustering";
    case GraphIndexKind::resource_allocation_index: return "resource_allocation_index";
    case GraphIndexKind::subgraph_connectivity: return "subgraph_connectivity";
    case GraphIndexKind::local_node_connectivity: return "local_node_connectivity";
    case GraphIndexKind::large_clique_size: return "large_clique_size";
    case GraphIndexKind::common_neighbors: return "common_neighbors";
    case GraphIndexKind::number_of_edges: return "number_of_edges";
    case GraphIndexKind::number_of_nodes: return "number_of_nodes";
    case GraphIndexKind::density: return "density";
    case GraphIndexKind::local_bridges: return "local_bridges";
  }
  return "unknown";
}

std::string_view to_string(GraphIndexCategory category) noexcept {
  switch (category) {
    case GraphIndexCategory::degree: return "degree";
    case GraphIndexCategory::centrality: return "centrality";
    case GraphIndexCategory::flow: return "flow";
    case GraphIndexCategory::computing: return "computing";
    case GraphIndexCategory::connectivity: return "connectivity";
    case GraphIndexCategory::basic: return "basic";
  }
  return "unknown";
}

std::optional<GraphIndexKind> parse_graph_index_kind(std::string_view name) noexcept {
  for (auto kind : all_graph_index_kinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

GraphIndexCategory category_of(GraphIndexKind kind) noexcept {
  const auto k = static_cast<int>(kind);
  if (k <= static_cast<int>(GraphIndexKind::degree_assortativity_coefficient)) return GraphIndexCategory::degree;
  if (k <= static_cast<int>(GraphIndexKind::group_degree_centrality)) return GraphIndexCategory::centrality;
  if (k <= static_cast<int>(GraphIndexKind::min_maximal_matching)) return GraphIndexCategory::flow;
  if (k <= static_cast<int>(GraphIndexKind::resource_allocation_index)) return GraphIndexCategory::computing;
  if (k <= static_cast<int>(GraphIndexKind::local_node_connectivity)) return GraphIndexCategory::connectivity;
  return GraphIndexCategory::basic;
}

bool is_pairwise(GraphIndexKind kind) noexcept {
  return kind == GraphIndexKind::common_neighbors || kind == GraphIndexKind::resource_allocation_index ||
         kind == GraphIndexKind::local_node_connectivity;
}

namespace {

using Matrix = std::vector<std::vector<char>>;

Matrix adjacency_matrix(const Subgraph& sg) {
  Matrix m(sg.size(), std::vector<char>(sg.size(), 0));
  for (LocalId u = 0; u < sg.size(); ++u) {
    for (LocalId v : sg.adjacency[u]) m[u][v] = 1;
  }
  return m;
}

std::vector<LocalId> common_neighbor_list(const Subgraph& sg, LocalId a, LocalId b) {
  std::vector<LocalId> out;
  std::set_intersection(sg.adjacency[a].begin(), sg.adjacency[a].end(), sg.adjacency[b].begin(),
                        sg.adjacency[b].end(), std::back_inserter(out));
  return out;
}

bool is_connected(const Subgraph& sg) {
  if (sg.size() == 0) return true;
  std::vector<char> seen(sg.size(), 0);
  std::vector<LocalId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    LocalId u = stack.back();
    stack.pop_back();
    for (LocalId w : sg.adjacency[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == sg.size();
}

// Unit-capacity vertex-disjoint path counting by max-flow on the split graph.
class VertexFlow {
 public:
  VertexFlow(const Subgraph& sg, LocalId s, LocalId t, bool drop_direct_edge) : n_(sg.size()) {
    head_.assign(2 * n_, -1);
    const int inf = static_cast<int>(n_) + 1;
    for (LocalId v = 0; v < n_; ++v) {
      add_edge(in(v), out(v), (v == s || v == t) ? inf : 1);
    }
    for (auto [u, v] : sg.edges()) {
      if (drop_direct_edge && ((u == s && v == t) || (u == t && v == s))) continue;
      add_edge(out(u), in(v), inf);
      add_edge(out(v), in(u), inf);
    }
    source_ = out(s);
    sink_ = in(t);
  }

  int max_flow() {
    int flow = 0;
    std::vector<int> parent_edge(2 * n_);
    while (true) {
      std::fill(parent_edge.begin(), parent_edge.end(), -1);
      std::deque<int> queue{source_};
      std::vector<char> seen(2 * n_, 0);
      seen[source_] = 1;
      while (!queue.empty() && !seen[sink_]) {
        int u = queue.front();
        queue.pop_front();
        for (int e = head_[u]; e != -1; e = next_[e]) {
          if (cap_[e] > 0 && !seen[to_[e]]) {
            seen[to_[e]] = 1;
            parent_edge[to_[e]] = e;
            queue.push_back(to_[e]);
          }
        }
      }
      if (!seen[sink_]) return flow;
      int bottleneck = std::numeric_limits<int>::max();
      for (int v = sink_; v != source_; v = to_[parent_edge[v] ^ 1]) bottleneck = std::min(bottleneck, cap_[parent_edge[v]]);
      for (int v = sink_; v != source_; v = to_[parent_edge[v] ^ 1]) {
        cap_[parent_edge[v]] -= bottleneck;
        cap_[parent_edge[v] ^ 1] += bottleneck;
      }
      flow += bottleneck;
    }
  }

 private:
  int in(LocalId v) const { return static_cast<int>(2 * v); }
  int out(LocalId v) const { return static_cast<int>(2 * v + 1); }

  void add_edge(int u, int v, int c) {
    to_.push_back(v);
    cap_.push_back(c);
    next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u);
    cap_.push_back(0);
    next_.push_back(head_[v]);
    head_[v] = static_cast<int>(to_.size()) - 1;
  }

  std::size_t n_;
  std::vector<int> head_, to_, cap_, next_;
  int source_ = 0;
  int sink_ = 0;
};

int disjoint_paths(const Subgraph& sg, LocalId s, LocalId t, bool drop_direct_edge) {
  return VertexFlow(sg, s, t, drop_direct_edge).max_flow();
}

void require_targets(const Subgraph& sg, GraphIndexKind kind) {
  if (sg.targets.empty()) {
    throw DomainError(std::string(to_string(kind)) + " is evaluated at the sample targets; none given");
  }
}

void require_pair(const Subgraph& sg, GraphIndexKind kind) {
  if (sg.targets.size() != 2) {
    throw DomainError(std::string(to_string(kind)) + " needs exactly 2 targets, got " +
                      std::to_string(sg.targets.size()));
  }
}

template <typename F>
double sum_over_targets(const Subgraph& sg, F&& per_node) {
  double total = 0.0;
  for (LocalId t : sg.targets) total += per_node(t);
  return total;
}

double finite_or_zero(double x) { return std::isfinite(x) ? x : 0.0; }

double degree_mixing_mean(const Subgraph& sg) {
  const auto edges = sg.edges();
  if (edges.empty()) return 0.0;
  std::map<std::size_t, std::size_t> slot;
  for (auto [u, v] : edges) {
    slot.emplace(sg.degree(u), 0);
    slot.emplace(sg.degree(v), 0);
  }
  std::size_t k = 0;
  for (auto& [deg, idx] : slot) idx = k++;
  std::vector<double> joint(k * k, 0.0);
  for (auto [u, v] : edges) {
    const auto a = slot[sg.degree(u)];
    const auto b = slot[sg.degree(v)];
    joint[a * k + b] += 1.0;
    joint[b * k + a] += 1.0;
  }
  const double total = 2.0 * static_cast<double>(edges.size());
  double sum = 0.0;
  for (double& x : joint) {
    x /= total;
    sum += x;
  }
  return sum / static_cast<double>(joint.size());
}

double average_neighbor_degree_at(const Subgraph& sg, LocalId v) {
  if (sg.degree(v) == 0) return 0.0;
  double s = 0.0;
  for (LocalId w : sg.adjacency[v]) s += static_cast<double>(sg.degree(w));
  return s / static_cast<double>(sg.degree(v));
}

double average_degree_connectivity_top(const Subgraph& sg) {
  // k_nn(k) = sum over nodes of degree k of their neighbour-degree sums,
  // divided by sum of k over those nodes; reported at the largest k.
  std::size_t max_deg = 0;
  for (LocalId v = 0; v < sg.size(); ++v) max_deg = std::max(max_deg, sg.degree(v));
  if (max_deg == 0) return 0.0;
  double num = 0.0;
  double den = 0.0;
  for (LocalId v = 0; v < sg.size(); ++v) {
    if (sg.degree(v) != max_deg) continue;
    for (LocalId w : sg.adjacency[v]) num += static_cast<double>(sg.degree(w));
    den += static_cast<double>(max_deg);
  }
  return num / den;
}

double degree_assortativity(const Subgraph& sg) {
  const auto edges = sg.edges();
  if (edges.empty()) return 0.0;
  // Pearson correlation over both orientations of every edge.
  const double m2 = 2.0 * static_cast<double>(edges.size());
  double sum = 0.0, sum_sq = 0.0, sum_xy = 0.0;
  for (auto [u, v] : edges) {
    const double du = static_cast<double>(sg.degree(u));
    const double dv = static_cast<double>(sg.degree(v));
    sum += du + dv;
    sum_sq += du * du + dv * dv;
    sum_xy += 2.0 * du * dv;
  }
  const double mean = sum / m2;
  const double var = sum_sq / m2 - mean * mean;
  if (var <= 1e-12) return 0.0;
  return finite_or_zero((sum_xy / m2 - mean * mean) / var);
}

double degree_centrality_at(const Subgraph& sg, LocalId v) {
  if (sg.size() <= 1) return 1.0;
  return static_cast<double>(sg.degree(v)) / static_cast<double>(sg.size() - 1);
}

double group_degree_centrality(const Subgraph& sg) {
  std::vector<char> in_group(sg.size(), 0);
  std::size_t group_size = 0;
  for (LocalId t : sg.targets) {
    if (!in_group[t]) {
      in_group[t] = 1;
      ++group_size;
    }
  }
  if (sg.size() == group_size) return 0.0;
  std::vector<char> reached(sg.size(), 0);
  std::size_t count = 0;
  for (LocalId t : sg.targets) {
    for (LocalId w : sg.adjacency[t]) {
      if (!in_group[w] && !reached[w]) {
        reached[w] = 1;
        ++count;
      }
    }
  }
  return static_cast<double>(count) / static_cast<double>(sg.size() - group_size);
}

double resource_allocation(const Subgraph& sg) {
  double s = 0.0;
  for (LocalId k : common_neighbor_list(sg, sg.targets[0], sg.targets[1])) {
    s += 1.0 / static_cast<double>(sg.degree(k));
  }
  return s;
}

double density_of(const Subgraph& sg, bool literal) {
  const double v = static_cast<double>(sg.size());
  if (sg.size() <= 1) return 0.0;
  const double e = static_cast<double>(sg.edge_count());
  return (literal ? e : 2.0 * e) / (v * (v - 1.0));
}

std::size_t count_local_bridges(const Subgraph& sg) {
  std::size_t count = 0;
  for (auto [u, v] : sg.edges()) {
    if (common_neighbor_list(sg, u, v).empty()) ++count;
  }
  return count;
}

double lambda_max(const Subgraph& sg) {
  // Power iteration on (A + I); its dominant eigenvalue is lambda_max(A) + 1.
  const std::size_t n = sg.size();
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    std::vector<double> y(x);
    for (LocalId u = 0; u < n; ++u) {
      for (LocalId w : sg.adjacency[u]) y[w] += x[u];
    }
    double norm = 0.0;
    for (double z : y) norm += z * z;
    norm = std::sqrt(norm);
    const double next_lambda = norm - 1.0;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    if (std::abs(next_lambda - lambda) < 1e-12) return next_lambda;
    lambda = next_lambda;
  }
  return lambda;
}

}  // namespace

// ---------------------------------------------------------------------------
// Centralities

std::optional<std::vector<double>> katz_centrality(const Subgraph& sg, double alpha, double beta, int max_iter,
                                                   double tol) {
  if (tol <= 0) throw DomainError("katz tolerance must be positive");
  const std::size_t n = sg.size();
  if (n == 0) return std::vector<double>{};
  std::size_t max_deg = 0;
  for (LocalId v = 0; v < n; ++v) max_deg = std::max(max_deg, sg.degree(v));
  if (alpha * static_cast<double>(max_deg) >= 1.0 && alpha * lambda_max(sg) >= 1.0) return std::nullopt;

  std::vector<double> x(n, 0.0);
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> next(n, 0.0);
    for (LocalId u = 0; u < n; ++u) {
      for (LocalId w : sg.adjacency[u]) next[w] += x[u];
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = alpha * next[i] + beta;
      change += (next[i] - x[i]) * (next[i] - x[i]);
    }
    x = std::move(next);
    if (std::sqrt(change) < tol) {
      double norm = 0.0;
      for (double z : x) norm += z * z;
      norm = std::sqrt(norm);
      if (norm == 0.0) return std::vector<double>(n, 0.0);
      for (double& z : x) z /= norm;
      return x;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<double>> eigenvector_centrality(const Subgraph& sg, int max_iter, double tol) {
  const std::size_t n = sg.size();
  if (n == 0) return std::nullopt;
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> next(x);
    for (LocalId u = 0; u < n; ++u) {
      for (LocalId w : sg.adjacency[u]) next[w] += x[u];
    }
    double norm = 0.0;
    for (double z : next) norm += z * z;
    norm = std::sqrt(norm);
    if (norm == 0.0) norm = 1.0;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= norm;
      change += std::abs(next[i] - x[i]);
    }
    x = std::move(next);
    if (change < static_cast<double>(n) * tol) return x;
  }
  return std::nullopt;
}

std::vector<double> closeness_centrality(const Subgraph& sg) {
  const std::size_t n = sg.size();
  std::vector<double> out(n, 0.0);
  std::vector<int> dist(n);
  for (LocalId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::deque<LocalId> queue{s};
    double total = 0.0;
    std::size_t reached = 1;
    while (!queue.empty()) {
      LocalId u = queue.front();
      queue.pop_front();
      for (LocalId w : sg.adjacency[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          total += dist[w];
          ++reached;
          queue.push_back(w);
        }
      }
    }
    if (total > 0.0 && n > 1) {
      const double r1 = static_cast<double>(reached - 1);
      out[s] = (r1 / total) * (r1 / static_cast<double>(n - 1));
    }
  }
  return out;
}

std::vector<double> clustering(const Subgraph& sg) {
  std::vector<double> out(sg.size(), 0.0);
  for (LocalId v = 0; v < sg.size(); ++v) {
    const auto& nbrs = sg.adjacency[v];
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (sg.has_edge(nbrs[i], nbrs[j])) ++links;
      }
    }
    out[v] = 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Approximation family

std::vector<LocalId> approx_vertex_cover(const Subgraph& sg) {
  std::vector<char> in_cover(sg.size(), 0);
  for (auto [u, v] : sg.edges()) {
    if (!in_cover[u] && !in_cover[v]) {
      in_cover[u] = 1;
      in_cover[v] = 1;
    }
  }
  std::vector<LocalId> out;
  for (LocalId v = 0; v < sg.size(); ++v) {
    if (in_cover[v]) out.push_back(v);
  }
  return out;
}

std::vector<LocalId> greedy_dominating_set(const Subgraph& sg) {
  const std::size_t n = sg.size();
  std::vector<char> dominated(n, 0), chosen(n, 0);
  std::size_t remaining = n;
  std::vector<LocalId> out;
  while (remaining > 0) {
    LocalId best = 0;
    std::size_t best_gain = 0;
    for (LocalId v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      std::size_t gain = dominated[v] ? 0 : 1;
      for (LocalId w : sg.adjacency[v]) gain += dominated[w] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    chosen[best] = 1;
    out.push_back(best);
    if (!dominated[best]) {
      dominated[best] = 1;
      --remaining;
    }
    for (LocalId w : sg.adjacency[best]) {
      if (!dominated[w]) {
        dominated[w] = 1;
        --remaining;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<LocalId, LocalId>> maximal_matching(const Subgraph& sg) {
  std::vector<char> matched(sg.size(), 0);
  std::vector<std::pair<LocalId, LocalId>> out;
  for (auto [u, v] : sg.edges()) {
    if (!matched[u] && !matched[v]) {
      matched[u] = matched[v] = 1;
      out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::pair<LocalId, LocalId>> min_maximal_matching(const Subgraph& sg) {
  const auto edges = sg.edges();
  std::vector<char> matched(sg.size(), 0);
  std::vector<std::pair<LocalId, LocalId>> out;
  while (true) {
    // An edge is dominated once one of its endpoints is matched; pick the
    // eligible edge covering the most undominated edges.
    std::size_t best = edges.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [u, v] = edges[i];
      if (matched[u] || matched[v]) continue;
      std::size_t gain = 0;
      for (LocalId w : sg.adjacency[u]) gain += matched[w] ? 0 : 1;
      for (LocalId w : sg.adjacency[v]) gain += matched[w] ? 0 : 1;
      gain -= 1;  // the edge itself is counted from both ends
      if (best == edges.size() || gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    if (best == edges.size()) break;
    matched[edges[best].first] = matched[edges[best].second] = 1;
    out.push_back(edges[best]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

RamseyResult ramsey_recursive(const Matrix& adj, const std::vector<LocalId>& nodes) {
  if (nodes.empty()) return {};
  const LocalId pivot = nodes.front();
  std::vector<LocalId> nbrs, non_nbrs;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    (adj[pivot][nodes[i]] ? nbrs : non_nbrs).push_back(nodes[i]);
  }
  auto [c1, i1] = ramsey_recursive(adj, nbrs);
  auto [c2, i2] = ramsey_recursive(adj, non_nbrs);
  c1.push_back(pivot);
  i2.push_back(pivot);
  RamseyResult r;
  r.clique = c1.size() >= c2.size() ? std::move(c1) : std::move(c2);
  r.independent_set = i1.size() >= i2.size() ? std::move(i1) : std::move(i2);
  return r;
}

}  // namespace

RamseyResult ramsey_r2(const Subgraph& sg) {
  std::vector<LocalId> nodes(sg.size());
  std::iota(nodes.begin(), nodes.end(), LocalId{0});
  auto r = ramsey_recursive(adjacency_matrix(sg), nodes);
  std::sort(r.clique.begin(), r.clique.end());
  std::sort(r.independent_set.begin(), r.independent_set.end());
  return r;
}

std::vector<LocalId> large_clique(const Subgraph& sg) {
  const std::size_t n = sg.size();
  std::vector<LocalId> best;
  for (LocalId u = 0; u < n; ++u) {
    if (sg.degree(u) < best.size()) continue;  // cannot beat the incumbent
    // Grow greedily from u, always adding the candidate of highest degree.
    std::vector<LocalId> clique{u};
    std::vector<LocalId> cand;
    for (LocalId w : sg.adjacency[u]) {
      if (sg.degree(w) >= best.size()) cand.push_back(w);
    }
    while (!cand.empty()) {
      auto it = std::max_element(cand.begin(), cand.end(), [&](LocalId a, LocalId b) {
        return sg.degree(a) < sg.degree(b) || (sg.degree(a) == sg.degree(b) && a > b);
      });
      const LocalId v = *it;
      clique.push_back(v);
      std::vector<LocalId> next;
      for (LocalId w : cand) {
        if (w != v && sg.has_edge(v, w) && sg.degree(w) >= best.size()) next.push_back(w);
      }
      cand = std::move(next);
    }
    if (clique.size() > best.size()) best = std::move(clique);
  }
  std::sort(best.begin(), best.end());
  return best;
}

int treewidth_min_degree(const Subgraph& sg) {
  const std::size_t n = sg.size();
  if (n == 0) return 0;
  Matrix adj = adjacency_matrix(sg);
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> deg(n);
  for (LocalId v = 0; v < n; ++v) deg[v] = sg.degree(v);
  std::size_t remaining = n;
  int width = 0;
  while (remaining > 0) {
    LocalId v = 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (LocalId u = 0; u < n; ++u) {
      if (alive[u] && deg[u] < best) {
        best = deg[u];
        v = u;
      }
    }
    if (best == remaining - 1) {
      width = std::max(width, static_cast<int>(remaining) - 1);
      break;
    }
    width = std::max(width, static_cast<int>(best));
    std::vector<LocalId> nbrs;
    for (LocalId u = 0; u < n; ++u) {
      if (alive[u] && adj[v][u]) nbrs.push_back(u);
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (!adj[nbrs[i]][nbrs[j]]) {
          adj[nbrs[i]][nbrs[j]] = adj[nbrs[j]][nbrs[i]] = 1;
          ++deg[nbrs[i]];
          ++deg[nbrs[j]];
        }
      }
    }
    for (LocalId u : nbrs) {
      adj[u][v] = adj[v][u] = 0;
      --deg[u];
    }
    alive[v] = 0;
    --remaining;
  }
  return width;
}

int local_node_connectivity(const Subgraph& sg, LocalId s, LocalId t) {
  if (s == t) throw DomainError("local node connectivity needs two distinct nodes");
  if (sg.has_edge(s, t)) return 1 + disjoint_paths(sg, s, t, /*drop_direct_edge=*/true);
  return disjoint_paths(sg, s, t, false);
}

int node_connectivity(const Subgraph& sg) {
  const std::size_t n = sg.size();
  if (n <= 1 || !is_connected(sg)) return 0;
  if (sg.edge_count() == n * (n - 1) / 2) return static_cast<int>(n) - 1;
  LocalId v = 0;
  for (LocalId u = 1; u < n; ++u) {
    if (sg.degree(u) < sg.degree(v)) v = u;
  }
  int k = static_cast<int>(sg.degree(v));
  for (LocalId w = 0; w < n; ++w) {
    if (w == v || sg.has_edge(v, w)) continue;
    k = std::min(k, disjoint_paths(sg, v, w, false));
  }
  const auto& nbrs = sg.adjacency[v];
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (sg.has_edge(nbrs[i], nbrs[j])) continue;
      k = std::min(k, disjoint_paths(sg, nbrs[i], nbrs[j], false));
    }
  }
  return k;
}

double approx_cover_family(GraphIndexKind kind, const Subgraph& sg) {
  if (sg.size() == 0) throw DomainError("index computation needs a non-empty subgraph");
  switch (kind) {
    case GraphIndexKind::min_weighted_dominating_set:
      return static_cast<double>(greedy_dominating_set(sg).size());
    case GraphIndexKind::min_weighted_vertex_cover:
      return static_cast<double>(approx_vertex_cover(sg).size());
    case GraphIndexKind::min_edge_dominating_set:
      return static_cast<double>(maximal_matching(sg).size());
    case GraphIndexKind::min_maximal_matching:
      return static_cast<double>(min_maximal_matching(sg).size());
    case GraphIndexKind::ramsey_r2: {
      auto r = ramsey_r2(sg);
      return static_cast<double>(r.clique.size() * r.independent_set.size());
    }
    case GraphIndexKind::large_clique_size:
      return static_cast<double>(large_clique(sg).size());
    case GraphIndexKind::treewidth_min_degree:
      return static_cast<double>(treewidth_min_degree(sg));
    default:
      throw DomainError(std::string(to_string(kind)) + " is not an approximation-family index");
  }
}

double compute_index(GraphIndexKind kind, const Subgraph& sg, const GraphIndexOptions& opts) {
  if (sg.size() == 0) throw DomainError("index computation needs a non-empty subgraph");
  switch (kind) {
    case GraphIndexKind::degree:
      require_targets(sg, kind);
      return sum_over_targets(sg, [&](LocalId t) { return static_cast<double>(sg.degree(t)); });
    case GraphIndexKind::degree_mixing_matrix:
      return degree_mixing_mean(sg);
    case GraphIndexKind::average_neighbor_degree:
      require_targets(sg, kind);
      return sum_over_targets(sg, [&](LocalId t) { return average_neighbor_degree_at(sg, t); });
    case GraphIndexKind::average_degree_connectivity:
      return average_degree_connectivity_top(sg);
    case GraphIndexKind::degree_assortativity_coefficient:
      return degree_assortativity(sg);
    case GraphIndexKind::katz_centrality: {
      require_targets(sg, kind);
      auto x = katz_centrality(sg, opts.katz_alpha, opts.katz_beta, opts.max_iter, opts.tol);
      if (!x) {
        log_warning("katz centrality did not converge on a " + std::to_string(sg.size()) +
                    "-node subgraph; scoring 0");
        return 0.0;
      }
      return sum_over_targets(sg, [&](LocalId t) { return (*x)[t]; });
    }
    case GraphIndexKind::degree_centrality:
      require_targets(sg, kind);
      return sum_over_targets(sg, [&](LocalId t) { return degree_centrality_at(sg, t); });
    case GraphIndexKind::closeness_centrality: {
      require_targets(sg, kind);
      const auto c = closeness_centrality(sg);
      return sum_over_targets(sg, [&](LocalId t) { return c[t]; });
    }
    case GraphIndexKind::eigenvector_centrality: {
      require_targets(sg, kind);
      auto x = eigenvector_centrality(sg, opts.max_iter, opts.tol);
      if (!x) {
        log_warning("eigenvector centrality did not converge on a " + std::to_string(sg.size()) +
                    "-node subgraph; scoring 0");
        return 0.0;
      }
      return sum_over_targets(sg, [&](LocalId t) { return (*x)[t]; });
    }
    case GraphIndexKind::group_degree_centrality:
      require_targets(sg, kind);
      return group_degree_centrality(sg);
    case GraphIndexKind::average_clustering: {
      const auto c = clustering(sg);
      return std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
    }
    case GraphIndexKind::resource_allocation_index:
      require_pair(sg, kind);
      return resource_allocation(sg);
    case GraphIndexKind::subgraph_connectivity:
      return node_connectivity(sg);
    case GraphIndexKind::local_node_connectivity:
      require_pair(sg, kind);
      if (sg.targets[0] == sg.targets[1]) return 0.0;
      return local_node_connectivity(sg, sg.targets[0], sg.targets[1]);
    case GraphIndexKind::common_neighbors:
      require_pair(sg, kind);
      return static_cast<double>(common_neighbor_list(sg, sg.targets[0], sg.targets[1]).size());
    case GraphIndexKind::number_of_edges:
      return static_cast<double>(sg.edge_count());
    case GraphIndexKind::number_of_nodes:
      return static_cast<double>(sg.size());
    case GraphIndexKind::density:
      return density_of(sg, opts.literal_density);
    case GraphIndexKind::local_bridges:
      return static_cast<double>(count_local_bridges(sg));
    case GraphIndexKind::treewidth_min_degree:
    case GraphIndexKind::min_weighted_dominating_set:
    case GraphIndexKind::min_weighted_vertex_cover:
    case GraphIndexKind::min_edge_dominating_set:
    case GraphIndexKind::min_maximal_matching:
    case GraphIndexKind::ramsey_r2:
    case GraphIndexKind::large_clique_size:
      return approx_cover_family(kind, sg);
  }
  return 0.0;
}

}  // namespace spacedcl
