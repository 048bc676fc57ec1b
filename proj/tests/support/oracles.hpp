#pragma once

// Independent reference implementations used as test oracles. Everything here
// works on a dense adjacency matrix and enumerates exhaustively; none of it
// shares code with the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "spacedcl/graph.hpp"
#include "spacedcl/rng.hpp"

namespace oracle {

using spacedcl::EdgePair;

struct Dense {
  int n = 0;
  std::vector<std::vector<int>> a;

  explicit Dense(int n_, const std::vector<EdgePair>& edges = {}) : n(n_), a(n_, std::vector<int>(n_, 0)) {
    for (auto [u, v] : edges) a[u][v] = a[v][u] = 1;
  }
  int degree(int v) const {
    int d = 0;
    for (int w = 0; w < n; ++w) d += a[v][w];
    return d;
  }
  int edges() const {
    int e = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) e += a[u][v];
    return e;
  }
  std::vector<EdgePair> edge_list() const {
    std::vector<EdgePair> out;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (a[u][v]) out.emplace_back(u, v);
    return out;
  }
};

/// Graph number `code` on n nodes: bit i of code toggles the i-th pair (u < v).
inline std::vector<EdgePair> graph_from_code(int n, std::uint64_t code) {
  std::vector<EdgePair> edges;
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (code >> bit & 1u) edges.emplace_back(u, v);
  return edges;
}

inline std::vector<EdgePair> random_graph(int n, double p, spacedcl::Rng& rng) {
  std::vector<EdgePair> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform() < p) edges.emplace_back(u, v);
  return edges;
}

inline double density(const Dense& g) {
  if (g.n <= 1) return 0.0;
  return 2.0 * g.edges() / (static_cast<double>(g.n) * (g.n - 1));
}

inline double clustering(const Dense& g, int v) {
  const int k = g.degree(v);
  if (k < 2) return 0.0;
  int tri = 0;
  for (int a = 0; a < g.n; ++a)
    for (int b = a + 1; b < g.n; ++b)
      if (g.a[v][a] && g.a[v][b] && g.a[a][b]) ++tri;
  return 2.0 * tri / (static_cast<double>(k) * (k - 1));
}

inline double average_clustering(const Dense& g) {
  double s = 0.0;
  for (int v = 0; v < g.n; ++v) s += clustering(g, v);
  return g.n ? s / g.n : 0.0;
}

/// All-pairs shortest path lengths (Floyd-Warshall); -1 when unreachable.
inline std::vector<std::vector<int>> distances(const Dense& g) {
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, inf));
  for (int u = 0; u < g.n; ++u) {
    d[u][u] = 0;
    for (int v = 0; v < g.n; ++v)
      if (g.a[u][v]) d[u][v] = 1;
  }
  for (int k = 0; k < g.n; ++k)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (int& x : row)
      if (x >= inf) x = -1;
  return d;
}

/// Closeness scaled by the reachable fraction (the Wasserman-Faust variant).
inline double closeness(const Dense& g, int v) {
  const auto d = distances(g);
  int reach = 0;
  double total = 0.0;
  for (int w = 0; w < g.n; ++w) {
    if (w == v || d[v][w] < 0) continue;
    ++reach;
    total += d[v][w];
  }
  if (total == 0.0 || g.n <= 1) return 0.0;
  return (reach / total) * (static_cast<double>(reach) / (g.n - 1));
}

inline double degree_centrality(const Dense& g, int v) {
  if (g.n <= 1) return 1.0;
  return static_cast<double>(g.degree(v)) / (g.n - 1);
}

inline int common_neighbors(const Dense& g, int u, int v) {
  int c = 0;
  for (int w = 0; w < g.n; ++w) c += g.a[u][w] && g.a[v][w];
  return c;
}

inline double resource_allocation(const Dense& g, int u, int v) {
  double s = 0.0;
  for (int w = 0; w < g.n; ++w)
    if (g.a[u][w] && g.a[v][w]) s += 1.0 / g.degree(w);
  return s;
}

inline int local_bridges(const Dense& g) {
  int c = 0;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (g.a[u][v] && common_neighbors(g, u, v) == 0) ++c;
  return c;
}

// --- validity checks -------------------------------------------------------

template <typename Ids>
bool is_vertex_cover(const Dense& g, const Ids& cover) {
  std::vector<int> in(g.n, 0);
  for (auto v : cover) in[v] = 1;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (g.a[u][v] && !in[u] && !in[v]) return false;
  return true;
}

template <typename Ids>
bool is_dominating_set(const Dense& g, const Ids& set) {
  std::vector<int> in(g.n, 0);
  for (auto v : set) in[v] = 1;
  for (int v = 0; v < g.n; ++v) {
    bool ok = in[v];
    for (int w = 0; w < g.n && !ok; ++w) ok = g.a[v][w] && in[w];
    if (!ok) return false;
  }
  return true;
}

template <typename Pairs>
bool is_matching(const Dense& g, const Pairs& m) {
  std::vector<int> used(g.n, 0);
  for (auto [u, v] : m) {
    if (!g.a[u][v] || used[u] || used[v]) return false;
    used[u] = used[v] = 1;
  }
  return true;
}

template <typename Pairs>
bool is_maximal_matching(const Dense& g, const Pairs& m) {
  if (!is_matching(g, m)) return false;
  std::vector<int> used(g.n, 0);
  for (auto [u, v] : m) used[u] = used[v] = 1;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (g.a[u][v] && !used[u] && !used[v]) return false;
  return true;
}

template <typename Ids>
bool is_clique(const Dense& g, const Ids& s) {
  std::vector<int> v(s.begin(), s.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j] || !g.a[v[i]][v[j]]) return false;
  return true;
}

template <typename Ids>
bool is_independent_set(const Dense& g, const Ids& s) {
  std::vector<int> v(s.begin(), s.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j] || g.a[v[i]][v[j]]) return false;
  return true;
}

/// Size of the smallest maximal matching, by enumerating every edge subset.
inline int min_maximal_matching_size(const Dense& g) {
  const auto edges = g.edge_list();
  int best = std::numeric_limits<int>::max();
  for (std::uint64_t mask = 0; mask < (1ull << edges.size()); ++mask) {
    std::vector<EdgePair> m;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask >> i & 1u) m.push_back(edges[i]);
    if (static_cast<int>(m.size()) < best && is_maximal_matching(g, m)) best = static_cast<int>(m.size());
  }
  return best;
}

// --- linear algebra and root finding ----------------------------------------

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Katz scores from (I - alpha A) x = beta 1, unit L2 normalised.
inline std::vector<double> katz_exact(const Dense& g, double alpha, double beta) {
  std::vector<std::vector<double>> m(g.n, std::vector<double>(g.n, 0.0));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) m[i][j] = (i == j ? 1.0 : 0.0) - alpha * g.a[i][j];
  auto x = solve_linear(m, std::vector<double>(g.n, beta));
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : x) v /= norm;
  return x;
}

/// Largest root of a decreasing function on [lo, hi] with f(lo) >= 0 >= f(hi).
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
