#include <algorithm>
#include <limits>

#include "spacedcl/error.hpp"
#include "spacedcl/index_pipeline.hpp"
#include "spacedcl/rng.hpp"

namespace spacedcl {

namespace {

using Point = std::vector<double>;

double sq_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

std::vector<Point> seed_plus_plus(const std::vector<Point>& points, std::size_t k, Rng& rng) {
  const std::size_t n = points.size();
  std::vector<Point> centers;
  centers.push_back(points[static_cast<std::size_t>(rng.below(n))]);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_distance(points[i], centers[0]);
  while (centers.size() < k) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t pick = n - 1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.below(n));
    }
    centers.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_distance(points[i], centers.back()));
  }
  return centers;
}

KMeansResult lloyd(const std::vector<Point>& points, std::vector<Point> centers, std::size_t max_iterations) {
  const std::size_t n = points.size();
  const std::size_t k = centers.size();
  const std::size_t dim = points.front().size();
  std::vector<std::size_t> assignment(n, k);  // k = unassigned
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = sq_distance(points[i], centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      next[i] = best;
    }
    // Repair empty clusters with the point farthest from its own center,
    // taken from a cluster that can spare it.
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t a : next) ++sizes[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[next[i]] < 2) continue;
        const double d = sq_distance(points[i], centers[next[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      --sizes[next[far]];
      next[far] = c;
      sizes[c] = 1;
      centers[c] = points[far];
    }
    const bool stable = next == assignment;
    assignment = std::move(next);
    if (stable) break;
    for (std::size_t c = 0; c < k; ++c) {
      Point mean(dim, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (assignment[i] != c) continue;
        for (std::size_t j = 0; j < dim; ++j) mean[j] += points[i][j];
      }
      for (double& v : mean) v /= static_cast<double>(sizes[c]);
      centers[c] = std::move(mean);
    }
  }
  KMeansResult r{std::move(assignment), std::move(centers), 0.0};
  for (std::size_t i = 0; i < n; ++i) r.inertia += sq_distance(points[i], r.centers[r.assignment[i]]);
  return r;
}

}  // namespace

KMeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts, std::size_t max_iterations) {
  if (k == 0) throw ConfigError("k-means needs at least one cluster");
  if (points.size() < k) {
    throw ConfigError("k-means: " + std::to_string(points.size()) + " points cannot fill " + std::to_string(k) +
                      " clusters");
  }
  for (const auto& p : points) {
    if (p.size() != points.front().size()) throw DomainError("k-means: points differ in dimension");
  }
  Rng rng(seed);
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    auto run = lloyd(points, seed_plus_plus(points, k, rng), std::max<std::size_t>(max_iterations, 1));
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

}  // namespace spacedcl
