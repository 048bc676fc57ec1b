#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spacedcl/error.hpp"
#include "spacedcl/kernels.hpp"

namespace spacedcl {

std::string_view to_string(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::lap: return "lap";
    case KernelKind::sec: return "sec";
    case KernelKind::cos: return "cos";
    case KernelKind::qua: return "qua";
    case KernelKind::lin: return "lin";
  }
  return "lap";
}

std::optional<KernelKind> parse_kernel_kind(std::string_view s) noexcept {
  for (auto k : all_kernel_kinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

double kernel_eval(KernelKind kind, double x, double tau, KernelOptions opts) {
  if (!(x >= 0.0)) throw DomainError("kernel argument must be non-negative");
  if (!(tau > 0.0)) throw DomainError("kernel tau must be positive");
  switch (kind) {
    case KernelKind::lap: return std::exp(-x * tau);
    case KernelKind::sec: {
      const double a = tau * x * x;
      if (a > 700.0) return 0.0;
      return 2.0 / (std::exp(-a) + std::exp(a));
    }
    case KernelKind::cos: {
      if (x * tau >= 1.0) return 0.0;
      const double c = std::cos(tau * std::numbers::pi * x);
      return opts.literal_cosine ? 0.5 * c + 1.0 : 0.5 * (c + 1.0);
    }
    case KernelKind::qua: {
      const double v = 1.0 - tau * x * x;
      return v > 0.0 ? v : 0.0;
    }
    case KernelKind::lin: {
      const double v = 1.0 - tau * x;
      return v > 0.0 ? v : 0.0;
    }
  }
  return 0.0;
}

double solve_delay_x(KernelKind kind, double eta, double tau, KernelOptions opts) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("eta must lie in (0, 1)");
  if (!(tau > 0.0)) throw DomainError("kernel tau must be positive");
  switch (kind) {
    case KernelKind::lap: return -std::log(eta) / tau;
    case KernelKind::sec: return std::sqrt(std::acosh(1.0 / eta) / tau);
    case KernelKind::cos:
      if (opts.literal_cosine) {
        // Below 0.5 the literal curve jumps straight to 0 at the support edge.
        if (eta <= 0.5) return 1.0 / tau;
        return std::acos(2.0 * eta - 2.0) / (tau * std::numbers::pi);
      }
      return std::acos(2.0 * eta - 1.0) / (tau * std::numbers::pi);
    case KernelKind::qua: return std::sqrt((1.0 - eta) / tau);
    case KernelKind::lin: return (1.0 - eta) / tau;
  }
  return 0.0;
}

double tau_objective(KernelKind kind, std::span<const TauSample> samples, double eta, double tau,
                     KernelOptions opts) {
  double sum = 0.0;
  for (const auto& s : samples) {
    if (s.p < eta) continue;
    const double r = kernel_eval(kind, s.x, tau, opts) - s.p;
    sum += r * r;
  }
  return sum;
}

double fit_tau(KernelKind kind, std::span<const TauSample> samples, double eta, double previous_tau,
               TauBounds bounds, KernelOptions opts) {
  if (samples.empty()) throw DomainError("fit_tau needs at least one sample");
  if (!(bounds.min > 0.0 && bounds.max > bounds.min)) throw ConfigError("invalid tau bounds");
  std::vector<TauSample> kept;
  for (const auto& s : samples) {
    if (!(s.x >= 0.0) || !std::isfinite(s.x) || !std::isfinite(s.p)) throw DomainError("fit_tau: non-finite sample");
    if (s.p >= eta) kept.push_back(s);
  }
  if (kept.empty()) return previous_tau;

  const double lo = std::log(bounds.min);
  const double hi = std::log(bounds.max);
  auto objective = [&](double log_tau) { return tau_objective(kind, kept, eta, std::exp(log_tau), opts); };

  constexpr int grid = 241;
  std::vector<double> values(grid);
  std::size_t best = 0;
  for (int i = 0; i < grid; ++i) {
    values[i] = objective(lo + (hi - lo) * i / (grid - 1));
    if (values[i] < values[best]) best = static_cast<std::size_t>(i);
  }
  const double worst = *std::max_element(values.begin(), values.end());
  if (worst - values[best] <= 1e-15 * (1.0 + values[best])) return bounds.min;

  // Golden-section search between the grid neighbours of the best point.
  double a = lo + (hi - lo) * static_cast<double>(best == 0 ? 0 : best - 1) / (grid - 1);
  double b = lo + (hi - lo) * static_cast<double>(std::min<std::size_t>(best + 1, grid - 1)) / (grid - 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > 1e-6) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  double x = 0.5 * (a + b);
  // Never return something worse than the grid point that seeded the bracket.
  const double grid_x = lo + (hi - lo) * static_cast<double>(best) / (grid - 1);
  if (objective(x) > values[best]) x = grid_x;
  return std::clamp(std::exp(x), bounds.min, bounds.max);
}

double compute_delay(KernelKind kind, double eta, double tau, std::span<const double> losses, double gamma,
                     double remaining, KernelOptions opts) {
  if (losses.empty()) throw DomainError("compute_delay needs at least one loss");
  const double cap = std::max(1.0, remaining);
  const double g = std::max(gamma, 1e-6);
  const double x_star = solve_delay_x(kind, eta, tau, opts);
  double sum = 0.0;
  for (double d : losses) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("losses must be finite and non-negative");
    sum += std::min(cap, x_star * g / std::max(d, 1e-8));
  }
  return std::clamp(sum / static_cast<double>(losses.size()), 1.0, cap);
}

}  // namespace spacedcl
