#include "spacedcl/competence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spacedcl/error.hpp"

namespace spacedcl {

void CompetenceParams::validate() const {
  if (!(c0 >= 0.0 && c0 <= 1.0)) throw ConfigError("c0 must lie in [0, 1], got " + std::to_string(c0));
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive, got " + std::to_string(alpha));
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
}

double competence(double t, const CompetenceParams& p) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("competence time must lie in [0, 1], got " + std::to_string(t));
  const double base = 1.0 - (1.0 - p.c0) * (1.0 - t);
  return std::min(1.0, std::pow(base, 1.0 / p.alpha));
}

double epoch_time(std::size_t epoch, const CompetenceParams& p) {
  if (epoch >= p.epochs) {
    throw DomainError("epoch " + std::to_string(epoch) + " outside a run of " + std::to_string(p.epochs));
  }
  const std::size_t span = std::max<std::size_t>(p.epochs - 1, 1);
  return static_cast<double>(epoch) / static_cast<double>(span);
}

double competence_at_epoch(std::size_t epoch, const CompetenceParams& p) {
  return competence(epoch_time(epoch, p), p);
}

std::size_t count_for_competence(std::size_t split_size, double c) {
  if (split_size == 0) return 0;
  // The small offset keeps exact products such as 100 * 0.1 from rounding up.
  const double want = std::ceil(static_cast<double>(split_size) * c - 1e-9);
  if (!(want >= 1.0)) return 1;
  return std::min(split_size, static_cast<std::size_t>(want));
}

std::size_t active_count(std::size_t epoch, std::size_t split_size, const CompetenceParams& p) {
  return count_for_competence(split_size, competence_at_epoch(epoch, p));
}

}  // namespace spacedcl
