#pragma once

#include <cstddef>

namespace spacedcl {

struct CompetenceParams {
  double c0 = 0.1;   // initial competence, in [0, 1]
  double alpha = 1.0;  // rate exponent, > 0
  std::size_t epochs = 1;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// min(1, (1 - (1 - c0)(1 - t))^(1/alpha)) for t in [0, 1]; DomainError otherwise.
double competence(double t, const CompetenceParams& p);

/// epoch / max(E - 1, 1), so the last epoch maps to t = 1.
double epoch_time(std::size_t epoch, const CompetenceParams& p);
double competence_at_epoch(std::size_t epoch, const CompetenceParams& p);

/// Number of top-ranked samples available: ceil(n c), clamped to [1, n]
/// (0 only when n is 0).
std::size_t count_for_competence(std::size_t split_size, double c);
std::size_t active_count(std::size_t epoch, std::size_t split_size, const CompetenceParams& p);

}  // namespace spacedcl
