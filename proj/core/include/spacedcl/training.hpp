#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spacedcl/dataset.hpp"
#include "spacedcl/learner.hpp"

namespace spacedcl {

/// Every train_on call of a run, grouped by epoch; each pass is the sorted id
/// list handed to the learner.
struct PresentationLog {
  std::vector<std::vector<std::vector<SampleId>>> epochs;

  bool operator==(const PresentationLog&) const = default;
};

struct TrainingResult {
  std::vector<std::size_t> presented;  // distinct samples trained on, per epoch
  std::size_t presented_total = 0;
  std::size_t pass_samples_total = 0;  // counting repeats across passes
  std::vector<double> validation;      // full-validation performance after each epoch
  std::size_t best_epoch = 0;
  double best_validation = 0.0;
  std::optional<double> test;  // of the restored best checkpoint, if a test split exists
};

/// Remembers the best full-validation checkpoint; ties keep the earliest.
class CheckpointTracker {
 public:
  void offer(std::size_t epoch, double validation, const Learner& learner) {
    if (!state_ || validation > best_validation_) {
      best_validation_ = validation;
      best_epoch_ = epoch;
      state_ = learner.snapshot();
    }
  }
  /// Restores the best checkpoint and fills the summary fields of `result`.
  void finish(Learner& learner, const SplitIds& splits, TrainingResult& result) const {
    if (state_) learner.restore(*state_);
    result.best_epoch = best_epoch_;
    result.best_validation = best_validation_;
    if (!splits.test.empty()) result.test = learner.eval_on(splits.test);
  }

 private:
  std::optional<std::vector<double>> state_;
  double best_validation_ = 0.0;
  std::size_t best_epoch_ = 0;
};

/// Deduplicated union of several id lists, ascending.
std::vector<SampleId> union_of(std::span<const std::vector<SampleId>> lists);

/// Trains one pass, appending the sorted ids to epoch_log when given.
void train_pass(Learner& learner, std::span<const SampleId> ids, std::vector<std::vector<SampleId>>* epoch_log);

}  // namespace spacedcl
