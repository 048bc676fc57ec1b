#include "spacedcl/baselines.hpp"

#include <algorithm>

#include "spacedcl/error.hpp"

namespace spacedcl {

std::vector<SampleId> union_of(std::span<const std::vector<SampleId>> lists) {
  std::vector<SampleId> out;
  for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void train_pass(Learner& learner, std::span<const SampleId> ids, std::vector<std::vector<SampleId>>* epoch_log) {
  if (epoch_log) {
    std::vector<SampleId> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end());
    epoch_log->push_back(std::move(sorted));
  }
  learner.train_on(ids);
}

TrainingResult run_nocl(Learner& learner, const SplitIds& splits, std::size_t epochs, PresentationLog* log) {
  if (splits.train.empty()) throw DomainError("the training split is empty");
  if (epochs == 0) throw ConfigError("epochs must be at least 1");
  TrainingResult result;
  CheckpointTracker tracker;
  for (std::size_t e = 0; e < epochs; ++e) {
    train_pass(learner, splits.train, log ? &log->epochs.emplace_back() : nullptr);
    result.presented.push_back(splits.train.size());
    result.presented_total += splits.train.size();
    result.pass_samples_total += splits.train.size();
    const double val = learner.eval_on(splits.validation);
    result.validation.push_back(val);
    tracker.offer(e, val, learner);
  }
  tracker.finish(learner, splits, result);
  return result;
}

TrainingResult run_ccl(Learner& learner, const SplitIds& splits, const RankingTable& ranking,
                       const CompetenceParams& competence, PresentationLog* log) {
  competence.validate();
  if (ranking.train_order.empty()) throw DomainError("the training split is empty");
  TrainingResult result;
  CheckpointTracker tracker;
  const std::size_t n = ranking.train_order.size();
  for (std::size_t e = 0; e < competence.epochs; ++e) {
    const std::size_t k = active_count(e, n, competence);
    std::span<const SampleId> top(ranking.train_order.data(), k);
    train_pass(learner, top, log ? &log->epochs.emplace_back() : nullptr);
    result.presented.push_back(k);
    result.presented_total += k;
    result.pass_samples_total += k;
    const double val = learner.eval_on(splits.validation);
    result.validation.push_back(val);
    tracker.offer(e, val, learner);
  }
  tracker.finish(learner, splits, result);
  return result;
}

}  // namespace spacedcl
