#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spacedcl/competence.hpp"
#include "spacedcl/index_pipeline.hpp"
#include "spacedcl/kernels.hpp"
#include "spacedcl/records.hpp"
#include "spacedcl/training.hpp"

namespace spacedcl {

struct SchedulerConfig {
  KernelKind kernel = KernelKind::lap;
  double eta = 0.8;
  CompetenceParams competence;
  TauBounds tau_bounds;
  KernelOptions kernel_options;
  /// Force every delay to 1 so all pairs stay current.
  bool pin_delays = false;
  /// Seed of the surrounding run; stored in the record only.
  std::uint64_t seed = 0;

  void validate() const;
};

/// What a pair remembers from its last activation.
struct PairSnapshot {
  std::vector<SampleId> ids;   // evaluated validation samples
  std::vector<double> losses;  // aligned with ids
  double gamma = 0.0;
  std::size_t epoch = 0;
};

struct PairState {
  double delay = 1.0;
  double tau = 1.0;
  std::optional<PairSnapshot> snapshot;
};

/// Samples one current pair trains and is evaluated on this epoch.
struct PairBatch {
  std::size_t pair = 0;
  std::vector<SampleId> train;       // top n c(t) of the training order
  std::vector<SampleId> validation;  // top m c(t) of the validation order
};

struct EpochPlan {
  std::size_t epoch = 0;
  double competence = 0.0;
  std::vector<std::size_t> current;  // delay <= 1
  std::vector<std::size_t> delayed;  // delay > 1
  std::vector<PairBatch> batches;    // one per current pair, same order
  std::vector<SampleId> train_selection;  // deduplicated union, ascending
};

/// A learner's numbers for one current pair, aligned with its validation batch.
struct PairReport {
  std::size_t pair = 0;
  std::vector<double> losses;
  std::vector<double> proba;  // correct-class probability
  double gamma = 0.0;         // performance on the batch
};

/// Step-wise scheduler: plan() says what to train, report() feeds back the
/// evaluation and advances one epoch. Driving it with a learner's numbers is
/// exactly what run_training does.
class SchedulerSession {
 public:
  SchedulerSession(SchedulerConfig config, std::vector<RankingTable> pairs);

  std::size_t epoch() const noexcept { return epoch_; }
  std::size_t epochs() const noexcept { return config_.competence.epochs; }
  bool finished() const noexcept { return epoch_ >= epochs(); }
  const SchedulerConfig& config() const noexcept { return config_; }
  const std::vector<RankingTable>& pairs() const noexcept { return pairs_; }
  const std::vector<PairState>& states() const noexcept { return states_; }
  const CurriculumRecord& record() const noexcept { return record_; }

  /// Plan of the current epoch. Repeated calls return the same plan.
  /// ProtocolError once the run is finished.
  const EpochPlan& plan();

  /// Commits one epoch. Reports must cover each current pair exactly once,
  /// with arrays matching its validation batch; anything else throws before
  /// any state changes (ProtocolError for misaligned or out-of-order calls,
  /// DomainError for invalid values). `validation` is only recorded.
  const RecordEntry& report(std::span<const PairReport> reports, std::optional<double> validation = std::nullopt);

 private:
  SchedulerConfig config_;
  std::vector<RankingTable> pairs_;
  std::vector<PairState> states_;
  std::size_t epoch_ = 0;
  std::optional<EpochPlan> plan_;
  CurriculumRecord record_;
};

/// Delay refit for one pair from its report; exposed for tests.
/// Returns the updated state (tau, delay, snapshot).
PairState update_pair(const SchedulerConfig& config, const PairState& state, const PairBatch& batch,
                      const PairReport& report, std::size_t epoch);

struct TgclResult {
  TrainingResult training;
  CurriculumRecord record;
};

/// The full loop: each epoch trains one pass per current pair, evaluates each
/// current pair on its validation batch, reports, and tracks the best
/// full-validation checkpoint, which is restored at the end.
TgclResult run_training(const SchedulerConfig& config, const std::vector<RankingTable>& pairs, Learner& learner,
                        const SplitIds& splits, PresentationLog* log = nullptr);

}  // namespace spacedcl
