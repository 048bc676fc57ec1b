#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "spacedcl/dataset.hpp"
#include "spacedcl/rng.hpp"

namespace spacedcl {

/// What the scheduler needs from a model. loss_of, proba_of and eval_on must
/// not change any state that affects later training.
class Learner {
 public:
  virtual ~Learner() = default;

  /// One optimisation pass over the given samples.
  virtual void train_on(std::span<const SampleId> ids) = 0;
  /// Per-sample loss (cross-entropy or binary cross-entropy).
  virtual std::vector<double> loss_of(std::span<const SampleId> ids) const = 0;
  /// Per-sample probability of the correct class.
  virtual std::vector<double> proba_of(std::span<const SampleId> ids) const = 0;
  /// Accuracy for classification, F1 for link prediction.
  virtual double eval_on(std::span<const SampleId> ids) const = 0;

  /// Opaque copy of the trainable state, for best-checkpoint selection.
  virtual std::vector<double> snapshot() const = 0;
  virtual void restore(std::span<const double> state) = 0;
};

/// [own features || mean of neighbour features]; zeros for an isolated node.
std::vector<double> neighbor_features(const Graph& g, NodeId node);

struct LearnerConfig {
  double learning_rate = 0.003;
  std::uint64_t seed = 0;
  /// Link task: width of the node embedding h = W x.
  std::size_t embedding_dim = 16;
  /// Link task: standard deviation of the random initial weights.
  double init_scale = 0.1;
};

/// Logistic model over one round of mean aggregation. Node samples use
/// softmax regression; link samples score sigmoid(h_u . h_v + b) with
/// h = W x over inputs rescaled to unit max norm. Training is per-sample SGD in an order shuffled by the learner's
/// own generator, which only train_on advances.
class NeighborLogisticLearner final : public Learner {
 public:
  NeighborLogisticLearner(const Dataset& data, LearnerConfig config = {});

  void train_on(std::span<const SampleId> ids) override;
  std::vector<double> loss_of(std::span<const SampleId> ids) const override;
  std::vector<double> proba_of(std::span<const SampleId> ids) const override;
  double eval_on(std::span<const SampleId> ids) const override;
  std::vector<double> snapshot() const override { return params_; }
  void restore(std::span<const double> state) override;

  Task task() const noexcept { return task_; }
  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t output_rows() const noexcept { return rows_; }
  const LearnerConfig& config() const noexcept { return config_; }

  std::span<const double> parameters() const noexcept { return params_; }
  void set_parameters(std::span<const double> values) { restore(values); }
  /// Mean loss over ids and its analytic gradient with respect to parameters().
  double mean_loss(std::span<const SampleId> ids) const;
  std::vector<double> gradient(std::span<const SampleId> ids) const;
  /// Class probabilities of a node sample (sums to 1).
  std::vector<double> class_probabilities(SampleId id) const;

  /// CSV weight dump: "# spacedcl-checkpoint" header line with task, rows,
  /// cols and seed, then one comma-separated row per output row (link models
  /// add a final "bias" row).
  void write_checkpoint(std::ostream& out) const;
  /// Loads weights written by write_checkpoint; SchemaError on shape mismatch.
  void read_checkpoint(std::istream& in);

 private:
  double sample_loss_grad(SampleId id, std::vector<double>* grad, double scale) const;
  double link_logit(SampleId id) const;
  std::vector<double> logits(NodeId v) const;

  const Dataset* data_;
  Task task_;
  LearnerConfig config_;
  std::size_t input_dim_ = 0;  // 2 * feature_dim + 1 (bias input)
  std::size_t rows_ = 0;       // classes, or embedding width
  std::vector<double> inputs_;  // per node, input_dim_ values
  std::vector<double> params_;  // rows_ x input_dim_ weights (+1 bias for links)
  Rng rng_;
};

}  // namespace spacedcl
