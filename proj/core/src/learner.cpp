#include "spacedcl/learner.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "parse_util.hpp"
#include "spacedcl/error.hpp"

namespace spacedcl {

std::vector<double> neighbor_features(const Graph& g, NodeId node) {
  if (!g.has_features()) throw ConfigError("the learner needs node features");
  const std::size_t d = g.feature_dim();
  std::vector<double> out(2 * d, 0.0);
  auto own = g.features(node);
  std::copy(own.begin(), own.end(), out.begin());
  auto nbrs = g.neighbors(node);
  if (nbrs.empty()) return out;
  for (NodeId u : nbrs) {
    auto f = g.features(u);
    for (std::size_t k = 0; k < d; ++k) out[d + k] += f[k];
  }
  for (std::size_t k = 0; k < d; ++k) out[d + k] /= static_cast<double>(nbrs.size());
  return out;
}

namespace {

double sigmoid(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

}  // namespace

NeighborLogisticLearner::NeighborLogisticLearner(const Dataset& data, LearnerConfig config)
    : data_(&data), task_(data.task), config_(config), rng_(config.seed) {
  if (!(config_.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  const Graph& g = data.graph;
  if (!g.has_features()) throw ConfigError("the learner needs node features");
  input_dim_ = 2 * g.feature_dim() + 1;
  inputs_.reserve(g.node_count() * input_dim_);
  double widest = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto f = neighbor_features(g, v);
    double sq = 0.0;
    for (double x : f) sq += x * x;
    widest = std::max(widest, std::sqrt(sq));
    inputs_.insert(inputs_.end(), f.begin(), f.end());
    inputs_.push_back(1.0);
  }
  // The bilinear link score makes the SGD step scale with |x|^2 |W|; one
  // global rescale to unit max norm keeps it from running away.
  if (task_ == Task::link_prediction && widest > 0.0) {
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      if (i % input_dim_ != input_dim_ - 1) inputs_[i] /= widest;
    }
  }
  if (task_ == Task::node_classification) {
    rows_ = static_cast<std::size_t>(std::max(2, data.class_count()));
    params_.assign(rows_ * input_dim_, 0.0);
  } else {
    if (config_.embedding_dim == 0) throw ConfigError("embedding width must be positive");
    rows_ = config_.embedding_dim;
    params_.assign(rows_ * input_dim_ + 1, 0.0);
    // Zero weights are a saddle of the bilinear score; start from small noise
    // drawn from a stream separate from the training shuffle.
    Rng init(config_.seed ^ 0xD1B54A32D192ED03ull);
    for (std::size_t i = 0; i < rows_ * input_dim_; ++i) params_[i] = config_.init_scale * init.normal();
  }
}

std::vector<double> NeighborLogisticLearner::logits(NodeId v) const {
  const double* x = inputs_.data() + static_cast<std::size_t>(v) * input_dim_;
  std::vector<double> z(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* w = params_.data() + r * input_dim_;
    double s = 0.0;
    for (std::size_t k = 0; k < input_dim_; ++k) s += w[k] * x[k];
    z[r] = s;
  }
  return z;
}

double NeighborLogisticLearner::link_logit(SampleId id) const {
  const Sample& s = data_->samples.at(id);
  const auto hu = logits(s.targets[0]);
  const auto hv = logits(s.targets[1]);
  double score = params_.back();
  for (std::size_t r = 0; r < rows_; ++r) score += hu[r] * hv[r];
  return score;
}

std::vector<double> NeighborLogisticLearner::class_probabilities(SampleId id) const {
  const Sample& s = data_->samples.at(id);
  if (task_ != Task::node_classification) {
    const double p = sigmoid(link_logit(id));
    return {1.0 - p, p};
  }
  auto z = logits(s.targets[0]);
  const double m = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    total += v;
  }
  for (double& v : z) v /= total;
  return z;
}

double NeighborLogisticLearner::sample_loss_grad(SampleId id, std::vector<double>* grad, double scale) const {
  const Sample& s = data_->samples.at(id);
  if (task_ == Task::node_classification) {
    const NodeId v = s.targets[0];
    auto z = logits(v);
    const double m = *std::max_element(z.begin(), z.end());
    double total = 0.0;
    for (double zi : z) total += std::exp(zi - m);
    const double lse = m + std::log(total);
    const auto y = static_cast<std::size_t>(s.label);
    if (y >= rows_) throw DomainError("sample " + std::to_string(id) + " label exceeds the class count");
    const double loss = lse - z[y];
    if (grad) {
      const double* x = inputs_.data() + static_cast<std::size_t>(v) * input_dim_;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double coef = scale * (std::exp(z[r] - lse) - (r == y ? 1.0 : 0.0));
        double* g = grad->data() + r * input_dim_;
        for (std::size_t k = 0; k < input_dim_; ++k) g[k] += coef * x[k];
      }
    }
    return loss;
  }
  const NodeId u = s.targets[0];
  const NodeId v = s.targets[1];
  const auto hu = logits(u);
  const auto hv = logits(v);
  double score = params_.back();
  for (std::size_t r = 0; r < rows_; ++r) score += hu[r] * hv[r];
  const double y = s.label == 1 ? 1.0 : 0.0;
  const double loss = std::max(score, 0.0) - y * score + std::log1p(std::exp(-std::abs(score)));
  if (grad) {
    const double coef = scale * (sigmoid(score) - y);
    const double* xu = inputs_.data() + static_cast<std::size_t>(u) * input_dim_;
    const double* xv = inputs_.data() + static_cast<std::size_t>(v) * input_dim_;
    for (std::size_t r = 0; r < rows_; ++r) {
      double* g = grad->data() + r * input_dim_;
      for (std::size_t k = 0; k < input_dim_; ++k) g[k] += coef * (hv[r] * xu[k] + hu[r] * xv[k]);
    }
    grad->back() += coef;
  }
  return loss;
}

void NeighborLogisticLearner::train_on(std::span<const SampleId> ids) {
  if (ids.empty()) return;
  std::vector<SampleId> order(ids.begin(), ids.end());
  std::sort(order.begin(), order.end());
  rng_.shuffle(std::span<SampleId>(order));
  std::vector<double> grad(params_.size());
  for (SampleId id : order) {
    std::fill(grad.begin(), grad.end(), 0.0);
    sample_loss_grad(id, &grad, 1.0);
    for (std::size_t i = 0; i < params_.size(); ++i) params_[i] -= config_.learning_rate * grad[i];
  }
}

std::vector<double> NeighborLogisticLearner::loss_of(std::span<const SampleId> ids) const {
  std::vector<double> out;
  out.reserve(ids.size());
  for (SampleId id : ids) out.push_back(sample_loss_grad(id, nullptr, 0.0));
  return out;
}

std::vector<double> NeighborLogisticLearner::proba_of(std::span<const SampleId> ids) const {
  std::vector<double> out;
  out.reserve(ids.size());
  for (SampleId id : ids) {
    const Sample& s = data_->samples.at(id);
    if (task_ == Task::node_classification) {
      out.push_back(class_probabilities(id).at(static_cast<std::size_t>(s.label)));
    } else {
      const double score = link_logit(id);
      out.push_back(sigmoid(s.label == 1 ? score : -score));
    }
  }
  return out;
}

double NeighborLogisticLearner::eval_on(std::span<const SampleId> ids) const {
  if (ids.empty()) return 0.0;
  if (task_ == Task::node_classification) {
    std::size_t correct = 0;
    for (SampleId id : ids) {
      const auto p = class_probabilities(id);
      const auto pred = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
      if (pred == data_->samples.at(id).label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(ids.size());
  }
  std::size_t tp = 0, fp = 0, fn = 0;
  for (SampleId id : ids) {
    const bool predicted = link_logit(id) > 0.0;
    const bool actual = data_->samples.at(id).label == 1;
    if (predicted && actual) ++tp;
    if (predicted && !actual) ++fp;
    if (!predicted && actual) ++fn;
  }
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

void NeighborLogisticLearner::restore(std::span<const double> state) {
  if (state.size() != params_.size()) {
    throw DomainError("checkpoint has " + std::to_string(state.size()) + " values, model needs " +
                      std::to_string(params_.size()));
  }
  std::copy(state.begin(), state.end(), params_.begin());
}

double NeighborLogisticLearner::mean_loss(std::span<const SampleId> ids) const {
  if (ids.empty()) return 0.0;
  double total = 0.0;
  for (SampleId id : ids) total += sample_loss_grad(id, nullptr, 0.0);
  return total / static_cast<double>(ids.size());
}

std::vector<double> NeighborLogisticLearner::gradient(std::span<const SampleId> ids) const {
  std::vector<double> grad(params_.size(), 0.0);
  if (ids.empty()) return grad;
  const double scale = 1.0 / static_cast<double>(ids.size());
  for (SampleId id : ids) sample_loss_grad(id, &grad, scale);
  return grad;
}

void NeighborLogisticLearner::write_checkpoint(std::ostream& out) const {
  out << "# spacedcl-checkpoint task=" << to_string(task_) << " rows=" << rows_ << " cols=" << input_dim_
      << " seed=" << config_.seed << '\n';
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < input_dim_; ++k) {
      out << (k ? "," : "") << detail::format_double(params_[r * input_dim_ + k]);
    }
    out << '\n';
  }
  if (task_ == Task::link_prediction) out << "bias," << detail::format_double(params_.back()) << '\n';
}

void NeighborLogisticLearner::read_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("# spacedcl-checkpoint")) {
    throw SchemaError("checkpoint: missing header line");
  }
  std::size_t rows = 0, cols = 0;
  for (auto field : detail::split_whitespace(line)) {
    if (field.starts_with("rows=")) rows = detail::parse_integer<std::size_t>(field.substr(5)).value_or(0);
    if (field.starts_with("cols=")) cols = detail::parse_integer<std::size_t>(field.substr(5)).value_or(0);
  }
  if (rows != rows_ || cols != input_dim_) {
    throw SchemaError("checkpoint shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " does not match the model (" + std::to_string(rows_) + "x" + std::to_string(input_dim_) + ")");
  }
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = detail::trim(line);
    if (view.empty()) continue;
    auto fields = detail::split(view, ',');
    std::size_t start = 0;
    if (fields.front() == "bias") start = 1;
    for (std::size_t i = start; i < fields.size(); ++i) {
      auto v = detail::parse_double(detail::trim(fields[i]));
      if (!v) throw ParseError("checkpoint line " + std::to_string(line_no) + ": malformed value");
      values.push_back(*v);
    }
  }
  if (values.size() != params_.size()) throw SchemaError("checkpoint: wrong number of weights");
  params_ = std::move(values);
}

}  // namespace spacedcl
