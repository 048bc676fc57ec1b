#include "spacedcl/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "spacedcl/error.hpp"

namespace spacedcl {

void SchedulerConfig::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must lie in (0, 1), got " + std::to_string(eta));
  competence.validate();
  if (!(tau_bounds.min > 0.0 && tau_bounds.max > tau_bounds.min)) throw ConfigError("invalid tau bounds");
}

SchedulerSession::SchedulerSession(SchedulerConfig config, std::vector<RankingTable> pairs)
    : config_(config), pairs_(std::move(pairs)) {
  config_.validate();
  if (pairs_.empty()) throw ConfigError("the scheduler needs at least one (index, order) pair");
  const std::size_t n = pairs_.front().train_order.size();
  const std::size_t m = pairs_.front().val_order.size();
  if (n == 0) throw DomainError("the training split is empty");
  if (m == 0) throw DomainError("the validation split is empty");
  for (const auto& p : pairs_) {
    if (p.train_order.size() != n || p.val_order.size() != m) {
      throw ConfigError("pair " + p.pair.name() + " ranks a different number of samples than " +
                        pairs_.front().pair.name());
    }
  }
  states_.assign(pairs_.size(), PairState{});

  auto& h = record_.header;
  h.seed = config_.seed;
  for (const auto& p : pairs_) h.pairs.push_back(p.pair.name());
  h.epochs = config_.competence.epochs;
  h.c0 = config_.competence.c0;
  h.alpha = config_.competence.alpha;
  h.kernel = std::string(to_string(config_.kernel));
  h.eta = config_.eta;
  h.train_size = n;
  h.validation_size = m;
  h.config_hash = config_hash(h);
}

const EpochPlan& SchedulerSession::plan() {
  if (finished()) throw ProtocolError("plan requested after the final epoch");
  if (plan_) return *plan_;
  EpochPlan p;
  p.epoch = epoch_;
  p.competence = competence_at_epoch(epoch_, config_.competence);
  const std::size_t nt = count_for_competence(record_.header.train_size, p.competence);
  const std::size_t nv = count_for_competence(record_.header.validation_size, p.competence);
  std::vector<std::vector<SampleId>> selections;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (!config_.pin_delays && states_[i].delay > 1.0) {
      p.delayed.push_back(i);
      continue;
    }
    p.current.push_back(i);
    const auto& r = pairs_[i];
    PairBatch b;
    b.pair = i;
    b.train.assign(r.train_order.begin(), r.train_order.begin() + static_cast<std::ptrdiff_t>(nt));
    b.validation.assign(r.val_order.begin(), r.val_order.begin() + static_cast<std::ptrdiff_t>(nv));
    selections.push_back(b.train);
    p.batches.push_back(std::move(b));
  }
  p.train_selection = union_of(selections);
  plan_ = std::move(p);
  return *plan_;
}

PairState update_pair(const SchedulerConfig& config, const PairState& state, const PairBatch& batch,
                      const PairReport& report, std::size_t epoch) {
  PairState next = state;
  if (state.snapshot) {
    const auto& snap = *state.snapshot;
    std::unordered_map<SampleId, std::size_t> now;
    for (std::size_t j = 0; j < batch.validation.size(); ++j) now.emplace(batch.validation[j], j);
    const double dt = static_cast<double>(epoch - snap.epoch);
    const double g = std::max(snap.gamma, 1e-6);
    std::vector<TauSample> samples;
    for (std::size_t k = 0; k < snap.ids.size(); ++k) {
      auto it = now.find(snap.ids[k]);
      if (it == now.end()) continue;
      samples.push_back({snap.losses[k] * dt / g, report.proba[it->second]});
    }
    if (!samples.empty()) {
      next.tau = fit_tau(config.kernel, samples, config.eta, state.tau, config.tau_bounds, config.kernel_options);
    }
  }
  if (config.pin_delays) {
    next.delay = 1.0;
  } else {
    const auto last = static_cast<double>(config.competence.epochs) - 1.0;
    const double remaining = std::max(1.0, last - static_cast<double>(epoch));
    next.delay = compute_delay(config.kernel, config.eta, next.tau, report.losses, report.gamma, remaining,
                               config.kernel_options);
  }
  next.snapshot = PairSnapshot{batch.validation, report.losses, report.gamma, epoch};
  return next;
}

const RecordEntry& SchedulerSession::report(std::span<const PairReport> reports, std::optional<double> validation) {
  if (finished()) throw ProtocolError("report after the final epoch");
  if (!plan_) throw ProtocolError("report for epoch " + std::to_string(epoch_) + " issued before plan");
  const EpochPlan& p = *plan_;
  if (reports.size() != p.current.size()) {
    throw ProtocolError("expected " + std::to_string(p.current.size()) + " pair reports, got " +
                        std::to_string(reports.size()));
  }
  std::vector<const PairReport*> by_batch(p.batches.size(), nullptr);
  for (const auto& r : reports) {
    auto it = std::find(p.current.begin(), p.current.end(), r.pair);
    if (it == p.current.end()) throw ProtocolError("pair " + std::to_string(r.pair) + " is not current this epoch");
    const auto pos = static_cast<std::size_t>(it - p.current.begin());
    if (by_batch[pos]) throw ProtocolError("pair " + std::to_string(r.pair) + " reported twice");
    const std::size_t want = p.batches[pos].validation.size();
    if (r.losses.size() != want || r.proba.size() != want) {
      throw ProtocolError("pair " + std::to_string(r.pair) + ": expected " + std::to_string(want) +
                          " losses and probabilities, got " + std::to_string(r.losses.size()) + " and " +
                          std::to_string(r.proba.size()));
    }
    for (double d : r.losses) {
      if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("losses must be finite and non-negative");
    }
    for (double q : r.proba) {
      if (!(q >= 0.0 && q <= 1.0)) throw DomainError("probabilities must lie in [0, 1]");
    }
    if (!std::isfinite(r.gamma)) throw DomainError("validation performance must be finite");
    by_batch[pos] = &r;
  }

  std::vector<PairState> next = states_;
  for (std::size_t d : p.delayed) next[d].delay -= 1.0;
  for (std::size_t b = 0; b < p.batches.size(); ++b) {
    const std::size_t i = p.batches[b].pair;
    next[i] = update_pair(config_, states_[i], p.batches[b], *by_batch[b], epoch_);
  }

  RecordEntry e;
  e.epoch = epoch_;
  e.competence = p.competence;
  e.current = p.current;
  e.used.assign(pairs_.size(), false);
  e.gamma.assign(pairs_.size(), std::nullopt);
  for (std::size_t b = 0; b < p.batches.size(); ++b) {
    e.used[p.batches[b].pair] = true;
    e.gamma[p.batches[b].pair] = by_batch[b]->gamma;
  }
  for (const auto& s : next) {
    e.delays.push_back(s.delay);
    e.taus.push_back(s.tau);
  }
  e.presented = p.train_selection.size();
  e.validation = validation;

  states_ = std::move(next);
  record_.entries.push_back(std::move(e));
  plan_.reset();
  ++epoch_;
  return record_.entries.back();
}

TgclResult run_training(const SchedulerConfig& config, const std::vector<RankingTable>& pairs, Learner& learner,
                        const SplitIds& splits, PresentationLog* log) {
  SchedulerSession session(config, pairs);
  TrainingResult result;
  CheckpointTracker tracker;
  while (!session.finished()) {
    const EpochPlan& plan = session.plan();
    const std::size_t epoch = plan.epoch;
    const std::size_t presented = plan.train_selection.size();
    std::vector<std::vector<SampleId>>* epoch_log = nullptr;
    if (log) epoch_log = &log->epochs.emplace_back();
    for (const auto& b : plan.batches) {
      train_pass(learner, b.train, epoch_log);
      result.pass_samples_total += b.train.size();
    }
    std::vector<PairReport> reports;
    for (const auto& b : plan.batches) {
      reports.push_back({b.pair, learner.loss_of(b.validation), learner.proba_of(b.validation),
                         learner.eval_on(b.validation)});
    }
    const double val = learner.eval_on(splits.validation);
    session.report(reports, val);
    result.presented.push_back(presented);
    result.presented_total += presented;
    result.validation.push_back(val);
    tracker.offer(epoch, val, learner);
  }
  tracker.finish(learner, splits, result);
  return {std::move(result), session.record()};
}

}  // namespace spacedcl
