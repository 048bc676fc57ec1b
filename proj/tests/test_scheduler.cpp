#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "spacedcl/error.hpp"
#include "spacedcl/learner.hpp"
#include "spacedcl/scheduler.hpp"
#include "support/fixtures.hpp"

using namespace spacedcl;

namespace {

/// Identity-ordered pairs over n train and m validation ids.
std::vector<RankingTable> plain_pairs(std::size_t count, std::size_t n, std::size_t m) {
  std::vector<RankingTable> out;
  for (std::size_t p = 0; p < count; ++p) {
    RankingTable t;
    t.pair = {"idx" + std::to_string(p), SortOrder::ascending};
    t.train_order.resize(n);
    std::iota(t.train_order.begin(), t.train_order.end(), SampleId{0});
    t.val_order.resize(m);
    std::iota(t.val_order.begin(), t.val_order.end(), static_cast<SampleId>(n));
    out.push_back(std::move(t));
  }
  return out;
}

PairReport uniform_report(const EpochPlan& plan, std::size_t b, double loss, double proba, double gamma) {
  const auto& batch = plan.batches.at(b);
  return {batch.pair, std::vector<double>(batch.validation.size(), loss),
          std::vector<double>(batch.validation.size(), proba), gamma};
}

SchedulerConfig config(std::size_t epochs) {
  SchedulerConfig c;
  c.competence = {0.1, 1.0, epochs};
  return c;
}

struct Synthetic {
  fixture::Pipeline pipe;
  std::vector<RankingTable> pairs;
  SplitIds splits;
};

Synthetic synthetic(std::size_t nodes) {
  SynthParams sp;
  sp.nodes = nodes;
  Synthetic s{fixture::synthetic_pipeline(sp), {}, {}};
  s.pairs = build_rankings(s.pipe.matrix, {"degree", "closeness_centrality", "average_clustering"},
                           std::vector<SortOrder>(all_sort_orders.begin(), all_sort_orders.end()));
  s.splits = s.pipe.data.splits();
  return s;
}

}  // namespace

TEST(Session, FirstEpochHasEveryPairCurrent) {
  SchedulerSession s(config(5), plain_pairs(3, 20, 10));
  const auto& plan = s.plan();
  EXPECT_EQ(plan.current, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(plan.delayed.empty());
  EXPECT_EQ(plan.batches.at(0).train.size(), 2u);
  EXPECT_EQ(plan.batches.at(0).validation.size(), 1u);
  EXPECT_EQ(plan.train_selection, (std::vector<SampleId>{0, 1}));
}

TEST(Session, DecrementRuleHandSimulation) {
  // One validation sample with loss chosen so the lap delay is exactly 2.4 at
  // tau = 1, eta = 0.8, gamma = 1; the other pair always returns delay 1.
  const double d = -std::log(0.8) / 2.4;
  SchedulerSession s(config(10), plain_pairs(2, 10, 1));
  {
    const auto& plan = s.plan();
    std::vector<PairReport> r{uniform_report(plan, 0, d, 0.9, 1.0), uniform_report(plan, 1, 50.0, 0.9, 1.0)};
    s.report(r);
  }
  EXPECT_NEAR(s.states()[0].delay, 2.4, 1e-12);
  EXPECT_EQ(s.states()[1].delay, 1.0);

  // epoch 1: delayed, 2.4 -> 1.4
  {
    const auto& plan = s.plan();
    EXPECT_EQ(plan.delayed, (std::vector<std::size_t>{0}));
    std::vector<PairReport> r{uniform_report(plan, 0, 50.0, 0.5, 1.0)};  // below eta: tau kept
    s.report(r);
  }
  EXPECT_NEAR(s.states()[0].delay, 1.4, 1e-12);
  // epoch 2: still delayed (1.4 > 1), 1.4 -> 0.4
  {
    const auto& plan = s.plan();
    EXPECT_EQ(plan.delayed, (std::vector<std::size_t>{0}));
    std::vector<PairReport> r{uniform_report(plan, 0, 50.0, 0.5, 1.0)};  // below eta: tau kept
    s.report(r);
  }
  // epoch 3: current again
  EXPECT_EQ(s.plan().current, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.record().entries[1].used, (std::vector<bool>{false, true}));
}

TEST(Session, PlanIsIdempotent) {
  SchedulerSession s(config(4), plain_pairs(2, 30, 12));
  const EpochPlan a = s.plan();
  const EpochPlan b = s.plan();
  EXPECT_EQ(a.current, b.current);
  EXPECT_EQ(a.train_selection, b.train_selection);
  EXPECT_EQ(a.batches.size(), b.batches.size());
  EXPECT_EQ(s.epoch(), 0u);
}

TEST(Session, ProtocolErrors) {
  SchedulerSession s(config(1), plain_pairs(2, 10, 5));
  std::vector<PairReport> none;
  EXPECT_THROW(s.report(none), ProtocolError);  // before plan
  const auto& plan = s.plan();
  EXPECT_THROW(s.report(none), ProtocolError);  // missing pairs
  std::vector<PairReport> twice{uniform_report(plan, 0, 1, 0.5, 0.5), uniform_report(plan, 0, 1, 0.5, 0.5)};
  EXPECT_THROW(s.report(twice), ProtocolError);
  auto short_losses = std::vector<PairReport>{uniform_report(plan, 0, 1, 0.5, 0.5), uniform_report(plan, 1, 1, 0.5, 0.5)};
  short_losses[1].losses.push_back(0.0);
  EXPECT_THROW(s.report(short_losses), ProtocolError);
  auto bad_proba = std::vector<PairReport>{uniform_report(plan, 0, 1, 1.5, 0.5), uniform_report(plan, 1, 1, 0.5, 0.5)};
  EXPECT_THROW(s.report(bad_proba), DomainError);
  EXPECT_EQ(s.epoch(), 0u);  // nothing committed
  EXPECT_TRUE(s.record().entries.empty());
  std::vector<PairReport> ok{uniform_report(plan, 0, 1, 0.5, 0.5), uniform_report(plan, 1, 1, 0.5, 0.5)};
  s.report(ok);
  EXPECT_TRUE(s.finished());
  EXPECT_THROW(s.plan(), ProtocolError);
  EXPECT_THROW(s.report(ok), ProtocolError);
}

TEST(Session, ConstructionChecks) {
  EXPECT_THROW(SchedulerSession(config(3), {}), ConfigError);
  EXPECT_THROW(SchedulerSession(config(3), plain_pairs(1, 0, 3)), DomainError);
  EXPECT_THROW(SchedulerSession(config(3), plain_pairs(1, 3, 0)), DomainError);
  auto uneven = plain_pairs(2, 5, 3);
  uneven[1].train_order.pop_back();
  EXPECT_THROW(SchedulerSession(config(3), uneven), ConfigError);
  auto c = config(3);
  c.eta = 1.0;
  EXPECT_THROW(SchedulerSession(c, plain_pairs(1, 3, 3)), ConfigError);
}

TEST(Session, TrainingSelectionIsUnionOfPairBatches) {
  auto pairs = plain_pairs(2, 10, 4);
  std::reverse(pairs[1].train_order.begin(), pairs[1].train_order.end());
  SchedulerSession s(config(3), pairs);
  EXPECT_EQ(s.plan().train_selection, (std::vector<SampleId>{0, 9}));
}

TEST(UpdatePair, RefitsTauFromSnapshot) {
  // Snapshot at epoch 0: losses 0.1, 0.2, gamma 0.5. At epoch 2 (dt = 2) the
  // recall follows exp(-x * 3) with x = d * dt / gamma.
  SchedulerConfig c = config(20);
  PairState st;
  st.snapshot = PairSnapshot{{7, 8}, {0.1, 0.2}, 0.5, 0};
  PairBatch batch{0, {1, 2}, {8, 7, 9}};
  const double x7 = 0.1 * 2 / 0.5, x8 = 0.2 * 2 / 0.5;
  PairReport r{0, {0.3, 0.3, 0.3}, {std::exp(-3 * x8), std::exp(-3 * x7), 0.01}, 0.6};
  c.eta = 0.2;
  auto next = update_pair(c, st, batch, r, 2);
  EXPECT_NEAR(next.tau, 3.0, 1e-4);
  ASSERT_TRUE(next.snapshot);
  EXPECT_EQ(next.snapshot->ids, batch.validation);
  EXPECT_EQ(next.snapshot->epoch, 2u);
  const double expect_delay = -std::log(0.2) / next.tau * 0.6 / 0.3;
  EXPECT_NEAR(next.delay, std::min(expect_delay, 17.0), 1e-9);
}

TEST(RunTraining, SessionTraceMatchesNativeLoop) {
  auto s = synthetic(160);
  auto cfg = config(12);
  NeighborLogisticLearner native(s.pipe.data, {0.05, 3});
  auto result = run_training(cfg, s.pairs, native, s.splits);

  NeighborLogisticLearner external(s.pipe.data, {0.05, 3});
  SchedulerSession session(cfg, s.pairs);
  while (!session.finished()) {
    const auto& plan = session.plan();
    for (const auto& b : plan.batches) external.train_on(b.train);
    std::vector<PairReport> reports;
    for (const auto& b : plan.batches) {
      reports.push_back({b.pair, external.loss_of(b.validation), external.proba_of(b.validation),
                         external.eval_on(b.validation)});
    }
    session.report(reports, external.eval_on(s.splits.validation));
  }
  EXPECT_EQ(session.record(), result.record);
}

TEST(RunTraining, DeterministicAndConsistent) {
  auto s = synthetic(160);
  auto cfg = config(15);
  NeighborLogisticLearner a(s.pipe.data, {0.05, 1}), b(s.pipe.data, {0.05, 1});
  PresentationLog la, lb;
  auto ra = run_training(cfg, s.pairs, a, s.splits, &la);
  auto rb = run_training(cfg, s.pairs, b, s.splits, &lb);
  EXPECT_EQ(ra.record, rb.record);
  EXPECT_EQ(la, lb);
  EXPECT_EQ(a.snapshot(), b.snapshot());
  EXPECT_EQ(ra.record.entries.size(), 15u);
  EXPECT_NO_THROW(ra.record.validate());
  std::size_t total = 0;
  for (const auto& e : ra.record.entries) total += e.presented;
  EXPECT_EQ(total, ra.training.presented_total);
  EXPECT_LT(total, 15 * s.splits.train.size());
  ASSERT_TRUE(ra.training.test);
  EXPECT_EQ(ra.training.best_validation,
            *std::max_element(ra.training.validation.begin(), ra.training.validation.end()));
}

TEST(RunTraining, SingleEpochUsesEveryPair) {
  auto s = synthetic(100);
  NeighborLogisticLearner l(s.pipe.data);
  auto r = run_training(config(1), s.pairs, l, s.splits);
  ASSERT_EQ(r.record.entries.size(), 1u);
  EXPECT_EQ(r.record.entries[0].current.size(), s.pairs.size());
}

TEST(RunTraining, OnePassPerCurrentPair) {
  auto s = synthetic(100);
  std::vector<RankingTable> dup{s.pairs[0], s.pairs[0]};
  dup[1].pair.order = SortOrder::descending;  // distinct name, identical ranking
  NeighborLogisticLearner l(s.pipe.data);
  PresentationLog log;
  auto r = run_training(config(2), dup, l, s.splits, &log);
  ASSERT_EQ(log.epochs[0].size(), 2u);
  EXPECT_EQ(log.epochs[0][0], log.epochs[0][1]);
  EXPECT_EQ(r.training.presented[0], log.epochs[0][0].size());
  EXPECT_EQ(r.training.pass_samples_total, log.epochs[0][0].size() * 2 + log.epochs[1][0].size() * log.epochs[1].size());
}
