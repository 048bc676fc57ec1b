#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spacedcl/baselines.hpp"
#include "spacedcl/error.hpp"
#include "spacedcl/introspect.hpp"
#include "spacedcl/learner.hpp"
#include "spacedcl/records.hpp"
#include "spacedcl/scheduler.hpp"
#include "support/fixtures.hpp"

using namespace spacedcl;

namespace {

struct Run {
  fixture::Pipeline pipe;
  std::vector<RankingTable> pairs;
  TgclResult result;
  PresentationLog log;
};

Run tgcl_run(std::size_t nodes, std::size_t epochs, std::uint64_t seed = 7) {
  SynthParams sp;
  sp.nodes = nodes;
  sp.seed = seed;
  Run r{fixture::synthetic_pipeline(sp), {}, {}, {}};
  r.pairs = build_rankings(r.pipe.matrix, {"degree", "density", "katz_centrality"},
                           std::vector<SortOrder>(all_sort_orders.begin(), all_sort_orders.end()));
  SchedulerConfig cfg;
  cfg.competence = {0.1, 1.0, epochs};
  cfg.seed = seed;
  NeighborLogisticLearner l(r.pipe.data, {0.05, seed});
  r.result = run_training(cfg, r.pairs, l, r.pipe.data.splits(), &r.log);
  return r;
}

/// Hand-built record over two pairs.
CurriculumRecord small_record() {
  CurriculumRecord rec;
  rec.header.pairs = {"degree/ascending", "gunning_fog/medium_descending"};
  rec.header.epochs = 3;
  rec.header.c0 = 0.1;
  rec.header.kernel = "lap";
  rec.header.eta = 0.8;
  rec.header.train_size = 10;
  rec.header.validation_size = 4;
  rec.header.seed = 3;
  rec.header.config_hash = config_hash(rec.header);
  const std::vector<std::vector<std::size_t>> current = {{0, 1}, {1}, {0}};
  for (std::size_t e = 0; e < 3; ++e) {
    RecordEntry en;
    en.epoch = e;
    en.competence = 0.1 + 0.45 * static_cast<double>(e);
    en.current = current[e];
    en.used = {false, false};
    en.gamma = {std::nullopt, std::nullopt};
    for (auto c : en.current) {
      en.used[c] = true;
      en.gamma[c] = 0.25 * static_cast<double>(c + 1) + 1.0 / 3.0;
    }
    en.delays = {1.0, 2.0 / 3.0};
    en.taus = {0.1, 1e-7};
    en.presented = 3 + e;
    if (e != 1) en.validation = 0.7;
    rec.entries.push_back(en);
  }
  return rec;
}

}  // namespace

TEST(Records, RoundTripIsExact) {
  auto rec = small_record();
  std::stringstream ss;
  save_record(ss, rec);
  EXPECT_EQ(load_record(ss), rec);
}

TEST(Records, RoundTripOfARealRun) {
  auto run = tgcl_run(120, 6);
  EXPECT_EQ(run.result.record.entries.size(), 6u);
  auto dir = std::filesystem::temp_directory_path() / "spacedcl_records_test";
  std::filesystem::create_directories(dir);
  save_record(dir / "record.jsonl", run.result.record);
  EXPECT_EQ(load_record(dir / "record.jsonl"), run.result.record);
  std::filesystem::remove_all(dir);
}

TEST(Records, ThreeEpochRunHasThreeEntries) {
  auto run = tgcl_run(80, 3);
  EXPECT_EQ(run.result.record.entries.size(), 3u);
}

TEST(Records, TruncatedFileIsSchemaError) {
  std::stringstream ss;
  save_record(ss, small_record());
  const std::string text = ss.str();
  std::istringstream cut(text.substr(0, text.rfind('\n', text.size() - 2) + 1));
  EXPECT_THROW(load_record(cut), SchemaError);
  std::istringstream half(text.substr(0, text.size() - 20));
  EXPECT_THROW(load_record(half), SchemaError);
}

TEST(Records, VersionMismatchIsSchemaError) {
  std::stringstream ss;
  save_record(ss, small_record());
  std::string text = ss.str();
  const auto pos = text.find("\"version\":1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 11, "\"version\":2");
  std::istringstream in(text);
  try {
    load_record(in);
    FAIL() << "accepted version 2";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
}

TEST(Records, MalformedEntryNamesItsIndex) {
  std::stringstream ss;
  save_record(ss, small_record());
  std::string text = ss.str();
  // Line 0 is the header, so entry 2 is line 3.
  std::size_t line_start = 0;
  for (int i = 0; i < 3; ++i) line_start = text.find('\n', line_start) + 1;
  const auto pos = text.find("\"competence\"", line_start);
  text.replace(pos, 12, "\"competenze\"");
  std::istringstream in(text);
  try {
    load_record(in);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("entry 2"), std::string::npos) << e.what();
  }
}

TEST(Records, ValidateCatchesBrokenInvariants) {
  auto rec = small_record();
  rec.entries[2].competence = 0.05;
  EXPECT_THROW(rec.validate(), SchemaError);
  rec = small_record();
  rec.entries.pop_back();
  EXPECT_THROW(rec.validate(), SchemaError);
  rec = small_record();
  rec.entries[0].current = {0, 5};
  EXPECT_THROW(rec.validate(), SchemaError);
}

TEST(Records, ConfigHashTracksHeader) {
  auto a = small_record().header;
  auto b = a;
  b.eta = 0.81;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Replay, SelfReplayReproducesSelections) {
  auto run = tgcl_run(150, 10);
  NeighborLogisticLearner l(run.pipe.data, {0.05, 7});
  PresentationLog log;
  auto tables = rankings_for_record(run.result.record, run.pipe.matrix);
  auto r = replay(run.result.record, tables, l, run.pipe.data.splits(), &log);
  EXPECT_EQ(log, run.log);
  EXPECT_EQ(r.presented, run.result.training.presented);
  EXPECT_EQ(r.validation, run.result.training.validation);
}

TEST(Replay, CrossDatasetStaysWithinNoCL) {
  auto run = tgcl_run(150, 10, 7);
  SynthParams sp;
  sp.nodes = 220;
  sp.seed = 99;
  auto target = fixture::synthetic_pipeline(sp);
  auto splits = target.data.splits();
  NeighborLogisticLearner l(target.data, {0.05, 99});
  auto r = replay(run.result.record, rankings_for_record(run.result.record, target.matrix), l, splits);
  EXPECT_LE(r.presented_total, splits.train.size() * 10);
  EXPECT_EQ(r.presented.size(), 10u);
}

TEST(Replay, MissingPairsAreListed) {
  auto rec = small_record();
  rec.header.pairs = {"katz_centrality/ascending", "nonexistent/descending"};
  auto m = fixture::matrix_of({{1, 2, 3}}, {Split::train, Split::validation, Split::train});
  try {
    rankings_for_record(rec, m);
    FAIL();
  } catch (const TransferError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("katz_centrality/ascending"), std::string::npos);
    EXPECT_NE(what.find("nonexistent/descending"), std::string::npos);
  }
}

TEST(Introspect, HandCountedPhases) {
  // Pair 0 active in epochs 1 and 2 of a 3-epoch run; pair 1 in epoch 0 only.
  auto rec = small_record();
  rec.entries[0].current = {1};
  rec.entries[1].current = {0};
  rec.entries[2].current = {0};
  for (auto& e : rec.entries) {
    e.used = {false, false};
    for (auto c : e.current) e.used[c] = true;
  }
  auto rep = introspect(rec, 3);
  ASSERT_EQ(rep.index_usage.size(), 2u);
  EXPECT_EQ(rep.index_usage[0], (UsageRow{"degree", {0, 1, 1}}));
  EXPECT_EQ(rep.index_usage[1], (UsageRow{"gunning_fog", {1, 0, 0}}));
  EXPECT_EQ(rep.active_fraction, (std::vector<double>{0.5, 0.5, 0.5}));
  EXPECT_EQ(rep.cumulative_presented, (std::vector<std::size_t>{3, 7, 12}));
  EXPECT_EQ(rep.nocl_cumulative, (std::vector<std::size_t>{10, 20, 30}));
}

TEST(Introspect, PhaseBoundaries) {
  EXPECT_EQ(phase_of(0, 3, 3), 0u);
  EXPECT_EQ(phase_of(1, 3, 3), 1u);
  EXPECT_EQ(phase_of(2, 3, 3), 2u);
  EXPECT_EQ(phase_of(32, 100, 3), 0u);
  EXPECT_EQ(phase_of(34, 100, 3), 1u);
  EXPECT_EQ(phase_of(99, 100, 3), 2u);
}

TEST(Introspect, CategoriesAndUniformRecord) {
  EXPECT_EQ(index_category("katz_centrality"), "centrality");
  EXPECT_EQ(index_category("gunning_fog"), "TraF");
  EXPECT_EQ(index_category("sentence_length"), "ShaF");
  EXPECT_EQ(index_category("mystery"), "other");

  auto rec = small_record();
  rec.header.epochs = 3;
  for (auto& e : rec.entries) {
    e.current = {0, 1};
    e.used = {true, true};
  }
  auto rep = introspect(rec, 3);
  for (const auto& row : rep.index_usage) EXPECT_EQ(row.per_phase, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Introspect, CountsSumToActivations) {
  auto run = tgcl_run(120, 12);
  auto rep = introspect(run.result.record, 3);
  std::size_t activations = 0;
  for (const auto& e : run.result.record.entries) activations += e.current.size();
  auto total = [](const std::vector<UsageRow>& rows) {
    std::size_t s = 0;
    for (const auto& r : rows)
      for (auto c : r.per_phase) s += c;
    return s;
  };
  // Index usage counts pair activations, grouped by index name.
  EXPECT_EQ(total(rep.index_usage), activations);
  EXPECT_EQ(total(rep.category_usage), activations);
  EXPECT_EQ(total(rep.order_usage), activations);

  auto dir = std::filesystem::temp_directory_path() / "spacedcl_introspect_test";
  write_introspection(rep, dir);
  for (const char* f : {"phase_usage.csv", "category_usage.csv", "order_usage.csv", "active_fraction.csv",
                        "cumulative_presented.csv"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  std::filesystem::remove_all(dir);
}
