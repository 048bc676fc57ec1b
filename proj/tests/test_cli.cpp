#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using spacedcl::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) out.push_back(l);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    root = fs::temp_directory_path() / ("spacedcl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  void TearDown() override { fs::remove_all(root); }

  std::string path(const std::string& rel) const { return (root / rel).string(); }

  void make_data(const std::string& rel, const std::string& nodes = "150", const std::string& seed = "7") {
    auto r = cli({"synth", "--out", path(rel), "--nodes", nodes, "--seed", seed});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  fs::path root;
};

}  // namespace

TEST_F(Cli, SynthIsByteIdentical) {
  make_data("a", "400");
  make_data("b", "400");
  for (const char* f : {"edges.txt", "features.csv", "labels.txt", "texts.tsv", "samples.tsv"}) {
    ASSERT_TRUE(fs::exists(root / "a" / f)) << f;
    EXPECT_EQ(slurp(root / "a" / f), slurp(root / "b" / f)) << f;
  }
}

TEST_F(Cli, FullPipelineAndSelfReplay) {
  make_data("data");
  ASSERT_EQ(cli({"index", "--data", path("data"), "--out", path("run"), "--threads", "2"}).code, 0);
  ASSERT_TRUE(fs::exists(root / "run" / "index_matrix.csv"));
  auto sel = cli({"select", "--data", path("data"), "--index", path("run/index_matrix.csv"), "--out", path("run"),
                  "--k", "10", "--seed", "3"});
  ASSERT_EQ(sel.code, 0) << sel.err;
  EXPECT_EQ(lines(root / "run" / "selected_indices.txt").size(), 10u);

  auto train = cli({"train", "--data", path("data"), "--index", path("run/index_matrix.csv"), "--selection",
                    path("run/selected_indices.txt"), "--out", path("run"), "--epochs", "20", "--seed", "5"});
  ASSERT_EQ(train.code, 0) << train.err;
  EXPECT_NE(train.out.find("presented"), std::string::npos);
  for (const char* f : {"record.jsonl", "checkpoint.csv", "metrics.json"}) EXPECT_TRUE(fs::exists(root / "run" / f)) << f;
  EXPECT_EQ(lines(root / "run" / "record.jsonl").size(), 21u);

  auto rep = cli({"replay", "--data", path("data"), "--index", path("run/index_matrix.csv"), "--record",
                  path("run/record.jsonl"), "--out", path("replay"), "--seed", "5"});
  ASSERT_EQ(rep.code, 0) << rep.err;
  auto a = nlohmann::json::parse(slurp(root / "run" / "metrics.json"));
  auto b = nlohmann::json::parse(slurp(root / "replay" / "metrics.json"));
  EXPECT_EQ(a["mode"], "tgcl");
  EXPECT_EQ(b["mode"], "replay");
  a.erase("mode");
  b.erase("mode");
  EXPECT_EQ(a, b);
  EXPECT_EQ(slurp(root / "run" / "checkpoint.csv"), slurp(root / "replay" / "checkpoint.csv"));

  ASSERT_EQ(cli({"introspect", "--record", path("run/record.jsonl"), "--out", path("report")}).code, 0);
  for (const char* f : {"phase_usage.csv", "category_usage.csv", "order_usage.csv", "active_fraction.csv",
                        "cumulative_presented.csv"})
    EXPECT_TRUE(fs::exists(root / "report" / f)) << f;
}

TEST_F(Cli, SelectTenOfSixteen) {
  make_data("data");
  ASSERT_EQ(cli({"index", "--data", path("data"), "--out", path("run")}).code, 0);
  auto r = cli({"select", "--data", path("data"), "--index", path("run/index_matrix.csv"), "--out", path("run"),
                "--k", "10", "--indices", "degree", "katz_centrality", "closeness_centrality", "average_clustering",
                "density", "number_of_edges", "number_of_nodes", "local_bridges", "average_neighbor_degree",
                "degree_centrality", "gunning_fog", "smog", "coleman_liau", "new_ari", "sentence_length",
                "avg_chars_per_token"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(root / "run" / "selected_indices.txt").size(), 10u);
}

TEST_F(Cli, TrainIsIdempotentAndBaselinesShareLoaders) {
  make_data("data", "120");
  std::vector<std::string> base{"train", "--data", path("data"), "--epochs", "8", "--seed", "2"};
  auto with_out = [&](std::vector<std::string> extra, const std::string& out) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    args.push_back("--out");
    args.push_back(path(out));
    return cli(args);
  };
  ASSERT_EQ(with_out({}, "t1").code, 0);
  ASSERT_EQ(with_out({}, "t2").code, 0);
  EXPECT_EQ(slurp(root / "t1" / "record.jsonl"), slurp(root / "t2" / "record.jsonl"));
  EXPECT_EQ(slurp(root / "t1" / "metrics.json"), slurp(root / "t2" / "metrics.json"));

  ASSERT_EQ(with_out({"--baseline", "nocl"}, "nocl").code, 0);
  auto m = nlohmann::json::parse(slurp(root / "nocl" / "metrics.json"));
  EXPECT_EQ(m["presented_total"], m["nocl_presentations"]);
  EXPECT_FALSE(fs::exists(root / "nocl" / "record.jsonl"));

  ASSERT_EQ(with_out({"--baseline", "ccl"}, "ccl").code, 0);
  auto c = nlohmann::json::parse(slurp(root / "ccl" / "metrics.json"));
  EXPECT_LT(c["presented_total"].get<std::size_t>(), c["nocl_presentations"].get<std::size_t>());
}

TEST_F(Cli, LinkTask) {
  auto r = cli({"synth", "--out", path("links"), "--nodes", "120", "--task", "link_prediction"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto t = cli({"train", "--data", path("links"), "--out", path("run"), "--epochs", "6", "--k", "5"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(nlohmann::json::parse(slurp(root / "run" / "metrics.json"))["metric"], "f1");
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"train", "--out", path("x")}).code, 2);  // no dataset
  auto missing = cli({"train", "--data", path("nowhere"), "--out", path("x")});
  EXPECT_EQ(missing.code, 3);
  EXPECT_EQ(std::count(missing.err.begin(), missing.err.end(), '\n'), 1);

  make_data("data", "80");
  EXPECT_EQ(cli({"train", "--data", path("data"), "--out", path("x"), "--eta", "1.5", "--epochs", "2"}).code, 2);
  EXPECT_EQ(cli({"train", "--data", path("data"), "--out", path("x"), "--kernel", "gauss", "--epochs", "2"}).code, 2);
  EXPECT_EQ(cli({"train", "--data", path("data"), "--out", path("x"), "--baseline", "magic"}).code, 2);

  std::ofstream(root / "bad.jsonl") << "{\"format\":\"spacedcl-curriculum\",\"version\":7}\n";
  EXPECT_EQ(cli({"introspect", "--record", path("bad.jsonl"), "--out", path("r")}).code, 3);

  // A record naming an index the target lacks.
  ASSERT_EQ(cli({"train", "--data", path("data"), "--out", path("t"), "--epochs", "3"}).code, 0);
  ASSERT_EQ(cli({"index", "--data", path("data"), "--out", path("narrow"), "--graph-indices", "degree",
                 "--text-indices", "smog"})
                .code,
            0);
  auto rep = cli({"replay", "--data", path("data"), "--index", path("narrow/index_matrix.csv"), "--record",
                  path("t/record.jsonl"), "--out", path("r2")});
  EXPECT_EQ(rep.code, 3);
  EXPECT_NE(rep.err.find("transfer"), std::string::npos);
}

TEST_F(Cli, HelpExitsCleanly) {
  auto r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("train"), std::string::npos);
}
