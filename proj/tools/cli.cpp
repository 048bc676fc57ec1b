#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "spacedcl/baselines.hpp"
#include "spacedcl/error.hpp"
#include "spacedcl/introspect.hpp"
#include "spacedcl/learner.hpp"
#include "spacedcl/records.hpp"
#include "spacedcl/scheduler.hpp"
#include "spacedcl/synth.hpp"

namespace spacedcl::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Fixed output names inside --out.
constexpr const char* kIndexFile = "index_matrix.csv";
constexpr const char* kSelectionFile = "selected_indices.txt";
constexpr const char* kRecordFile = "record.jsonl";
constexpr const char* kCheckpointFile = "checkpoint.csv";
constexpr const char* kMetricsFile = "metrics.json";

/// Dataset inputs: a directory in the standard layout, or explicit paths.
struct DataArgs {
  std::string dir;
  std::string edges, features, labels, texts, samples;

  void add(CLI::App& app) {
    app.add_option("--data", dir, "Dataset directory (edges.txt, samples.tsv, ...)");
    app.add_option("--edges", edges, "Edge list (overrides --data)");
    app.add_option("--features", features, "Node feature CSV");
    app.add_option("--labels", labels, "Node labels");
    app.add_option("--texts", texts, "Per-node texts");
    app.add_option("--samples", samples, "Sample/split file");
  }

  Dataset load() const {
    DatasetPaths p;
    if (!dir.empty()) p = DatasetPaths::in_directory(dir);
    if (!edges.empty()) p.edges = edges;
    if (!features.empty()) p.features = fs::path(features);
    if (!labels.empty()) p.labels = fs::path(labels);
    if (!texts.empty()) p.texts = fs::path(texts);
    if (!samples.empty()) p.samples = samples;
    if (p.edges.empty() || p.samples.empty()) throw ConfigError("no dataset given: pass --data or --edges and --samples");
    return load_dataset(p);
  }
};

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

IndexMatrix load_or_build_matrix(const Dataset& data, const std::string& index_path, unsigned threads) {
  if (!index_path.empty()) {
    auto in = open_in(index_path);
    return read_index_csv(in, data);
  }
  IndexSpec spec = IndexSpec::defaults_for(data);
  spec.threads = threads;
  return build_index_matrix(data, spec);
}

std::vector<SortOrder> parse_orders(const std::vector<std::string>& names) {
  std::vector<SortOrder> out;
  for (const auto& n : names) {
    auto o = parse_sort_order(n);
    if (!o) throw ConfigError("unknown sort order \"" + n + "\"");
    out.push_back(*o);
  }
  if (out.empty()) throw ConfigError("at least one sort order is required");
  return out;
}

ordered_json metrics_json(const std::string& mode, const TrainingResult& r, std::size_t train_size, Task task) {
  ordered_json j;
  j["mode"] = mode;
  j["metric"] = task == Task::node_classification ? "accuracy" : "f1";
  j["epochs"] = r.validation.size();
  j["best_epoch"] = r.best_epoch;
  j["best_validation"] = r.best_validation;
  j["final_validation"] = r.validation.empty() ? 0.0 : r.validation.back();
  j["test"] = r.test ? ordered_json(*r.test) : ordered_json(nullptr);
  j["presented_total"] = r.presented_total;
  j["pass_samples_total"] = r.pass_samples_total;
  const std::size_t budget = train_size * r.validation.size();
  j["nocl_presentations"] = budget;
  j["usage_fraction"] = budget ? static_cast<double>(r.presented_total) / static_cast<double>(budget) : 0.0;
  return j;
}

void write_metrics(const fs::path& dir, const std::string& mode, const TrainingResult& r, std::size_t train_size,
                   Task task) {
  auto out = open_out(dir / kMetricsFile);
  out << metrics_json(mode, r, train_size, task).dump(2) << '\n';
}

void print_summary(std::ostream& out, const TrainingResult& r, Task task) {
  const char* metric = task == Task::node_classification ? "accuracy" : "f1";
  out << "validation " << metric << ' ' << r.best_validation << " (epoch " << r.best_epoch << ")";
  if (r.test) out << ", test " << metric << ' ' << *r.test;
  out << ", presented " << r.presented_total << '\n';
}

void write_checkpoint(const fs::path& dir, const NeighborLogisticLearner& learner) {
  auto out = open_out(dir / kCheckpointFile);
  learner.write_checkpoint(out);
}

// --- commands --------------------------------------------------------------

struct SynthCmd {
  SynthParams p;
  std::string out;
  std::string task = "node_classification";

  void add(CLI::App& app) {
    app.add_option("--out", out, "Output dataset directory")->required();
    app.add_option("--nodes", p.nodes, "Node count")->capture_default_str();
    app.add_option("--blocks", p.blocks, "Planted blocks (classes)")->capture_default_str();
    app.add_option("--p-in", p.p_in, "Edge probability inside a block")->capture_default_str();
    app.add_option("--p-out", p.p_out, "Edge probability across blocks")->capture_default_str();
    app.add_option("--dim", p.dim, "Feature dimension")->capture_default_str();
    app.add_option("--seed", p.seed, "Generator seed")->capture_default_str();
    app.add_option("--centroid-scale", p.centroid_scale, "Spread of the class centroids")->capture_default_str();
    app.add_option("--train-fraction", p.train_fraction)->capture_default_str();
    app.add_option("--validation-fraction", p.validation_fraction)->capture_default_str();
    app.add_option("--link-samples", p.link_samples, "Positive link samples (0 = every edge)")->capture_default_str();
    app.add_option("--task", task, "node_classification or link_prediction")->capture_default_str();
  }

  void run(std::ostream& log) {
    auto t = parse_task(task);
    if (!t) throw ConfigError("unknown task \"" + task + "\"");
    p.task = *t;
    const Dataset d = make_synthetic(p);
    write_dataset(d, out);
    log << "wrote " << d.graph.node_count() << " nodes, " << d.graph.edge_count() << " edges, " << d.samples.size()
        << " samples to " << out << '\n';
  }
};

struct IndexCmd {
  DataArgs data;
  std::string out;
  unsigned hops = 1;
  std::size_t node_cap = 256;
  unsigned threads = 1;
  std::vector<std::string> graph_indices, text_indices;

  void add(CLI::App& app) {
    data.add(app);
    app.add_option("--out", out, "Output directory")->required();
    app.add_option("--hops", hops, "Ego-subgraph radius")->capture_default_str();
    app.add_option("--node-cap", node_cap, "Ego-subgraph node cap")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads")->capture_default_str();
    app.add_option("--graph-indices", graph_indices, "Graph indices to compute (default: all applicable)");
    app.add_option("--text-indices", text_indices, "Text indices to compute (default: all, if texts exist)");
  }

  void run(std::ostream& log) {
    const Dataset d = data.load();
    IndexSpec spec = IndexSpec::defaults_for(d);
    spec.hops = hops;
    spec.node_cap = node_cap;
    spec.threads = threads;
    if (!graph_indices.empty()) {
      spec.graph_kinds.clear();
      for (const auto& n : graph_indices) {
        auto k = parse_graph_index_kind(n);
        if (!k) throw ConfigError("unknown graph index \"" + n + "\"");
        spec.graph_kinds.push_back(*k);
      }
    }
    if (!text_indices.empty()) {
      spec.text_kinds.clear();
      for (const auto& n : text_indices) {
        auto k = parse_text_index_kind(n);
        if (!k) throw ConfigError("unknown text index \"" + n + "\"");
        spec.text_kinds.push_back(*k);
      }
    }
    const IndexMatrix m = build_index_matrix(d, spec);
    auto os = open_out(fs::path(out) / kIndexFile);
    write_index_csv(os, m);
    std::size_t zero = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) zero += m.zero_column(j) ? 1 : 0;
    log << "indexed " << m.rows() << " samples x " << m.cols() << " indices";
    if (zero) log << " (" << zero << " all-zero on train)";
    log << '\n';
  }
};

struct SelectCmd {
  DataArgs data;
  std::string index, out;
  std::size_t k = 10;
  std::uint64_t seed = 0;
  std::vector<std::string> restrict_to;

  void add(CLI::App& app) {
    data.add(app);
    app.add_option("--index", index, "index_matrix.csv from the index command")->required();
    app.add_option("--out", out, "Output directory")->required();
    app.add_option("--k", k, "Number of clusters")->capture_default_str();
    app.add_option("--seed", seed, "Clustering seed")->capture_default_str();
    app.add_option("--indices", restrict_to, "Limit the candidates to these indices");
  }

  void run(std::ostream& log) {
    const Dataset d = data.load();
    auto in = open_in(index);
    const IndexMatrix m = read_index_csv(in, d);
    const IndexSelection sel = select_indices(m, k, seed, restrict_to);
    auto os = open_out(fs::path(out) / kSelectionFile);
    write_selection(os, sel);
    for (const auto& n : sel.selected) log << n << '\n';
  }
};

/// Shared by train and replay.
struct LearnerArgs {
  double lr = LearnerConfig{}.learning_rate;
  std::uint64_t seed = 0;
  std::size_t embedding_dim = LearnerConfig{}.embedding_dim;

  void add(CLI::App& app) {
    app.add_option("--lr", lr, "Learning rate")->capture_default_str();
    app.add_option("--seed", seed, "Seed for the learner and the index selection")->capture_default_str();
    app.add_option("--embedding-dim", embedding_dim, "Link model embedding width")->capture_default_str();
  }
  LearnerConfig config() const {
    LearnerConfig c;
    c.learning_rate = lr;
    c.seed = seed;
    c.embedding_dim = embedding_dim;
    return c;
  }
};

struct TrainCmd {
  DataArgs data;
  LearnerArgs learner;
  std::string index, selection, out, baseline = "tgcl", kernel = "lap";
  double eta = 0.8, alpha = 1.0, c0 = CompetenceParams{}.c0;
  std::optional<std::size_t> epochs;
  std::size_t k = 10;
  unsigned threads = 1;
  bool pin_delays = false;
  std::vector<std::string> orders = {"ascending", "descending", "medium_ascending", "medium_descending"};

  void add(CLI::App& app) {
    data.add(app);
    learner.add(app);
    app.add_option("--index", index, "index_matrix.csv (computed on the fly if omitted)");
    app.add_option("--selection", selection, "selected_indices.txt (clustered on the fly if omitted)");
    app.add_option("--out", out, "Output directory")->required();
    app.add_option("--baseline", baseline, "tgcl, nocl or ccl")
        ->check(CLI::IsMember({"tgcl", "nocl", "ccl"}))
        ->capture_default_str();
    app.add_option("--kernel", kernel, "lap, sec, cos, qua or lin")->capture_default_str();
    app.add_option("--eta", eta, "Recall threshold in (0, 1)")->capture_default_str();
    app.add_option("--alpha", alpha, "Competence rate exponent")->capture_default_str();
    app.add_option("--c0", c0, "Initial competence")->capture_default_str();
    app.add_option("--epochs", epochs, "Epochs (default 500 for nodes, 100 for links)");
    app.add_option("--k", k, "Clusters when selecting on the fly")->capture_default_str();
    app.add_option("--orders", orders, "Sort orders paired with each index");
    app.add_option("--threads", threads, "Worker threads for on-the-fly indexing")->capture_default_str();
    app.add_flag("--pin-delays", pin_delays, "Keep every pair current (ablation)");
  }

  void run(std::ostream& log) {
    const Dataset d = data.load();
    const SplitIds splits = d.splits();
    if (splits.train.empty()) throw DomainError("the training split is empty");
    const std::size_t e = epochs.value_or(d.task == Task::node_classification ? 500 : 100);
    CompetenceParams comp{c0, alpha, e};
    comp.validate();
    NeighborLogisticLearner model(d, learner.config());
    const fs::path dir(out);
    fs::create_directories(dir);

    TrainingResult result;
    if (baseline == "nocl") {
      result = run_nocl(model, splits, e);
    } else {
      const IndexMatrix m = load_or_build_matrix(d, index, threads);
      if (baseline == "ccl") {
        result = run_ccl(model, splits, summed_ranking(m), comp);
      } else {
        auto kk = parse_kernel_kind(kernel);
        if (!kk) throw ConfigError("unknown kernel \"" + kernel + "\"");
        std::vector<std::string> names;
        if (!selection.empty()) {
          auto in = open_in(selection);
          names = read_selection(in);
        } else {
          names = select_indices(m, k, learner.seed).selected;
          auto os = open_out(dir / kSelectionFile);
          for (const auto& n : names) os << n << '\n';
        }
        SchedulerConfig cfg;
        cfg.kernel = *kk;
        cfg.eta = eta;
        cfg.competence = comp;
        cfg.pin_delays = pin_delays;
        cfg.seed = learner.seed;
        auto run = run_training(cfg, build_rankings(m, names, parse_orders(orders)), model, splits);
        save_record(dir / kRecordFile, run.record);
        result = std::move(run.training);
      }
    }
    write_checkpoint(dir, model);
    write_metrics(dir, baseline, result, splits.train.size(), d.task);
    print_summary(log, result, d.task);
  }
};

struct ReplayCmd {
  DataArgs data;
  LearnerArgs learner;
  std::string record, index, out;
  unsigned threads = 1;

  void add(CLI::App& app) {
    data.add(app);
    learner.add(app);
    app.add_option("--record", record, "record.jsonl to replay")->required();
    app.add_option("--index", index, "Target index_matrix.csv (computed on the fly if omitted)");
    app.add_option("--out", out, "Output directory")->required();
    app.add_option("--threads", threads, "Worker threads for on-the-fly indexing")->capture_default_str();
  }

  void run(std::ostream& log) {
    const CurriculumRecord rec = load_record(fs::path(record));
    const Dataset d = data.load();
    const SplitIds splits = d.splits();
    const IndexMatrix m = load_or_build_matrix(d, index, threads);
    const auto tables = rankings_for_record(rec, m);
    NeighborLogisticLearner model(d, learner.config());
    const TrainingResult r = replay(rec, tables, model, splits);
    const fs::path dir(out);
    fs::create_directories(dir);
    write_checkpoint(dir, model);
    write_metrics(dir, "replay", r, splits.train.size(), d.task);
    print_summary(log, r, d.task);
  }
};

struct IntrospectCmd {
  std::string record, out;
  std::size_t phases = 3;

  void add(CLI::App& app) {
    app.add_option("--record", record, "record.jsonl")->required();
    app.add_option("--out", out, "Output directory for the CSV reports")->required();
    app.add_option("--phases", phases, "Number of training phases")->capture_default_str();
  }

  void run(std::ostream& log) {
    const auto report = introspect(load_record(fs::path(record)), phases);
    write_introspection(report, out);
    const auto& cum = report.cumulative_presented;
    const auto& base = report.nocl_cumulative;
    log << "presented " << (cum.empty() ? 0 : cum.back()) << " of " << (base.empty() ? 0 : base.back())
        << " No-CL presentations\n";
  }
};

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::config: return config_error;
    case ErrorKind::parse:
    case ErrorKind::schema:
    case ErrorKind::transfer: return data_error;
    case ErrorKind::domain:
    case ErrorKind::protocol:
    case ErrorKind::convergence: return runtime_error;
  }
  return runtime_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spaced-repetition curricula over text-graph samples"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file with option values");

  SynthCmd synth;
  IndexCmd index;
  SelectCmd select;
  TrainCmd train;
  ReplayCmd replay_cmd;
  IntrospectCmd introspect_cmd;
  synth.add(*app.add_subcommand("synth", "Generate a planted-partition benchmark"));
  index.add(*app.add_subcommand("index", "Compute the complexity index matrix"));
  select.add(*app.add_subcommand("select", "Cluster correlated indices and pick one per cluster"));
  train.add(*app.add_subcommand("train", "Train with a curriculum (tgcl) or a baseline (nocl, ccl)"));
  replay_cmd.add(*app.add_subcommand("replay", "Replay a recorded curriculum on a dataset"));
  introspect_cmd.add(*app.add_subcommand("introspect", "Usage reports from a record"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    // Subcommand help arrives as CallForHelp too; anything else is misuse.
    err << "error: " << e.what() << '\n';
    return config_error;
  }

  try {
    if (app.got_subcommand("synth")) synth.run(out);
    else if (app.got_subcommand("index")) index.run(out);
    else if (app.got_subcommand("select")) select.run(out);
    else if (app.got_subcommand("train")) train.run(out);
    else if (app.got_subcommand("replay")) replay_cmd.run(out);
    else introspect_cmd.run(out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return data_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return runtime_error;
  }
  return ok;
}

}  // namespace spacedcl::cli
