#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spacedcl/graph.hpp"

namespace spacedcl {

using SampleId = std::uint32_t;

enum class Task { node_classification, link_prediction };
enum class Split { train, validation, test };

std::string_view to_string(Task task) noexcept;
std::string_view to_string(Split split) noexcept;
std::optional<Task> parse_task(std::string_view s) noexcept;
std::optional<Split> parse_split(std::string_view s) noexcept;

/// One training instance: a node (classification) or a node pair (link).
struct Sample {
  SampleId id = 0;
  std::vector<NodeId> targets;  // 1 or 2 node ids
  int label = 0;                // class id, or 0/1 for links
  Split split = Split::train;
};

struct SplitIds {
  std::vector<SampleId> train;
  std::vector<SampleId> validation;
  std::vector<SampleId> test;
};

/// Graph plus the labelled samples and optional per-node text.
struct Dataset {
  Graph graph;
  Task task = Task::node_classification;
  std::vector<Sample> samples;     // samples[i].id == i
  std::vector<std::string> texts;  // per node; empty when no text file

  bool has_texts() const noexcept { return !texts.empty(); }
  std::vector<SampleId> split_ids(Split split) const;
  SplitIds splits() const;
  /// Concatenated text of the sample's target nodes ("" without texts).
  std::string sample_text(const Sample& s) const;
  int class_count() const;
  /// Throws SchemaError/ConfigError when samples and graph disagree.
  void validate() const;
};

/// "sample_id<TAB>split<TAB>u[,v]<TAB>label" lines; ids must be 0..n-1.
std::vector<Sample> parse_samples(std::istream& in, const Graph& g);
/// "node_id<TAB>text" lines.
std::vector<std::string> parse_texts(std::istream& in, const Graph& g);

/// Fixed file names inside a dataset directory.
struct DatasetFiles {
  static constexpr std::string_view edges = "edges.txt";
  static constexpr std::string_view features = "features.csv";
  static constexpr std::string_view labels = "labels.txt";
  static constexpr std::string_view texts = "texts.tsv";
  static constexpr std::string_view samples = "samples.tsv";
};

struct DatasetPaths {
  std::filesystem::path edges;
  std::optional<std::filesystem::path> features;
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> texts;
  std::filesystem::path samples;

  /// Standard layout under `dir`; optional files are used only if present.
  static DatasetPaths in_directory(const std::filesystem::path& dir);
};

Dataset load_dataset(const DatasetPaths& paths);
void write_dataset(const Dataset& data, const std::filesystem::path& dir);

}  // namespace spacedcl
