#include "spacedcl/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "parse_util.hpp"
#include "spacedcl/error.hpp"

namespace spacedcl {

std::string_view to_string(Task task) noexcept {
  return task == Task::node_classification ? "node_classification" : "link_prediction";
}

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::test: return "test";
  }
  return "train";
}

std::optional<Task> parse_task(std::string_view s) noexcept {
  if (s == "node_classification" || s == "node") return Task::node_classification;
  if (s == "link_prediction" || s == "link") return Task::link_prediction;
  return std::nullopt;
}

std::optional<Split> parse_split(std::string_view s) noexcept {
  if (s == "train") return Split::train;
  if (s == "validation" || s == "val") return Split::validation;
  if (s == "test") return Split::test;
  return std::nullopt;
}

std::vector<SampleId> Dataset::split_ids(Split split) const {
  std::vector<SampleId> out;
  for (const auto& s : samples) {
    if (s.split == split) out.push_back(s.id);
  }
  return out;
}

SplitIds Dataset::splits() const {
  return {split_ids(Split::train), split_ids(Split::validation), split_ids(Split::test)};
}

std::string Dataset::sample_text(const Sample& s) const {
  if (texts.empty()) return {};
  std::string out;
  for (NodeId t : s.targets) {
    if (!out.empty()) out += ' ';
    out += texts.at(t);
  }
  return out;
}

int Dataset::class_count() const {
  if (task == Task::link_prediction) return 2;
  int max_label = -1;
  for (const auto& s : samples) max_label = std::max(max_label, s.label);
  return max_label + 1;
}

void Dataset::validate() const {
  const std::size_t arity = task == Task::node_classification ? 1 : 2;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (s.id != i) throw SchemaError("sample ids must be contiguous from 0; found " + std::to_string(s.id) +
                                     " at position " + std::to_string(i));
    if (s.targets.size() != arity) {
      throw ConfigError("sample " + std::to_string(s.id) + " has " + std::to_string(s.targets.size()) +
                        " targets but task " + std::string(to_string(task)) + " needs " +
                        std::to_string(arity));
    }
    for (NodeId t : s.targets) {
      if (!graph.contains(t)) throw SchemaError("sample " + std::to_string(s.id) + " targets unknown node " +
                                                std::to_string(t));
    }
    if (s.label < 0) throw SchemaError("sample " + std::to_string(s.id) + " has a negative label");
    if (task == Task::link_prediction && s.label > 1) {
      throw SchemaError("link sample " + std::to_string(s.id) + " label must be 0 or 1");
    }
  }
  if (!texts.empty() && texts.size() != graph.node_count()) {
    throw SchemaError("text table size does not match node count");
  }
}

std::vector<Sample> parse_samples(std::istream& in, const Graph& g) {
  std::vector<Sample> out;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](std::string_view what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + std::string(what));
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = detail::split_whitespace(view);
    if (fields.size() != 4) fail("expected \"sample_id split targets label\"");
    auto id = detail::parse_integer<SampleId>(fields[0]);
    auto split = parse_split(fields[1]);
    auto label = detail::parse_integer<int>(fields[3]);
    if (!id) fail("malformed sample id");
    if (!split) fail("unknown split \"" + std::string(fields[1]) + "\"");
    if (!label) fail("malformed label");
    Sample s{*id, {}, *label, *split};
    for (auto part : detail::split(fields[2], ',')) {
      auto t = detail::parse_integer<NodeId>(part);
      if (!t) fail("malformed target list");
      if (!g.contains(*t)) fail("unknown node id " + std::string(part));
      s.targets.push_back(*t);
    }
    if (s.targets.empty() || s.targets.size() > 2) fail("a sample has one or two targets");
    if (s.id != out.size()) fail("sample ids must be contiguous from 0");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> parse_texts(std::istream& in, const Graph& g) {
  std::vector<std::string> texts(g.node_count());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected \"node_id<TAB>text\"");
    }
    auto node = detail::parse_integer<NodeId>(detail::trim(std::string_view(line).substr(0, tab)));
    if (!node) throw ParseError("line " + std::to_string(line_no) + ": malformed node id");
    if (!g.contains(*node)) {
      throw SchemaError("line " + std::to_string(line_no) + ": unknown node id " + std::to_string(*node));
    }
    texts[*node] = line.substr(tab + 1);
  }
  return texts;
}

DatasetPaths DatasetPaths::in_directory(const std::filesystem::path& dir) {
  DatasetPaths p;
  p.edges = dir / DatasetFiles::edges;
  p.samples = dir / DatasetFiles::samples;
  auto optional_file = [&](std::string_view name) -> std::optional<std::filesystem::path> {
    auto path = dir / name;
    if (std::filesystem::exists(path)) return path;
    return std::nullopt;
  };
  p.features = optional_file(DatasetFiles::features);
  p.labels = optional_file(DatasetFiles::labels);
  p.texts = optional_file(DatasetFiles::texts);
  return p;
}

Dataset load_dataset(const DatasetPaths& paths) {
  Dataset data;
  data.graph = load_dataset(paths.edges, paths.features, paths.labels);
  auto open = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw SchemaError("cannot open " + p.string());
    return in;
  };
  try {
    auto in = open(paths.samples);
    data.samples = parse_samples(in, data.graph);
  } catch (const Error& e) {
    throw Error(e.kind(), paths.samples.string() + ": " + e.what());
  }
  if (data.samples.empty()) throw SchemaError(paths.samples.string() + ": no samples");
  data.task = data.samples.front().targets.size() == 1 ? Task::node_classification : Task::link_prediction;
  if (paths.texts) {
    try {
      auto in = open(*paths.texts);
      data.texts = parse_texts(in, data.graph);
    } catch (const Error& e) {
      throw Error(e.kind(), paths.texts->string() + ": " + e.what());
    }
  }
  data.validate();
  return data;
}

void write_dataset(const Dataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](std::string_view name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw SchemaError("cannot write " + (dir / name).string());
    return out;
  };
  const auto& g = data.graph;
  {
    auto out = open(DatasetFiles::edges);
    out << "# nodes: " << g.node_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << '\t' << v << '\n';
  }
  if (g.has_features()) {
    auto out = open(DatasetFiles::features);
    out << "node";
    for (std::size_t j = 0; j < g.feature_dim(); ++j) out << ",f" << j;
    out << '\n';
    for (NodeId v = 0; v < g.node_count(); ++v) {
      out << v;
      for (double x : g.features(v)) out << ',' << detail::format_double(x);
      out << '\n';
    }
  }
  if (g.has_labels()) {
    auto out = open(DatasetFiles::labels);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (g.label(v) >= 0) out << v << ' ' << g.label(v) << '\n';
    }
  }
  if (data.has_texts()) {
    auto out = open(DatasetFiles::texts);
    for (NodeId v = 0; v < g.node_count(); ++v) out << v << '\t' << data.texts[v] << '\n';
  }
  {
    auto out = open(DatasetFiles::samples);
    out << "# sample_id\tsplit\ttargets\tlabel\n";
    for (const auto& s : data.samples) {
      out << s.id << '\t' << to_string(s.split) << '\t';
      for (std::size_t i = 0; i < s.targets.size(); ++i) out << (i ? "," : "") << s.targets[i];
      out << '\t' << s.label << '\n';
    }
  }
}

}  // namespace spacedcl
