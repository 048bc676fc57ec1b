#include "spacedcl/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "spacedcl/error.hpp"
#include "spacedcl/rng.hpp"

namespace spacedcl {

namespace {

// Word pools grouped by syllable count under the vowel-group heuristic.
constexpr std::array<std::string_view, 12> kShortWords = {
    "graph", "node", "edge", "model", "set", "path", "link", "text", "data", "word", "task", "cut"};
constexpr std::array<std::string_view, 12> kMediumWords = {
    "network", "cluster", "structure", "neighbor", "sequence", "feature",
    "labelled", "matrix", "vertex", "kernel", "signal", "pattern"};
constexpr std::array<std::string_view, 12> kLongWords = {
    "community",    "topological", "probability",  "convolution", "representation", "generalization",
    "optimization", "regularity",  "connectivity", "heterogeneous", "observability", "interpretation"};

std::string make_text(Rng& rng, double hardness) {
  // hardness in [0, 1]: probability mass shifts to long words and long sentences.
  const auto sentences = 1 + rng.below(3);
  std::string out;
  for (std::uint64_t s = 0; s < sentences; ++s) {
    const auto words = 3 + rng.below(4) + static_cast<std::uint64_t>(std::lround(hardness * 6.0));
    for (std::uint64_t w = 0; w < words; ++w) {
      const double u = rng.uniform();
      std::string_view word;
      if (u < 0.55 - 0.4 * hardness) {
        word = kShortWords[rng.below(kShortWords.size())];
      } else if (u < 0.9 - 0.3 * hardness) {
        word = kMediumWords[rng.below(kMediumWords.size())];
      } else {
        word = kLongWords[rng.below(kLongWords.size())];
      }
      if (!out.empty()) out += ' ';
      if (w == 0) {
        std::string cap(word);
        cap[0] = static_cast<char>(cap[0] - 'a' + 'A');
        out += cap;
      } else {
        out += word;
      }
    }
    out += '.';
  }
  return out;
}

void assign_splits(std::vector<Sample>& samples, const SynthParams& p, Rng& rng) {
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  const auto n_train = static_cast<std::size_t>(std::llround(p.train_fraction * samples.size()));
  const auto n_val = static_cast<std::size_t>(std::llround(p.validation_fraction * samples.size()));
  for (std::size_t r = 0; r < order.size(); ++r) {
    samples[order[r]].split = r < n_train ? Split::train : (r < n_train + n_val ? Split::validation : Split::test);
  }
}

}  // namespace

Dataset make_synthetic(const SynthParams& p) {
  if (p.nodes < 2 || p.blocks < 1 || p.blocks > p.nodes) throw ConfigError("synth: need nodes >= 2 and 1 <= blocks <= nodes");
  if (p.dim == 0) throw ConfigError("synth: feature dimension must be positive");
  if (!(p.p_in >= 0 && p.p_in <= 1 && p.p_out >= 0 && p.p_out <= 1)) throw ConfigError("synth: edge probabilities must lie in [0,1]");
  if (!(p.train_fraction > 0 && p.validation_fraction > 0 && p.train_fraction + p.validation_fraction < 1)) {
    throw ConfigError("synth: split fractions must be positive and sum below 1");
  }

  Rng block_rng(p.seed);
  Rng edge_rng(p.seed ^ 0x9e3779b97f4a7c15ULL);
  Rng feature_rng(p.seed ^ 0xbf58476d1ce4e5b9ULL);
  Rng text_rng(p.seed ^ 0x94d049bb133111ebULL);
  Rng split_rng(p.seed ^ 0x2545f4914f6cdd1dULL);

  std::vector<int> block(p.nodes);
  for (std::size_t v = 0; v < p.nodes; ++v) block[v] = static_cast<int>(v % p.blocks);
  block_rng.shuffle(std::span<int>(block));

  std::vector<EdgePair> edges;
  for (NodeId u = 0; u < p.nodes; ++u) {
    for (NodeId v = u + 1; v < p.nodes; ++v) {
      const double prob = block[u] == block[v] ? p.p_in : p.p_out;
      if (edge_rng.uniform() < prob) edges.emplace_back(u, v);
    }
  }

  Dataset data;
  data.graph = Graph::from_edges(p.nodes, edges);
  data.task = p.task;

  std::vector<double> centroids(p.blocks * p.dim);
  for (auto& c : centroids) c = feature_rng.normal() * p.centroid_scale;
  std::vector<double> hardness(p.nodes);
  std::vector<double> features(p.nodes * p.dim);
  for (NodeId v = 0; v < p.nodes; ++v) {
    hardness[v] = feature_rng.uniform();
    const double noise = 0.5 + 2.5 * hardness[v];
    for (std::size_t j = 0; j < p.dim; ++j) {
      features[v * p.dim + j] = centroids[static_cast<std::size_t>(block[v]) * p.dim + j] + noise * feature_rng.normal();
    }
  }
  data.graph.set_features(p.dim, std::move(features));
  data.graph.set_labels(block);

  data.texts.resize(p.nodes);
  for (NodeId v = 0; v < p.nodes; ++v) data.texts[v] = make_text(text_rng, hardness[v]);

  if (p.task == Task::node_classification) {
    for (NodeId v = 0; v < p.nodes; ++v) {
      data.samples.push_back(Sample{v, {v}, block[v], Split::train});
    }
  } else {
    std::vector<EdgePair> positives = data.graph.edges();
    split_rng.shuffle(std::span<EdgePair>(positives));
    if (p.link_samples > 0 && p.link_samples < positives.size()) positives.resize(p.link_samples);
    std::sort(positives.begin(), positives.end());
    std::set<EdgePair> negatives;
    const std::size_t max_negatives = p.nodes * (p.nodes - 1) / 2 - data.graph.edge_count();
    const std::size_t wanted = std::min(positives.size(), max_negatives);
    while (negatives.size() < wanted) {
      auto u = static_cast<NodeId>(split_rng.below(p.nodes));
      auto v = static_cast<NodeId>(split_rng.below(p.nodes));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (data.graph.has_edge(u, v)) continue;
      negatives.emplace(u, v);
    }
    for (auto [u, v] : positives) {
      data.samples.push_back(Sample{static_cast<SampleId>(data.samples.size()), {u, v}, 1, Split::train});
    }
    for (auto [u, v] : negatives) {
      data.samples.push_back(Sample{static_cast<SampleId>(data.samples.size()), {u, v}, 0, Split::train});
    }
  }
  assign_splits(data.samples, p, split_rng);
  data.validate();
  return data;
}

}  // namespace spacedcl
