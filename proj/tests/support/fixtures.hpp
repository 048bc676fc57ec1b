#pragma once

#include <vector>

#include "spacedcl/dataset.hpp"
#include "spacedcl/index_pipeline.hpp"
#include "spacedcl/synth.hpp"

namespace fixture {

/// Dataset over `edges` with one node sample per listed node.
inline spacedcl::Dataset node_dataset(std::size_t n, const std::vector<spacedcl::EdgePair>& edges,
                                      const std::vector<spacedcl::Split>& splits) {
  spacedcl::Dataset d;
  d.graph = spacedcl::Graph::from_edges(n, edges);
  d.task = spacedcl::Task::node_classification;
  for (spacedcl::SampleId i = 0; i < splits.size(); ++i) {
    d.samples.push_back({i, {static_cast<spacedcl::NodeId>(i)}, static_cast<int>(i % 2), splits[i]});
  }
  return d;
}

/// A matrix with one column per score vector; every sample in the given split.
inline spacedcl::IndexMatrix matrix_of(const std::vector<std::vector<double>>& columns,
                                       const std::vector<spacedcl::Split>& splits) {
  std::vector<spacedcl::SampleId> ids(splits.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<spacedcl::SampleId>(i);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < columns.size(); ++j) names.push_back("c" + std::to_string(j));
  spacedcl::IndexMatrix m(ids, splits, names);
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < splits.size(); ++i) m.set_raw(i, j, columns[j][i]);
  m.normalize();
  return m;
}

/// Synthetic benchmark plus its index matrix (all default indices).
struct Pipeline {
  spacedcl::Dataset data;
  spacedcl::IndexMatrix matrix;
};

inline Pipeline synthetic_pipeline(const spacedcl::SynthParams& params) {
  Pipeline p;
  p.data = spacedcl::make_synthetic(params);
  p.matrix = spacedcl::build_index_matrix(p.data, spacedcl::IndexSpec::defaults_for(p.data));
  return p;
}

}  // namespace fixture
