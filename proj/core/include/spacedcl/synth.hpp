#pragma once

#include <cstddef>
#include <cstdint>

#include "spacedcl/dataset.hpp"

namespace spacedcl {

/// Planted-partition benchmark generator.
///
/// Nodes are assigned to `blocks` balanced blocks (the class labels); an
/// undirected edge joins u < v with probability p_in inside a block and p_out
/// across blocks. Features are the block centroid plus Gaussian noise whose
/// scale varies per node, so samples differ in difficulty. Each node also
/// gets a short synthetic text whose word lengths track that noise scale.
struct SynthParams {
  std::size_t nodes = 400;
  std::size_t blocks = 2;
  double p_in = 0.05;
  double p_out = 0.005;
  std::size_t dim = 16;
  std::uint64_t seed = 7;
  Task task = Task::node_classification;
  double centroid_scale = 0.3;
  double train_fraction = 0.6;
  double validation_fraction = 0.2;
  /// Link task only: number of positive samples (0 = all edges).
  std::size_t link_samples = 0;
};

Dataset make_synthetic(const SynthParams& params);

}  // namespace spacedcl
