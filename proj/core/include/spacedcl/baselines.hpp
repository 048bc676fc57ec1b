#pragma once

#include <cstddef>

#include "spacedcl/competence.hpp"
#include "spacedcl/index_pipeline.hpp"
#include "spacedcl/training.hpp"

namespace spacedcl {

/// Standard training: one pass over the whole training split every epoch.
TrainingResult run_nocl(Learner& learner, const SplitIds& splits, std::size_t epochs,
                        PresentationLog* log = nullptr);

/// Competence-gated curriculum over one fixed ranking (normally
/// summed_ranking): the top n c(t) samples each epoch, no delays.
TrainingResult run_ccl(Learner& learner, const SplitIds& splits, const RankingTable& ranking,
                       const CompetenceParams& competence, PresentationLog* log = nullptr);

}  // namespace spacedcl
