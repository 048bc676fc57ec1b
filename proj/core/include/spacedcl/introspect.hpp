#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "spacedcl/records.hpp"

namespace spacedcl {

/// Activation counts of one label (index, category or order) per phase.
struct UsageRow {
  std::string label;
  std::vector<std::size_t> per_phase;

  bool operator==(const UsageRow&) const = default;
};

struct IntrospectionReport {
  std::size_t phases = 3;
  std::vector<UsageRow> index_usage;     // by index name
  std::vector<UsageRow> category_usage;  // graph category, or TraF / ShaF for text
  std::vector<UsageRow> order_usage;
  std::vector<double> active_fraction;   // per epoch, share of pairs current
  std::vector<std::size_t> presented;    // per epoch
  std::vector<std::size_t> cumulative_presented;
  std::vector<std::size_t> nocl_cumulative;  // train_size * (epoch + 1)
};

/// Phase of an epoch: floor(epoch * phases / epochs).
std::size_t phase_of(std::size_t epoch, std::size_t epochs, std::size_t phases);

/// Category label of an index name ("other" if unknown).
std::string index_category(const std::string& index);

IntrospectionReport introspect(const CurriculumRecord& record, std::size_t phases = 3);

/// Writes phase_usage.csv, category_usage.csv, order_usage.csv,
/// active_fraction.csv and cumulative_presented.csv into dir.
void write_introspection(const IntrospectionReport& report, const std::filesystem::path& dir);

}  // namespace spacedcl
