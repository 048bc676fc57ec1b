#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spacedcl/index_pipeline.hpp"
#include "spacedcl/training.hpp"

namespace spacedcl {

inline constexpr std::string_view record_format_name = "spacedcl-curriculum";
inline constexpr int record_format_version = 1;

struct RecordHeader {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> pairs;  // "index/order"
  std::size_t epochs = 0;
  double c0 = 0.0;
  double alpha = 1.0;
  std::string kernel;
  double eta = 0.0;
  std::size_t train_size = 0;
  std::size_t validation_size = 0;

  bool operator==(const RecordHeader&) const = default;
};

struct RecordEntry {
  std::size_t epoch = 0;
  double competence = 0.0;
  std::vector<std::size_t> current;  // positions in RecordHeader::pairs, ascending
  std::vector<double> delays;        // per pair, after this epoch's update
  std::vector<double> taus;          // per pair
  std::vector<bool> used;            // per pair: trained on this epoch
  std::size_t presented = 0;         // distinct training samples this epoch
  std::vector<std::optional<double>> gamma;  // per pair; empty when not evaluated
  std::optional<double> validation;          // full-validation performance, if known

  bool operator==(const RecordEntry&) const = default;
};

struct CurriculumRecord {
  RecordHeader header;
  std::vector<RecordEntry> entries;

  /// SchemaError naming the first offending entry.
  void validate() const;
  bool operator==(const CurriculumRecord&) const = default;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;
/// Hash over every header field except the hash itself.
std::uint64_t config_hash(const RecordHeader& header);

/// Line-delimited JSON: a header object, then one object per epoch.
void save_record(std::ostream& out, const CurriculumRecord& record);
void save_record(const std::filesystem::path& path, const CurriculumRecord& record);
CurriculumRecord load_record(std::istream& in);
CurriculumRecord load_record(const std::filesystem::path& path);

/// Rankings for every pair named in the record, taken from a target index
/// matrix. TransferError listing all pairs the target cannot provide.
std::vector<RankingTable> rankings_for_record(const CurriculumRecord& record, const IndexMatrix& target);

/// Trains on the top ceil(n c) training samples of each recorded current pair
/// at each epoch, with no delay computation. `rankings` are matched to the
/// record by pair name.
TrainingResult replay(const CurriculumRecord& record, std::span<const RankingTable> rankings, Learner& learner,
                      const SplitIds& splits, PresentationLog* log = nullptr);

}  // namespace spacedcl
