#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spacedcl/dataset.hpp"
#include "spacedcl/graph_indices.hpp"
#include "spacedcl/text_indices.hpp"

namespace spacedcl {

/// Per-sample raw and normalised complexity scores (samples x indices).
class IndexMatrix {
 public:
  IndexMatrix() = default;
  IndexMatrix(std::vector<SampleId> sample_ids, std::vector<Split> splits, std::vector<std::string> index_names);

  std::size_t rows() const noexcept { return sample_ids_.size(); }
  std::size_t cols() const noexcept { return index_names_.size(); }
  const std::vector<SampleId>& sample_ids() const noexcept { return sample_ids_; }
  const std::vector<Split>& splits() const noexcept { return splits_; }
  const std::vector<std::string>& index_names() const noexcept { return index_names_; }
  std::optional<std::size_t> column_of(std::string_view name) const;
  std::optional<std::size_t> row_of(SampleId id) const;

  double raw(std::size_t row, std::size_t col) const { return raw_[row * cols() + col]; }
  double normalized(std::size_t row, std::size_t col) const { return normalized_[row * cols() + col]; }
  void set_raw(std::size_t row, std::size_t col, double v) { raw_[row * cols() + col] = v; }
  void set_normalized(std::size_t row, std::size_t col, double v) { normalized_[row * cols() + col] = v; }

  /// Scales every column by the L2 norm of its training rows. Columns whose
  /// training rows are all zero stay zero and are flagged.
  void normalize();
  bool zero_column(std::size_t col) const { return zero_columns_.at(col); }
  /// Zero variance over the training rows.
  bool constant_column(std::size_t col) const;

  /// Normalised scores and ids of one split, in row order.
  std::vector<double> split_column(std::size_t col, Split split) const;
  std::vector<SampleId> split_sample_ids(Split split) const;

 private:
  std::vector<SampleId> sample_ids_;
  std::vector<Split> splits_;
  std::vector<std::string> index_names_;
  std::vector<double> raw_;
  std::vector<double> normalized_;
  std::vector<char> zero_columns_;
};

struct IndexSpec {
  std::vector<GraphIndexKind> graph_kinds;
  std::vector<TextIndexKind> text_kinds;
  unsigned hops = 1;
  std::size_t node_cap = 256;
  unsigned threads = 1;
  GraphIndexOptions graph_options;

  /// Every graph kind applicable to the task (pairwise kinds only for links)
  /// and every text kind when the dataset has text.
  static IndexSpec defaults_for(const Dataset& data);
};

/// Computes raw scores for every sample, then normalises. Link samples sum the
/// two per-endpoint ego-subgraph scores, except for pairwise kinds which are
/// evaluated once on the joint two-target subgraph; text scores of a link
/// sample are likewise the sum over both endpoint texts.
IndexMatrix build_index_matrix(const Dataset& data, const IndexSpec& spec);

/// Long-format CSV: header "sample_id,index_name,raw,normalized", one row per
/// (sample, index) in row-major order.
void write_index_csv(std::ostream& out, const IndexMatrix& m);
/// Reads the CSV back; splits come from `data`, which must contain every
/// sample id in the file.
IndexMatrix read_index_csv(std::istream& in, const Dataset& data);

// ---------------------------------------------------------------------------
// Selection of a non-redundant index subset

/// Pearson correlation between the given columns over the training rows.
std::vector<std::vector<double>> correlation_matrix(const IndexMatrix& m, const std::vector<std::size_t>& cols);

struct KMeansResult {
  std::vector<std::size_t> assignment;  // cluster per point
  std::vector<std::vector<double>> centers;
  double inertia = 0.0;
};

/// Lloyd's algorithm with k-means++ seeding; keeps the lowest-inertia run out
/// of `restarts`. Every cluster of the result is non-empty.
KMeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = 100, std::size_t max_iterations = 300);

struct IndexSelection {
  std::vector<std::string> candidates;  // non-constant columns considered
  std::vector<std::size_t> cluster_of;  // per candidate
  std::vector<std::string> selected;    // one per cluster, ordered by cluster id
  std::vector<std::size_t> selected_cluster;
};

/// Clusters the rows of the correlation matrix of the non-constant columns
/// and draws one index per cluster. `restrict_to` limits the candidates.
IndexSelection select_indices(const IndexMatrix& m, std::size_t k_clusters, std::uint64_t seed,
                              const std::vector<std::string>& restrict_to = {});

void write_selection(std::ostream& out, const IndexSelection& sel);
/// Index names from a selection file ("name<TAB>cluster" or bare names).
std::vector<std::string> read_selection(std::istream& in);

// ---------------------------------------------------------------------------
// Rankings

enum class SortOrder : std::uint8_t { ascending, descending, medium_ascending, medium_descending };
inline constexpr std::array<SortOrder, 4> all_sort_orders = {SortOrder::ascending, SortOrder::descending,
                                                            SortOrder::medium_ascending, SortOrder::medium_descending};
std::string_view to_string(SortOrder order) noexcept;
std::optional<SortOrder> parse_sort_order(std::string_view s) noexcept;

/// Schedulable unit: one index combined with one sort order.
struct PairKey {
  std::string index;
  SortOrder order = SortOrder::ascending;

  std::string name() const;  // "index/order"
  static std::optional<PairKey> parse(std::string_view name);
  bool operator==(const PairKey&) const = default;
};

struct RankingTable {
  PairKey pair;
  std::vector<SampleId> train_order;
  std::vector<SampleId> val_order;
};

/// Permutation of `ids` by `scores` under `order`; medium orders sort by |z|
/// of the z-scored values. Ties break by ascending id.
std::vector<SampleId> rank_by_scores(const std::vector<SampleId>& ids, const std::vector<double>& scores,
                                     SortOrder order);

RankingTable rank_samples(const IndexMatrix& m, const PairKey& pair);
std::vector<RankingTable> build_rankings(const IndexMatrix& m, const std::vector<std::string>& indices,
                                         const std::vector<SortOrder>& orders);

/// Sum of the normalised scores over the given columns (all columns if empty),
/// per row.
std::vector<double> summed_difficulty(const IndexMatrix& m, const std::vector<std::string>& indices = {});

/// Ascending ranking by summed difficulty, named "summed/ascending".
RankingTable summed_ranking(const IndexMatrix& m, const std::vector<std::string>& indices = {});

}  // namespace spacedcl
