#include "spacedcl/index_pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>
#include <unordered_map>

#include "parse_util.hpp"
#include "spacedcl/error.hpp"
#include "spacedcl/rng.hpp"

namespace spacedcl {

IndexMatrix::IndexMatrix(std::vector<SampleId> sample_ids, std::vector<Split> splits,
                         std::vector<std::string> index_names)
    : sample_ids_(std::move(sample_ids)), splits_(std::move(splits)), index_names_(std::move(index_names)) {
  if (splits_.size() != sample_ids_.size()) throw DomainError("index matrix: split list does not match sample ids");
  raw_.assign(rows() * cols(), 0.0);
  normalized_.assign(rows() * cols(), 0.0);
  zero_columns_.assign(cols(), 0);
}

std::optional<std::size_t> IndexMatrix::column_of(std::string_view name) const {
  for (std::size_t j = 0; j < index_names_.size(); ++j) {
    if (index_names_[j] == name) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> IndexMatrix::row_of(SampleId id) const {
  // Rows are usually ordered by id; fall back to a scan otherwise.
  if (id < sample_ids_.size() && sample_ids_[id] == id) return id;
  for (std::size_t i = 0; i < sample_ids_.size(); ++i) {
    if (sample_ids_[i] == id) return i;
  }
  return std::nullopt;
}

void IndexMatrix::normalize() {
  for (std::size_t j = 0; j < cols(); ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (splits_[i] == Split::train) sq += raw(i, j) * raw(i, j);
    }
    const double norm = std::sqrt(sq);
    zero_columns_[j] = norm == 0.0;
    for (std::size_t i = 0; i < rows(); ++i) set_normalized(i, j, norm == 0.0 ? 0.0 : raw(i, j) / norm);
  }
}

bool IndexMatrix::constant_column(std::size_t col) const {
  std::optional<double> first;
  for (std::size_t i = 0; i < rows(); ++i) {
    if (splits_[i] != Split::train) continue;
    if (!first) {
      first = raw(i, col);
    } else if (raw(i, col) != *first) {
      return false;
    }
  }
  return true;
}

std::vector<double> IndexMatrix::split_column(std::size_t col, Split split) const {
  std::vector<double> out;
  for (std::size_t i = 0; i < rows(); ++i) {
    if (splits_[i] == split) out.push_back(normalized(i, col));
  }
  return out;
}

std::vector<SampleId> IndexMatrix::split_sample_ids(Split split) const {
  std::vector<SampleId> out;
  for (std::size_t i = 0; i < rows(); ++i) {
    if (splits_[i] == split) out.push_back(sample_ids_[i]);
  }
  return out;
}

IndexSpec IndexSpec::defaults_for(const Dataset& data) {
  IndexSpec spec;
  for (auto kind : all_graph_index_kinds) {
    if (is_pairwise(kind) && data.task == Task::node_classification) continue;
    spec.graph_kinds.push_back(kind);
  }
  if (data.has_texts()) spec.text_kinds.assign(all_text_index_kinds.begin(), all_text_index_kinds.end());
  return spec;
}

namespace {

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any worker is rethrown on the caller.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace

IndexMatrix build_index_matrix(const Dataset& data, const IndexSpec& spec) {
  if (data.samples.empty()) throw DomainError("no samples to index");
  for (Split s : {Split::train, Split::validation}) {
    if (std::none_of(data.samples.begin(), data.samples.end(), [&](const Sample& x) { return x.split == s; })) {
      throw DomainError("the " + std::string(to_string(s)) + " split is empty");
    }
  }
  if (spec.hops < 1) throw DomainError("hops must be at least 1");
  if (!spec.text_kinds.empty() && !data.has_texts()) throw ConfigError("text indices requested but no texts loaded");
  if (data.task == Task::node_classification) {
    for (auto kind : spec.graph_kinds) {
      if (is_pairwise(kind)) {
        throw ConfigError(std::string(to_string(kind)) + " needs two targets and cannot score node samples");
      }
    }
  }

  std::vector<GraphIndexKind> per_node_kinds;
  std::vector<GraphIndexKind> pair_kinds;
  for (auto kind : spec.graph_kinds) (is_pairwise(kind) ? pair_kinds : per_node_kinds).push_back(kind);

  std::vector<std::string> names;
  for (auto kind : spec.graph_kinds) names.emplace_back(to_string(kind));
  for (auto kind : spec.text_kinds) names.emplace_back(to_string(kind));

  std::vector<SampleId> ids;
  std::vector<Split> splits;
  for (const auto& s : data.samples) {
    ids.push_back(s.id);
    splits.push_back(s.split);
  }
  IndexMatrix m(std::move(ids), std::move(splits), names);

  // Per-node scores are shared by every sample touching the node.
  std::vector<NodeId> nodes;
  for (const auto& s : data.samples) nodes.insert(nodes.end(), s.targets.begin(), s.targets.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const std::size_t node_width = per_node_kinds.size() + spec.text_kinds.size();
  std::vector<double> node_scores(nodes.size() * node_width, 0.0);
  parallel_for(nodes.size(), spec.threads, [&](std::size_t i) {
    const NodeId v = nodes[i];
    double* row = node_scores.data() + i * node_width;
    if (!per_node_kinds.empty()) {
      const Subgraph sg = extract_ego_subgraph(data.graph, std::span<const NodeId>(&v, 1), spec.hops, spec.node_cap);
      for (std::size_t k = 0; k < per_node_kinds.size(); ++k) {
        row[k] = compute_index(per_node_kinds[k], sg, spec.graph_options);
      }
    }
    if (!spec.text_kinds.empty()) {
      const TextStats stats = analyze_text(data.texts.at(v));
      for (std::size_t k = 0; k < spec.text_kinds.size(); ++k) {
        row[per_node_kinds.size() + k] = compute_text_index(spec.text_kinds[k], stats);
      }
    }
  });
  auto node_row = [&](NodeId v) {
    const auto pos = static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
    return node_scores.data() + pos * node_width;
  };

  // Column of each kind in the matrix.
  std::vector<std::size_t> per_node_col;
  std::vector<std::size_t> pair_col;
  for (std::size_t j = 0; j < spec.graph_kinds.size(); ++j) {
    (is_pairwise(spec.graph_kinds[j]) ? pair_col : per_node_col).push_back(j);
  }

  parallel_for(data.samples.size(), spec.threads, [&](std::size_t i) {
    const Sample& s = data.samples[i];
    for (NodeId t : s.targets) {
      const double* row = node_row(t);
      for (std::size_t k = 0; k < per_node_kinds.size(); ++k) {
        m.set_raw(i, per_node_col[k], m.raw(i, per_node_col[k]) + row[k]);
      }
      for (std::size_t k = 0; k < spec.text_kinds.size(); ++k) {
        const std::size_t col = spec.graph_kinds.size() + k;
        m.set_raw(i, col, m.raw(i, col) + row[per_node_kinds.size() + k]);
      }
    }
    if (!pair_kinds.empty()) {
      const Subgraph joint = extract_ego_subgraph(data.graph, s.targets, spec.hops, spec.node_cap);
      for (std::size_t k = 0; k < pair_kinds.size(); ++k) {
        m.set_raw(i, pair_col[k], compute_index(pair_kinds[k], joint, spec.graph_options));
      }
    }
  });

  m.normalize();
  return m;
}

void write_index_csv(std::ostream& out, const IndexMatrix& m) {
  out << "sample_id,index_name,raw,normalized\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out << m.sample_ids()[i] << ',' << m.index_names()[j] << ',' << detail::format_double(m.raw(i, j)) << ','
          << detail::format_double(m.normalized(i, j)) << '\n';
    }
  }
}

IndexMatrix read_index_csv(std::istream& in, const Dataset& data) {
  struct Cell {
    double raw;
    double normalized;
  };
  std::vector<SampleId> ids;
  std::unordered_map<SampleId, std::size_t> id_pos;
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> name_pos;
  std::map<std::pair<std::size_t, std::size_t>, Cell> cells;

  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto view = detail::trim(line);
    if (view.empty()) continue;
    if (line_no == 1 && view.starts_with("sample_id")) continue;
    auto fields = detail::split(view, ',');
    if (fields.size() != 4) fail("expected \"sample_id,index_name,raw,normalized\"");
    auto id = detail::parse_integer<SampleId>(detail::trim(fields[0]));
    auto raw = detail::parse_double(detail::trim(fields[2]));
    auto norm = detail::parse_double(detail::trim(fields[3]));
    if (!id) fail("malformed sample id");
    if (!raw || !norm) fail("malformed score");
    if (*id >= data.samples.size()) {
      throw SchemaError("line " + std::to_string(line_no) + ": sample " + std::to_string(*id) +
                        " is not in the dataset");
    }
    std::string name(detail::trim(fields[1]));
    if (name.empty()) fail("empty index name");
    auto [ip, new_id] = id_pos.try_emplace(*id, ids.size());
    if (new_id) ids.push_back(*id);
    auto [np, new_name] = name_pos.try_emplace(name, names.size());
    if (new_name) names.push_back(name);
    if (!cells.emplace(std::pair{ip->second, np->second}, Cell{*raw, *norm}).second) {
      throw SchemaError("line " + std::to_string(line_no) + ": duplicate entry for sample " + std::to_string(*id) +
                        " index " + name);
    }
  }
  if (ids.empty()) throw SchemaError("index file has no rows");
  if (cells.size() != ids.size() * names.size()) {
    throw SchemaError("index file is not a full sample x index grid (" + std::to_string(cells.size()) + " of " +
                      std::to_string(ids.size() * names.size()) + " cells)");
  }
  std::vector<Split> splits;
  for (SampleId id : ids) splits.push_back(data.samples[id].split);
  IndexMatrix m(std::move(ids), std::move(splits), std::move(names));
  for (const auto& [key, cell] : cells) m.set_raw(key.first, key.second, cell.raw);
  m.normalize();  // recomputes the zero-column flags
  for (const auto& [key, cell] : cells) m.set_normalized(key.first, key.second, cell.normalized);
  return m;
}

std::vector<std::vector<double>> correlation_matrix(const IndexMatrix& m, const std::vector<std::size_t>& cols) {
  const std::size_t k = cols.size();
  std::vector<std::vector<double>> centered(k);
  std::vector<double> norms(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    auto values = m.split_column(cols[a], Split::train);
    const double mean = values.empty() ? 0.0 : std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    for (double& v : values) v -= mean;
    double sq = 0.0;
    for (double v : values) sq += v * v;
    norms[a] = std::sqrt(sq);
    centered[a] = std::move(values);
  }
  std::vector<std::vector<double>> r(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a) {
    r[a][a] = 1.0;
    for (std::size_t b = a + 1; b < k; ++b) {
      double value = 0.0;
      if (norms[a] > 0.0 && norms[b] > 0.0) {
        double dot = 0.0;
        for (std::size_t i = 0; i < centered[a].size(); ++i) dot += centered[a][i] * centered[b][i];
        value = std::clamp(dot / (norms[a] * norms[b]), -1.0, 1.0);
      }
      r[a][b] = r[b][a] = value;
    }
  }
  return r;
}

IndexSelection select_indices(const IndexMatrix& m, std::size_t k_clusters, std::uint64_t seed,
                              const std::vector<std::string>& restrict_to) {
  if (k_clusters == 0) throw ConfigError("cluster count must be at least 1");
  std::vector<std::size_t> pool;
  if (restrict_to.empty()) {
    pool.resize(m.cols());
    std::iota(pool.begin(), pool.end(), 0);
  } else {
    for (const auto& name : restrict_to) {
      auto col = m.column_of(name);
      if (!col) throw ConfigError("unknown index \"" + name + "\"");
      if (std::find(pool.begin(), pool.end(), *col) == pool.end()) pool.push_back(*col);
    }
  }
  IndexSelection sel;
  std::vector<std::size_t> cols;
  for (std::size_t c : pool) {
    if (m.constant_column(c)) continue;
    cols.push_back(c);
    sel.candidates.push_back(m.index_names()[c]);
  }
  if (cols.size() < k_clusters) {
    throw ConfigError("only " + std::to_string(cols.size()) + " non-constant indices for " +
                      std::to_string(k_clusters) + " clusters; use --clusters " + std::to_string(cols.size()) +
                      " or fewer");
  }
  const auto corr = correlation_matrix(m, cols);
  const auto km = kmeans(corr, k_clusters, seed);

  // Relabel clusters by first appearance so output order does not depend on
  // the seeding sequence.
  std::vector<std::size_t> relabel(k_clusters, k_clusters);
  std::size_t next = 0;
  for (std::size_t a : km.assignment) {
    if (relabel[a] == k_clusters) relabel[a] = next++;
  }
  sel.cluster_of.resize(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) sel.cluster_of[i] = relabel[km.assignment[i]];

  Rng rng(seed ^ 0x9E3779B97F4A7C15ull);
  for (std::size_t c = 0; c < k_clusters; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (sel.cluster_of[i] == c) members.push_back(i);
    }
    const std::size_t pick = members[static_cast<std::size_t>(rng.below(members.size()))];
    sel.selected.push_back(sel.candidates[pick]);
    sel.selected_cluster.push_back(c);
  }
  return sel;
}

void write_selection(std::ostream& out, const IndexSelection& sel) {
  for (std::size_t i = 0; i < sel.selected.size(); ++i) out << sel.selected[i] << '\t' << sel.selected_cluster[i] << '\n';
}

std::vector<std::string> read_selection(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = detail::split_whitespace(view);
    out.emplace_back(fields.front());
  }
  return out;
}

std::string_view to_string(SortOrder order) noexcept {
  switch (order) {
    case SortOrder::ascending: return "ascending";
    case SortOrder::descending: return "descending";
    case SortOrder::medium_ascending: return "medium_ascending";
    case SortOrder::medium_descending: return "medium_descending";
  }
  return "ascending";
}

std::optional<SortOrder> parse_sort_order(std::string_view s) noexcept {
  for (auto order : all_sort_orders) {
    if (to_string(order) == s) return order;
  }
  if (s == "asc") return SortOrder::ascending;
  if (s == "desc") return SortOrder::descending;
  if (s == "medium_asc") return SortOrder::medium_ascending;
  if (s == "medium_desc") return SortOrder::medium_descending;
  return std::nullopt;
}

std::string PairKey::name() const { return index + "/" + std::string(to_string(order)); }

std::optional<PairKey> PairKey::parse(std::string_view name) {
  const auto slash = name.rfind('/');
  if (slash == std::string_view::npos || slash == 0) return std::nullopt;
  auto order = parse_sort_order(name.substr(slash + 1));
  if (!order) return std::nullopt;
  return PairKey{std::string(name.substr(0, slash)), *order};
}

std::vector<SampleId> rank_by_scores(const std::vector<SampleId>& ids, const std::vector<double>& scores,
                                     SortOrder order) {
  if (ids.size() != scores.size()) throw DomainError("rank_by_scores: ids and scores differ in length");
  std::vector<double> key = scores;
  if (order == SortOrder::medium_ascending || order == SortOrder::medium_descending) {
    const double n = static_cast<double>(scores.size());
    double mean = 0.0;
    for (double s : scores) mean += s;
    mean = scores.empty() ? 0.0 : mean / n;
    double var = 0.0;
    for (double s : scores) var += (s - mean) * (s - mean);
    const double sd = scores.empty() ? 0.0 : std::sqrt(var / n);
    // |z| is quantised so that distances equal up to rounding tie exactly and
    // fall through to the id rule.
    for (double& k : key) k = sd > 0.0 ? std::round(std::abs((k - mean) / sd) * 1e12) : 0.0;
  }
  std::vector<std::size_t> perm(ids.size());
  std::iota(perm.begin(), perm.end(), 0);
  const bool high_first = order == SortOrder::descending || order == SortOrder::medium_descending;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return high_first ? key[a] > key[b] : key[a] < key[b];
    return ids[a] < ids[b];
  });
  std::vector<SampleId> out;
  out.reserve(ids.size());
  for (std::size_t p : perm) out.push_back(ids[p]);
  return out;
}

RankingTable rank_samples(const IndexMatrix& m, const PairKey& pair) {
  auto col = m.column_of(pair.index);
  if (!col) throw ConfigError("unknown index \"" + pair.index + "\"");
  RankingTable t{pair, {}, {}};
  t.train_order = rank_by_scores(m.split_sample_ids(Split::train), m.split_column(*col, Split::train), pair.order);
  t.val_order =
      rank_by_scores(m.split_sample_ids(Split::validation), m.split_column(*col, Split::validation), pair.order);
  return t;
}

std::vector<RankingTable> build_rankings(const IndexMatrix& m, const std::vector<std::string>& indices,
                                         const std::vector<SortOrder>& orders) {
  std::vector<RankingTable> out;
  for (const auto& index : indices) {
    for (auto order : orders) out.push_back(rank_samples(m, PairKey{index, order}));
  }
  return out;
}

std::vector<double> summed_difficulty(const IndexMatrix& m, const std::vector<std::string>& indices) {
  std::vector<std::size_t> cols;
  if (indices.empty()) {
    cols.resize(m.cols());
    std::iota(cols.begin(), cols.end(), 0);
  } else {
    for (const auto& name : indices) {
      auto col = m.column_of(name);
      if (!col) throw ConfigError("unknown index \"" + name + "\"");
      cols.push_back(*col);
    }
  }
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t c : cols) out[i] += m.normalized(i, c);
  }
  return out;
}

RankingTable summed_ranking(const IndexMatrix& m, const std::vector<std::string>& indices) {
  const auto total = summed_difficulty(m, indices);
  RankingTable t{PairKey{"summed", SortOrder::ascending}, {}, {}};
  for (Split split : {Split::train, Split::validation}) {
    std::vector<SampleId> ids;
    std::vector<double> scores;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m.splits()[i] != split) continue;
      ids.push_back(m.sample_ids()[i]);
      scores.push_back(total[i]);
    }
    (split == Split::train ? t.train_order : t.val_order) = rank_by_scores(ids, scores, SortOrder::ascending);
  }
  return t;
}

}  // namespace spacedcl
