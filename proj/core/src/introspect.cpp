#include "spacedcl/introspect.hpp"

#include <fstream>
#include <map>

#include "parse_util.hpp"
#include "spacedcl/error.hpp"
#include "spacedcl/graph_indices.hpp"
#include "spacedcl/text_indices.hpp"

namespace spacedcl {

std::size_t phase_of(std::size_t epoch, std::size_t epochs, std::size_t phases) {
  if (epochs == 0 || phases == 0) throw DomainError("phase_of needs positive epochs and phases");
  return std::min(phases - 1, epoch * phases / epochs);
}

std::string index_category(const std::string& index) {
  if (auto g = parse_graph_index_kind(index)) return std::string(to_string(category_of(*g)));
  if (auto t = parse_text_index_kind(index)) return std::string(family_of(*t));
  return "other";
}

namespace {

/// Rows in first-seen order of the labels.
class UsageTable {
 public:
  explicit UsageTable(std::size_t phases) : phases_(phases) {}
  void touch(const std::string& label) { row(label); }
  void add(const std::string& label, std::size_t phase) { ++row(label).per_phase[phase]; }
  std::vector<UsageRow> rows() const { return rows_; }

 private:
  UsageRow& row(const std::string& label) {
    auto [it, inserted] = pos_.try_emplace(label, rows_.size());
    if (inserted) rows_.push_back({label, std::vector<std::size_t>(phases_, 0)});
    return rows_[it->second];
  }
  std::size_t phases_;
  std::map<std::string, std::size_t> pos_;
  std::vector<UsageRow> rows_;
};

}  // namespace

IntrospectionReport introspect(const CurriculumRecord& record, std::size_t phases) {
  record.validate();
  if (phases == 0) throw ConfigError("phase count must be at least 1");
  IntrospectionReport r;
  r.phases = phases;
  const auto& h = record.header;
  std::vector<PairKey> keys;
  UsageTable by_index(phases), by_category(phases), by_order(phases);
  for (const auto& name : h.pairs) {
    auto key = PairKey::parse(name).value_or(PairKey{name, SortOrder::ascending});
    by_index.touch(key.index);
    by_category.touch(index_category(key.index));
    keys.push_back(std::move(key));
  }
  for (auto order : all_sort_orders) by_order.touch(std::string(to_string(order)));

  std::size_t cumulative = 0;
  for (const auto& e : record.entries) {
    const std::size_t ph = phase_of(e.epoch, h.epochs, phases);
    for (std::size_t c : e.current) {
      by_index.add(keys[c].index, ph);
      by_category.add(index_category(keys[c].index), ph);
      by_order.add(std::string(to_string(keys[c].order)), ph);
    }
    r.active_fraction.push_back(static_cast<double>(e.current.size()) / static_cast<double>(h.pairs.size()));
    cumulative += e.presented;
    r.presented.push_back(e.presented);
    r.cumulative_presented.push_back(cumulative);
    r.nocl_cumulative.push_back(h.train_size * (e.epoch + 1));
  }
  r.index_usage = by_index.rows();
  r.category_usage = by_category.rows();
  r.order_usage = by_order.rows();
  return r;
}

namespace {

void write_usage(const std::filesystem::path& path, const char* label, const std::vector<UsageRow>& rows,
                 std::size_t phases) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write " + path.string());
  out << label;
  for (std::size_t p = 0; p < phases; ++p) out << ",phase_" << (p + 1);
  out << ",total\n";
  for (const auto& row : rows) {
    out << row.label;
    std::size_t total = 0;
    for (std::size_t c : row.per_phase) {
      out << ',' << c;
      total += c;
    }
    out << ',' << total << '\n';
  }
}

}  // namespace

void write_introspection(const IntrospectionReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_usage(dir / "phase_usage.csv", "index", report.index_usage, report.phases);
  write_usage(dir / "category_usage.csv", "category", report.category_usage, report.phases);
  write_usage(dir / "order_usage.csv", "order", report.order_usage, report.phases);
  {
    std::ofstream out(dir / "active_fraction.csv", std::ios::binary);
    if (!out) throw SchemaError("cannot write " + (dir / "active_fraction.csv").string());
    out << "epoch,active_fraction\n";
    for (std::size_t e = 0; e < report.active_fraction.size(); ++e) {
      out << e << ',' << detail::format_double(report.active_fraction[e]) << '\n';
    }
  }
  std::ofstream out(dir / "cumulative_presented.csv", std::ios::binary);
  if (!out) throw SchemaError("cannot write " + (dir / "cumulative_presented.csv").string());
  out << "epoch,presented,cumulative,nocl_cumulative\n";
  for (std::size_t e = 0; e < report.presented.size(); ++e) {
    out << e << ',' << report.presented[e] << ',' << report.cumulative_presented[e] << ','
        << report.nocl_cumulative[e] << '\n';
  }
}

}  // namespace spacedcl
