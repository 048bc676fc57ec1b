#include "spacedcl/records.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "parse_util.hpp"
#include "spacedcl/competence.hpp"
#include "spacedcl/error.hpp"

namespace spacedcl {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t config_hash(const RecordHeader& h) {
  std::string s = "seed=" + std::to_string(h.seed) + ";pairs=";
  for (const auto& p : h.pairs) s += p + ",";
  s += ";epochs=" + std::to_string(h.epochs) + ";c0=" + detail::format_double(h.c0) +
       ";alpha=" + detail::format_double(h.alpha) + ";kernel=" + h.kernel + ";eta=" + detail::format_double(h.eta) +
       ";train=" + std::to_string(h.train_size) + ";validation=" + std::to_string(h.validation_size);
  return fnv1a64(s);
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, 16);
  std::string s(buf, ptr);
  return std::string(16 - s.size(), '0') + s;
}

std::uint64_t parse_hex64(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw SchemaError("header: malformed config_hash");
  return v;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

void CurriculumRecord::validate() const {
  const std::size_t k = header.pairs.size();
  if (k == 0) throw SchemaError("record header lists no pairs");
  if (entries.size() != header.epochs) {
    throw SchemaError("record has " + std::to_string(entries.size()) + " entries but " +
                      std::to_string(header.epochs) + " epochs");
  }
  double last_c = -1.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    auto fail = [&](const std::string& what) { throw SchemaError("entry " + std::to_string(i) + ": " + what); };
    if (e.epoch != i) fail("epoch out of sequence");
    if (!(e.competence >= 0.0 && e.competence <= 1.0)) fail("competence outside [0, 1]");
    if (e.competence < last_c) fail("competence decreased");
    last_c = e.competence;
    if (e.delays.size() != k || e.taus.size() != k || e.used.size() != k || e.gamma.size() != k) {
      fail("per-pair arrays do not match the pair list");
    }
    if (!std::is_sorted(e.current.begin(), e.current.end()) ||
        std::adjacent_find(e.current.begin(), e.current.end()) != e.current.end()) {
      fail("current pairs must be ascending and distinct");
    }
    for (std::size_t c : e.current) {
      if (c >= k) fail("current pair " + std::to_string(c) + " not in the pair list");
    }
    for (std::size_t p = 0; p < k; ++p) {
      const bool listed = std::binary_search(e.current.begin(), e.current.end(), p);
      if (listed != e.used[p]) fail("usage flags disagree with the current pairs");
    }
  }
}

void save_record(std::ostream& out, const CurriculumRecord& record) {
  const auto& h = record.header;
  json header = {
      {"format", record_format_name},
      {"version", record_format_version},
      {"config_hash", hex64(h.config_hash)},
      {"seed", h.seed},
      {"pairs", h.pairs},
      {"epochs", h.epochs},
      {"c0", h.c0},
      {"alpha", h.alpha},
      {"kernel", h.kernel},
      {"eta", h.eta},
      {"train_size", h.train_size},
      {"validation_size", h.validation_size},
  };
  out << header.dump() << '\n';
  for (const auto& e : record.entries) {
    json gamma = json::array();
    for (const auto& g : e.gamma) gamma.push_back(optional_number(g));
    json used = json::array();
    for (bool u : e.used) used.push_back(u);
    json entry = {
        {"epoch", e.epoch},
        {"competence", e.competence},
        {"current", e.current},
        {"delays", e.delays},
        {"taus", e.taus},
        {"used", used},
        {"presented", e.presented},
        {"gamma", gamma},
        {"validation", optional_number(e.validation)},
    };
    out << entry.dump() << '\n';
  }
}

void save_record(const std::filesystem::path& path, const CurriculumRecord& record) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write " + path.string());
  save_record(out, record);
}

CurriculumRecord load_record(std::istream& in) {
  CurriculumRecord r;
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("record is empty");
  try {
    const json h = json::parse(line);
    if (h.at("format").get<std::string>() != record_format_name) throw SchemaError("not a curriculum record");
    const int version = h.at("version").get<int>();
    if (version != record_format_version) {
      throw SchemaError("unsupported record version " + std::to_string(version) + " (expected " +
                        std::to_string(record_format_version) + ")");
    }
    r.header.config_hash = parse_hex64(h.at("config_hash").get<std::string>());
    r.header.seed = h.at("seed").get<std::uint64_t>();
    r.header.pairs = h.at("pairs").get<std::vector<std::string>>();
    r.header.epochs = h.at("epochs").get<std::size_t>();
    r.header.c0 = h.at("c0").get<double>();
    r.header.alpha = h.at("alpha").get<double>();
    r.header.kernel = h.at("kernel").get<std::string>();
    r.header.eta = h.at("eta").get<double>();
    r.header.train_size = h.at("train_size").get<std::size_t>();
    r.header.validation_size = h.at("validation_size").get<std::size_t>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("header: ") + e.what());
  }
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      RecordEntry e;
      e.epoch = j.at("epoch").get<std::size_t>();
      e.competence = j.at("competence").get<double>();
      e.current = j.at("current").get<std::vector<std::size_t>>();
      e.delays = j.at("delays").get<std::vector<double>>();
      e.taus = j.at("taus").get<std::vector<double>>();
      for (const auto& u : j.at("used")) e.used.push_back(u.get<bool>());
      e.presented = j.at("presented").get<std::size_t>();
      for (const auto& g : j.at("gamma")) e.gamma.push_back(read_optional(g));
      e.validation = read_optional(j.at("validation"));
      r.entries.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw SchemaError("entry " + std::to_string(index) + ": " + e.what());
    }
    ++index;
  }
  r.validate();
  return r;
}

CurriculumRecord load_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return load_record(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::vector<RankingTable> rankings_for_record(const CurriculumRecord& record, const IndexMatrix& target) {
  std::vector<std::string> missing;
  std::vector<RankingTable> out;
  for (const auto& name : record.header.pairs) {
    auto key = PairKey::parse(name);
    if (!key || !target.column_of(key->index)) {
      missing.push_back(name);
      continue;
    }
    out.push_back(rank_samples(target, *key));
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw TransferError("target data lacks " + std::to_string(missing.size()) + " recorded pair(s): " + list);
  }
  return out;
}

TrainingResult replay(const CurriculumRecord& record, std::span<const RankingTable> rankings, Learner& learner,
                      const SplitIds& splits, PresentationLog* log) {
  record.validate();
  std::unordered_map<std::string, const RankingTable*> by_name;
  for (const auto& r : rankings) by_name.emplace(r.pair.name(), &r);
  std::vector<const RankingTable*> tables;
  std::string missing;
  for (const auto& name : record.header.pairs) {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      missing += (missing.empty() ? "" : ", ") + name;
      tables.push_back(nullptr);
    } else {
      tables.push_back(it->second);
    }
  }
  if (!missing.empty()) throw TransferError("target rankings lack recorded pair(s): " + missing);
  const std::size_t n = tables.front()->train_order.size();
  if (n == 0) throw DomainError("the target training split is empty");

  TrainingResult result;
  CheckpointTracker tracker;
  for (const auto& e : record.entries) {
    const std::size_t k = count_for_competence(n, e.competence);
    std::vector<std::vector<SampleId>>* epoch_log = log ? &log->epochs.emplace_back() : nullptr;
    std::vector<std::vector<SampleId>> passes;
    for (std::size_t c : e.current) {
      const auto& order = tables[c]->train_order;
      std::vector<SampleId> top(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::min(k, order.size())));
      train_pass(learner, top, epoch_log);
      result.pass_samples_total += top.size();
      passes.push_back(std::move(top));
    }
    const std::size_t presented = union_of(passes).size();
    result.presented.push_back(presented);
    result.presented_total += presented;
    const double val = learner.eval_on(splits.validation);
    result.validation.push_back(val);
    tracker.offer(e.epoch, val, learner);
  }
  tracker.finish(learner, splits, result);
  return result;
}

}  // namespace spacedcl
