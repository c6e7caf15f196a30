#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>

#include "dsearch/error.hpp"
#include "dsearch/harness.hpp"
#include "json.hpp"

namespace dsearch {

namespace {

constexpr const char* kCsvHeader =
    "round,pair_index,s,t,variant,outcome,walk_steps,route_length,refined_length,consults,"
    "oracle_distance";

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

template <typename T>
std::string optional_field(const std::optional<T>& value) {
  return value ? std::to_string(*value) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::uint64_t parse_uint(const std::string& field, const std::string& where) {
  try {
    std::size_t used = 0;
    const auto value = std::stoull(field, &used);
    if (used == field.size()) return value;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::parse, where + ": expected an unsigned integer, got \"" + field + "\"");
}

}  // namespace

void emit_csv(const std::vector<Variant>& variants, const std::vector<SearchRecord>& records,
              const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.round << ',' << r.pair_index << ',' << r.source << ',' << r.target << ','
        << variants.at(r.variant).name << ',' << to_string(r.outcome) << ',' << r.walk_steps << ','
        << optional_field(r.route_length) << ',' << optional_field(r.refined_length) << ','
        << r.consults << ',' << optional_field(r.oracle_distance) << '\n';
  }
  finish(out, path);
}

std::vector<SearchRecord> load_records_csv(const std::vector<Variant>& variants,
                                           const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < variants.size(); ++i) index.emplace(variants[i].name, i);

  std::vector<SearchRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (line_no == 1) {
      if (line != kCsvHeader) throw Error(ErrorKind::parse, where + ": unexpected header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 11) {
      throw Error(ErrorKind::parse, where + ": expected 11 fields, got " + std::to_string(f.size()));
    }
    auto optional_uint = [&](const std::string& field) -> std::optional<std::uint64_t> {
      if (field.empty()) return std::nullopt;
      return parse_uint(field, where);
    };
    SearchRecord r;
    r.round = parse_uint(f[0], where);
    r.pair_index = parse_uint(f[1], where);
    r.source = static_cast<NodeId>(parse_uint(f[2], where));
    r.target = static_cast<NodeId>(parse_uint(f[3], where));
    const auto it = index.find(f[4]);
    if (it == index.end()) throw Error(ErrorKind::parse, where + ": unknown variant \"" + f[4] + "\"");
    r.variant = it->second;
    const auto outcome = parse_outcome(f[5]);
    if (!outcome) throw Error(ErrorKind::parse, where + ": unknown outcome \"" + f[5] + "\"");
    r.outcome = *outcome;
    r.walk_steps = parse_uint(f[6], where);
    r.route_length = optional_uint(f[7]);
    r.refined_length = optional_uint(f[8]);
    r.consults = parse_uint(f[9], where);
    if (auto d = optional_uint(f[10])) r.oracle_distance = static_cast<std::uint32_t>(*d);
    records.push_back(r);
  }
  return records;
}

std::string summary_to_json(const ExperimentSummary& summary) {
  using nlohmann::json;
  json doc;
  doc["node_count"] = summary.node_count;
  doc["edge_count"] = summary.edge_count;
  doc["pairs_per_round"] = summary.pairs_per_round;
  doc["rounds"] = summary.rounds;
  doc["master_seed"] = summary.master_seed;
  doc["variants"] = json::array();
  for (const auto& v : summary.variants) {
    json hist = json::object();
    for (const auto& [length, count] : v.length_histogram) hist[std::to_string(length)] = count;
    doc["variants"].push_back({
        {"variant", v.variant},
        {"searches", v.searches},
        {"successes", v.successes},
        {"success_rate", v.success_rate},
        {"mean_walk_steps", v.mean_walk_steps},
        {"mean_route_length", v.mean_route_length},
        {"mean_refined_length", v.mean_refined_length ? json(*v.mean_refined_length) : json(nullptr)},
        {"fraction_under_10", v.fraction_under_10},
        {"max_refined_length", v.max_refined_length ? json(*v.max_refined_length) : json(nullptr)},
        {"length_histogram", hist},
        {"oracle_mean_shortest_path", v.oracle_mean_shortest_path},
        {"mean_consults", v.mean_consults},
    });
  }
  return doc.dump(2) + "\n";
}

void emit_summary_json(const ExperimentSummary& summary, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << summary_to_json(summary);
  finish(out, path);
}

void emit_histogram(const std::vector<Variant>& variants, const std::vector<SearchRecord>& records,
                    std::size_t bin_width, const std::filesystem::path& path) {
  if (bin_width < 1) throw Error(ErrorKind::invalid_config, "histogram bin width must be >= 1");
  std::vector<std::map<std::size_t, std::size_t>> bins(variants.size());
  for (const auto& r : records) {
    if (r.found()) ++bins.at(r.variant)[(r.walk_steps / bin_width) * bin_width];
  }
  auto out = open_for_write(path);
  out << "variant,bin_lower_bound,count\n";
  for (std::size_t i = 0; i < variants.size(); ++i) {
    for (const auto& [lower, count] : bins[i]) {
      out << variants[i].name << ',' << lower << ',' << count << '\n';
    }
  }
  finish(out, path);
}

void write_outputs(const ExperimentPlan& plan, const ExperimentResult& result,
                   const std::filesystem::path& dir, std::size_t bin_width) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());
  emit_csv(plan.variants, result.records, dir / "searches.csv");
  emit_summary_json(result.summary, dir / "summary.json");
  emit_histogram(plan.variants, result.records, bin_width, dir / "histogram.csv");
}

}  // namespace dsearch
