#include "vislab/report.hpp"

#include <charconv>
#include <istream>
#include <json.hpp>
#include <ostream>

#include "vislab/errors.hpp"

namespace vislab::report {

namespace {

using nlohmann::json;

template <typename T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  if (s.empty()) return v;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(std::string("bad ") + what + " field '" + s + "'");
  return v;
}

std::string join_primes(const std::vector<std::uint32_t>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(ps[i]);
  }
  return s;
}

std::vector<std::uint32_t> split_primes(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string::npos) end = s.size();
    out.push_back(parse_number<std::uint32_t>(s.substr(start, end - start), "skipped_primes"));
    start = end + 1;
  }
  return out;
}

// Skips comment lines; returns false at end of input.
bool next_data_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    return true;
  }
  return false;
}

void write_preamble(std::ostream& os, const std::vector<std::string>& comments) {
  os << "# schema=" << kSchemaVersion << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
}

json record_to_json(const DiscrepancyRecord& r) {
  json j;
  j["kind"] = sweep_kind_name(r.kind);
  j["f"] = r.f;
  j["p"] = r.p;
  j["T"] = r.T;
  j["box"] = {{"X", r.X}, {"Y", r.Y}, {"X_floor", r.X_floor}, {"Y_floor", r.Y_floor}};
  j["sum_abs_dev"] = r.sum_abs_dev;
  j["bound_value"] = r.bound_value;
  j["ratio"] = r.ratio;
  j["nontrivial"] = r.nontrivial;
  j["primes_used"] = r.primes_used;
  j["skipped_primes"] = r.skipped_primes;
  j["error"] = r.error;
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_quote(std::string_view field) {
  std::string s = "\"";
  for (char ch : field) {
    if (ch == '"') s += '"';
    s += ch;
  }
  return s + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          out.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field");
  return out;
}

void write_records_csv(std::ostream& os, const std::vector<DiscrepancyRecord>& records,
                       const std::vector<std::string>& comments) {
  write_preamble(os, comments);
  os << kRecordHeader << '\n';
  for (const auto& r : records) {
    os << sweep_kind_name(r.kind) << ',' << csv_quote(r.f) << ','
       << (r.kind == SweepKind::LevelAverage ? std::to_string(r.p) : std::string()) << ','
       << (r.kind == SweepKind::PrimeAverage ? format_double(r.T) : std::string()) << ','
       << format_double(r.X) << ',' << format_double(r.Y) << ',' << r.X_floor << ',' << r.Y_floor
       << ',' << format_double(r.sum_abs_dev) << ',' << format_double(r.bound_value) << ','
       << format_double(r.ratio) << ',' << (r.nontrivial ? 1 : 0) << ',' << r.primes_used << ','
       << join_primes(r.skipped_primes) << ',' << csv_quote(r.error) << '\n';
  }
}

std::vector<DiscrepancyRecord> read_records_csv(std::istream& is) {
  std::string line;
  if (!next_data_line(is, line) || line != kRecordHeader)
    throw ParseError("missing discrepancy CSV header");
  std::vector<DiscrepancyRecord> out;
  while (next_data_line(is, line)) {
    const auto f = split_csv_line(line);
    if (f.size() != 15) throw ParseError("discrepancy CSV row has " + std::to_string(f.size()) + " fields");
    DiscrepancyRecord r;
    r.kind = parse_sweep_kind(f[0]);
    r.f = f[1];
    r.p = parse_number<std::uint32_t>(f[2], "p");
    r.T = parse_number<double>(f[3], "T");
    r.X = parse_number<double>(f[4], "X");
    r.Y = parse_number<double>(f[5], "Y");
    r.X_floor = parse_number<std::uint64_t>(f[6], "X_floor");
    r.Y_floor = parse_number<std::uint64_t>(f[7], "Y_floor");
    r.sum_abs_dev = parse_number<double>(f[8], "sum_abs_dev");
    r.bound_value = parse_number<double>(f[9], "bound_value");
    r.ratio = parse_number<double>(f[10], "ratio");
    r.nontrivial = f[11] == "1";
    r.primes_used = parse_number<std::uint32_t>(f[12], "primes_used");
    r.skipped_primes = split_primes(f[13]);
    r.error = f[14];
    out.push_back(std::move(r));
  }
  return out;
}

void write_zero_set_csv(std::ostream& os, const ZeroSetReport& rep,
                        const std::vector<std::string>& comments) {
  write_preamble(os, comments);
  os << kZeroSetHeader << '\n';
  const std::string key = csv_quote(rep.f) + ',' + format_double(rep.X) + ',' + format_double(rep.Y) + ',';
  if (rep.points.empty()) os << key << ",\n";
  for (const auto& [u, v] : rep.points) os << key << u << ',' << v << '\n';
}

ZeroSetReport read_zero_set_csv(std::istream& is) {
  std::string line;
  if (!next_data_line(is, line) || line != kZeroSetHeader) throw ParseError("missing zero-set CSV header");
  ZeroSetReport rep;
  bool first = true;
  while (next_data_line(is, line)) {
    const auto f = split_csv_line(line);
    if (f.size() != 5) throw ParseError("zero-set CSV row must have 5 fields");
    if (first) {
      rep.f = f[0];
      rep.X = parse_number<double>(f[1], "X");
      rep.Y = parse_number<double>(f[2], "Y");
      first = false;
    }
    if (f[3].empty() && f[4].empty()) continue;
    rep.points.emplace_back(parse_number<std::int64_t>(f[3], "u"), parse_number<std::int64_t>(f[4], "v"));
  }
  if (first) throw ParseError("zero-set CSV has no rows");
  return rep;
}

std::string records_json(const std::vector<DiscrepancyRecord>& records) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["records"] = json::array();
  for (const auto& r : records) doc["records"].push_back(record_to_json(r));
  return doc.dump(2);
}

std::vector<DiscrepancyRecord> records_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("schema").get<int>() != kSchemaVersion) throw ParseError("unsupported schema version");
  std::vector<DiscrepancyRecord> out;
  for (const auto& j : doc.at("records")) {
    DiscrepancyRecord r;
    r.kind = parse_sweep_kind(j.at("kind").get<std::string>());
    r.f = j.at("f").get<std::string>();
    r.p = j.at("p").get<std::uint32_t>();
    r.T = j.at("T").get<double>();
    r.X = j.at("box").at("X").get<double>();
    r.Y = j.at("box").at("Y").get<double>();
    r.X_floor = j.at("box").at("X_floor").get<std::uint64_t>();
    r.Y_floor = j.at("box").at("Y_floor").get<std::uint64_t>();
    r.sum_abs_dev = j.at("sum_abs_dev").get<double>();
    r.bound_value = j.at("bound_value").get<double>();
    r.ratio = j.at("ratio").get<double>();
    r.nontrivial = j.at("nontrivial").get<bool>();
    r.primes_used = j.at("primes_used").get<std::uint32_t>();
    r.skipped_primes = j.at("skipped_primes").get<std::vector<std::uint32_t>>();
    r.error = j.at("error").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

std::string zero_set_json(const ZeroSetReport& rep) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["f"] = rep.f;
  doc["box"] = {{"X", rep.X}, {"Y", rep.Y}};
  doc["count"] = rep.points.size();
  doc["points"] = json::array();
  for (const auto& [u, v] : rep.points) doc["points"].push_back({u, v});
  return doc.dump(2);
}

}  // namespace vislab::report
