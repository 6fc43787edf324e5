#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "vislab/arith.hpp"
#include "vislab/counting.hpp"
#include "vislab/experiments.hpp"
#include "vislab/irreducible.hpp"
#include "vislab/poly.hpp"
#include "vislab/report.hpp"

namespace vislab::cli {

namespace {

using ojson = nlohmann::ordered_json;

class HelpRequested : public Error {
 public:
  using Error::Error;
};

struct Flags {
  std::string polynomial;
  std::uint32_t p = 0;
  std::int64_t a = 0;
  double X = 0, Y = 0, T = 0;
  std::vector<double> deltas;
  std::vector<std::uint32_t> primes;
  std::vector<double> T_values;
  std::string format = "table";
  std::string out_path;
  unsigned workers = 1;
  std::string strategy = "auto";
  std::string from_csv;
};

CLI::Option* add_format(CLI::App* sub, Flags& fl) {
  sub->add_option("--out", fl.out_path, "Write output to this file instead of stdout");
  return sub->add_option("--format", fl.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
}

void add_poly(CLI::App* sub, Flags& fl) {
  sub->add_option("-f,--poly", fl.polynomial, "Polynomial, e.g. \"V^2 - U^3 - U - 1\"")->required();
}

OutputFormat to_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  return OutputFormat::Table;
}

void check_prime(std::uint32_t p) {
  if (!is_prime(p)) throw UsageError("-p " + std::to_string(p) + ": modulus must be prime");
}

void check_box(double X, double Y, std::optional<std::uint32_t> p) {
  if (!(X >= 1.0)) throw UsageError("-X " + report::format_double(X) + ": must be >= 1");
  if (!(Y >= 1.0)) throw UsageError("-Y " + report::format_double(Y) + ": must be >= 1");
  if (p && X > *p) throw UsageError("-X " + report::format_double(X) + ": must be <= p = " + std::to_string(*p));
  if (p && Y > *p) throw UsageError("-Y " + report::format_double(Y) + ": must be <= p = " + std::to_string(*p));
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::vector<std::string> csv_comments(const RunConfig& c) {
  return {"command=" + c.command, "generated=" + utc_timestamp()};
}

// Flat key/value result for the simple commands.
void emit_fields(std::ostream& os, const RunConfig& c, const ojson& fields) {
  switch (c.format) {
    case OutputFormat::Json: {
      ojson doc;
      doc["schema"] = report::kSchemaVersion;
      doc["command"] = c.command;
      for (auto it = fields.begin(); it != fields.end(); ++it) doc[it.key()] = it.value();
      os << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv: {
      os << "# schema=" << report::kSchemaVersion << '\n';
      for (const auto& line : csv_comments(c)) os << "# " << line << '\n';
      std::string header, row;
      for (auto it = fields.begin(); it != fields.end(); ++it) {
        if (!header.empty()) {
          header += ',';
          row += ',';
        }
        header += it.key();
        const auto& v = it.value();
        if (v.is_string())
          row += report::csv_quote(v.get<std::string>());
        else if (v.is_number_float())
          row += report::format_double(v.get<double>());
        else if (v.is_array()) {
          std::string joined;
          for (const auto& e : v) joined += (joined.empty() ? "" : ";") + (e.is_string() ? e.get<std::string>() : e.dump());
          row += joined;
        } else
          row += v.dump();
      }
      os << header << '\n' << row << '\n';
      break;
    }
    case OutputFormat::Table:
      for (auto it = fields.begin(); it != fields.end(); ++it) {
        const auto& v = it.value();
        os << it.key() << '=';
        if (v.is_string())
          os << v.get<std::string>();
        else if (v.is_number_float())
          os << std::fixed << std::setprecision(4) << v.get<double>() << std::defaultfloat;
        else
          os << v.dump();
        os << '\n';
      }
      break;
  }
}

void emit_records(std::ostream& os, const RunConfig& c, const std::vector<DiscrepancyRecord>& recs,
                  const ojson& extra = ojson::object()) {
  switch (c.format) {
    case OutputFormat::Csv:
      report::write_records_csv(os, recs, csv_comments(c));
      break;
    case OutputFormat::Json: {
      ojson doc = ojson::parse(report::records_json(recs));
      for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
      os << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::Table:
      for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        if (i) os << '\n';
        os << "kind=" << sweep_kind_name(r.kind) << "\nf=" << r.f << '\n';
        if (r.kind == SweepKind::LevelAverage)
          os << "p=" << r.p << '\n';
        else
          os << "T=" << report::format_double(r.T) << '\n';
        os << "X=" << report::format_double(r.X) << " (floor " << r.X_floor << ")\n"
           << "Y=" << report::format_double(r.Y) << " (floor " << r.Y_floor << ")\n";
        if (!r.ok()) {
          os << "error=" << r.error << '\n';
          continue;
        }
        os << "sum_abs_dev=" << report::format_double(r.sum_abs_dev) << '\n'
           << "bound_value=" << report::format_double(r.bound_value) << '\n'
           << "ratio=" << report::format_double(r.ratio) << '\n'
           << "nontrivial=" << (r.nontrivial ? "true" : "false") << '\n'
           << "primes_used=" << r.primes_used << '\n';
        if (r.kind == SweepKind::PrimeAverage) {
          os << "skipped_primes=";
          for (std::size_t k = 0; k < r.skipped_primes.size(); ++k) os << (k ? "," : "") << r.skipped_primes[k];
          os << '\n';
        }
      }
      for (auto it = extra.begin(); it != extra.end(); ++it) os << it.key() << '=' << it.value().dump() << '\n';
      break;
  }
}

void emit_zero_set(std::ostream& os, const RunConfig& c, const ZeroSetReport& rep) {
  switch (c.format) {
    case OutputFormat::Csv:
      report::write_zero_set_csv(os, rep, csv_comments(c));
      break;
    case OutputFormat::Json:
      os << report::zero_set_json(rep) << '\n';
      break;
    case OutputFormat::Table:
      os << "f=" << rep.f << "\nX=" << report::format_double(rep.X) << "\nY=" << report::format_double(rep.Y)
         << "\ncount=" << rep.points.size() << '\n';
      for (const auto& [u, v] : rep.points) os << u << ' ' << v << '\n';
      break;
  }
}

ojson box_fields(double X, double Y) {
  ojson j;
  j["X"] = X;
  j["Y"] = Y;
  j["X_floor"] = static_cast<std::uint64_t>(X);
  j["Y_floor"] = static_cast<std::uint64_t>(Y);
  return j;
}

void merge(ojson& into, const ojson& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

int run_replay(const RunConfig& c, std::ostream& os) {
  std::ifstream in(c.from_csv);
  if (!in) throw UsageError("--from-csv " + c.from_csv + ": cannot open file");
  std::string line;
  std::streampos body = in.tellg();
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      body = in.tellg();
      continue;
    }
    break;
  }
  in.clear();
  in.seekg(body);
  if (line.rfind("kind,", 0) == 0) {
    emit_records(os, c, report::read_records_csv(in));
  } else if (line.rfind("f,X,Y,u,v", 0) == 0) {
    emit_zero_set(os, c, report::read_zero_set_csv(in));
  } else {
    throw UsageError("--from-csv " + c.from_csv + ": unrecognized CSV header");
  }
  return kExitOk;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"vislab: visible points on level curves of bivariate polynomials mod p", "vislab"};
  app.require_subcommand(0, 1);
  Flags fl;
  app.add_option("--from-csv", fl.from_csv, "Replay a CSV emitted by this tool");
  auto* replay_format = add_format(&app, fl);
  (void)replay_format;

  auto* count = app.add_subcommand("count", "Count level-curve points #F_{p,a}(X,Y)");
  auto* visible = app.add_subcommand("visible", "Count visible points N_{p,a}(X,Y) by both paths");
  auto* irred = app.add_subcommand("irred", "Absolute irreducibility verdict for f mod p");
  auto* badset = app.add_subcommand("badset", "Levels a with f - a not absolutely irreducible");
  auto* zeros = app.add_subcommand("zeros", "Integer zeros of f in the box");
  auto* expa = app.add_subcommand("exp-a", "Discrepancy summed over all levels a at fixed p");
  auto* expp = app.add_subcommand("exp-p", "Discrepancy summed over primes T/2 <= p <= T at a = 0");
  auto* sweep = app.add_subcommand("sweep", "Series of exp-a or exp-p runs");

  for (auto* sub : {count, visible, irred, badset, zeros, expa, expp, sweep}) {
    add_poly(sub, fl);
    add_format(sub, fl);
  }
  for (auto* sub : {count, visible, irred, badset, expa}) sub->add_option("-p", fl.p, "Prime modulus")->required();
  for (auto* sub : {count, visible}) sub->add_option("-a", fl.a, "Level value")->required();
  for (auto* sub : {count, visible, zeros, expa, expp}) {
    sub->add_option("-X", fl.X, "Box width (real)")->required();
    sub->add_option("-Y", fl.Y, "Box height (real)")->required();
  }
  for (auto* sub : {badset, expa, expp, sweep})
    sub->add_option("--workers", fl.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  count->add_option("--strategy", fl.strategy, "Counting strategy")
      ->check(CLI::IsMember({"auto", "grid", "rows"}));
  expa->add_option("--delta", fl.deltas, "Corollary profile thresholds in (0,1)")->delimiter(',');
  expp->add_option("-T", fl.T, "Upper end of the prime range")->required();
  auto* primes_opt = sweep->add_option("--primes", fl.primes, "Primes p for an exp-a series")->delimiter(',');
  auto* t_opt = sweep->add_option("--T", fl.T_values, "Values of T for an exp-p series")->delimiter(',');
  primes_opt->excludes(t_opt);
  auto* sx = sweep->add_option("-X", fl.X, "Box width (default p for --primes)");
  auto* sy = sweep->add_option("-Y", fl.Y, "Box height (default p for --primes)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig c;
  c.from_csv = fl.from_csv;
  c.format = to_format(fl.format);
  c.out_path = fl.out_path;
  c.workers = fl.workers;
  c.strategy = fl.strategy;
  const auto subs = app.get_subcommands();
  if (subs.empty()) {
    if (fl.from_csv.empty()) throw UsageError("a command is required (or --from-csv)");
    c.command = "replay";
    if (app.get_option("--format")->count() == 0) c.format = OutputFormat::Csv;
    return c;
  }
  if (!fl.from_csv.empty()) throw UsageError("--from-csv cannot be combined with a command");
  c.command = subs.front()->get_name();
  c.polynomial = fl.polynomial;
  try {
    IntBivariatePoly::parse(c.polynomial);
  } catch (const ParseError& e) {
    throw UsageError(std::string("-f: ") + e.what());
  }

  CLI::App* sub = subs.front();
  auto given = [sub](const char* name) { return sub->get_option_no_throw(name) && sub->get_option(name)->count() > 0; };
  if (given("-p")) {
    check_prime(fl.p);
    c.p = fl.p;
  }
  if (given("-a")) c.a = fl.a;
  if (given("-X")) c.X = fl.X;
  if (given("-Y")) c.Y = fl.Y;
  if (given("-T")) c.T = fl.T;
  c.deltas = fl.deltas;
  for (double d : c.deltas)
    if (!(d > 0.0 && d < 1.0)) throw UsageError("--delta " + report::format_double(d) + ": must lie in (0,1)");

  if (c.command == "zeros" || c.command == "exp-p") check_box(*c.X, *c.Y, std::nullopt);
  if (c.command == "count" || c.command == "visible" || c.command == "exp-a") check_box(*c.X, *c.Y, c.p);
  if (c.command == "exp-p" && !(*c.T >= 4.0)) throw UsageError("-T " + report::format_double(*c.T) + ": must be >= 4");

  if (c.command == "sweep") {
    c.primes = fl.primes;
    c.T_values = fl.T_values;
    if (c.primes.empty() && c.T_values.empty()) throw UsageError("sweep needs --primes or --T");
    for (auto p : c.primes) check_prime(p);
    if (!c.T_values.empty() && (sx->count() == 0 || sy->count() == 0))
      throw UsageError("sweep --T needs -X and -Y");
    if (sx->count() != sy->count()) throw UsageError("sweep: give both -X and -Y or neither");
    if (sx->count()) check_box(*c.X, *c.Y, std::nullopt);
  }
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!c.out_path.empty()) {
    file.open(c.out_path);
    if (!file) {
      err << "vislab: cannot open --out " << c.out_path << '\n';
      return kExitFailure;
    }
  }
  std::ostream& os = c.out_path.empty() ? out : file;

  if (c.command == "replay") return run_replay(c, os);

  const IntBivariatePoly f = IntBivariatePoly::parse(c.polynomial);
  ojson fields;
  fields["f"] = f.to_string();

  if (c.command == "count" || c.command == "visible") {
    const LevelCurveSpec spec(f, *c.p, *c.a);
    const CountBox box{*c.X, *c.Y};
    fields["p"] = spec.p();
    fields["a"] = spec.a();
    merge(fields, box_fields(box.X, box.Y));
    fields["in_theorem_scope"] = spec.in_theorem_scope();
    if (c.command == "count") {
      CountStrategy s = CountStrategy::Auto;
      if (c.strategy == "grid") s = CountStrategy::GridSweep;
      if (c.strategy == "rows") s = CountStrategy::RowRoots;
      fields["strategy"] = c.strategy;
      fields["count"] = count_level_points(spec, box, s);
    } else {
      const auto direct = count_visible_direct(spec, box);
      const auto mobius = count_visible_mobius(spec, box);
      if (direct != mobius) {
        err << "vislab: internal error: direct=" << direct << " mobius=" << mobius << '\n';
        return kExitFailure;
      }
      fields["direct"] = direct;
      fields["mobius"] = mobius;
      fields["expected"] = static_cast<double>(expected_visible(box, spec.p()));
    }
    emit_fields(os, c, fields);
    return kExitOk;
  }

  if (c.command == "irred") {
    const ModBivariatePoly g = reduce_mod(f, *c.p).poly;
    const IrreducibilityVerdict v = is_absolutely_irreducible(g);
    fields["p"] = *c.p;
    fields["reduced"] = g.to_string();
    fields["irreducible_over_base"] = v.irreducible_over_base;
    fields["absolutely_irreducible"] = v.absolutely_irreducible;
    if (v.witness) {
      fields["witness_e"] = v.witness->extension_degree;
      fields["witness"] = v.witness->description;
    }
    emit_fields(os, c, fields);
    return kExitOk;
  }

  if (c.command == "badset") {
    const auto bad = bad_level_values(f, *c.p, c.workers);
    fields["p"] = *c.p;
    fields["size"] = bad.size();
    fields["bad_levels"] = bad;
    emit_fields(os, c, fields);
    return kExitOk;
  }

  if (c.command == "zeros") {
    emit_zero_set(os, c, integer_zero_set(f, CountBox{*c.X, *c.Y}));
    return kExitOk;
  }

  if (c.command == "exp-a") {
    const CountBox box{*c.X, *c.Y};
    const auto res = theorem1_analysis(f, *c.p, box, c.workers);
    const auto& deltas = c.deltas.empty() ? kDefaultDeltaGrid : c.deltas;
    ojson profile = ojson::array();
    for (double d : deltas)
      profile.push_back({{"delta", d}, {"fraction_within", fraction_within(res.histogram, d)}});
    ojson extra;
    extra["corollary_profile"] = profile;
    emit_records(os, c, {res.record}, extra);
    return kExitOk;
  }

  if (c.command == "exp-p") {
    const auto res = theorem2_analysis(f, *c.T, CountBox{*c.X, *c.Y}, c.workers);
    ojson terms = ojson::array();
    for (const auto& t : res.terms)
      terms.push_back({{"p", t.p}, {"visible", t.visible}, {"expected", static_cast<double>(t.expected)}});
    ojson extra;
    extra["per_prime"] = terms;
    emit_records(os, c, {res.record}, extra);
    return kExitOk;
  }

  if (c.command == "sweep") {
    std::vector<SweepPoint> plan;
    for (auto p : c.primes)
      plan.push_back({SweepKind::LevelAverage, p, 0, c.X.value_or(p), c.Y.value_or(p)});
    for (double T : c.T_values) plan.push_back({SweepKind::PrimeAverage, 0, T, *c.X, *c.Y});
    const auto recs = run_sweep_series(f, plan, c.workers);
    for (const auto& r : recs)
      if (!r.ok()) err << "vislab: sweep point failed: " << r.error << '\n';
    emit_records(os, c, recs);
    return kExitOk;
  }

  throw UsageError("unknown command '" + c.command + "'");
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig c = parse_args(args);
    return run(c, out, err);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "vislab: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const HypothesisViolated& e) {
    err << "vislab: hypothesis violated: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const DegenerateReduction& e) {
    err << "vislab: degenerate reduction: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const BoxTooLarge& e) {
    err << "vislab: box too large: " << e.what() << '\n';
    return kExitBoxTooLarge;
  } catch (const std::exception& e) {
    err << "vislab: error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace vislab::cli
