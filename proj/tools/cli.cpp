#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include "srlnc/analytic.hpp"
#include "srlnc/errors.hpp"
#include "srlnc/field.hpp"
#include "srlnc/montecarlo.hpp"
#include "srlnc/multicast.hpp"
#include "srlnc/rational.hpp"
#include "srlnc/rng.hpp"
#include "srlnc/version.hpp"

namespace srlnc::cli {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<std::monostate, long long, unsigned long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Common {
  std::string format = "csv";
  std::string out;
  std::string seed_text = "0xC0DEC0DE";
  unsigned streams = 0;

  std::uint64_t seed() const {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(seed_text, &used, 0);
      if (used != seed_text.size()) throw UsageError("");
      return v;
    } catch (const std::exception&) {
      throw UsageError("--seed must be an unsigned 64-bit integer, got '" + seed_text + "'");
    }
  }
};

std::string iso_utc(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char ch : v) {
            if (ch == '"') quoted += '"';
            quoted += ch;
          }
          return quoted + "\"";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

json rows_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

// Everything needed to describe and replay one invocation.
struct Run {
  std::vector<std::string> argv;
  std::string subcommand;
  json params = json::object();
  std::chrono::system_clock::time_point started = std::chrono::system_clock::now();
};

json manifest_json(const Run& run, const Common& common) {
  json m = json::object();
  m["tool"] = "srlnc";
  m["version"] = std::string(version());
  m["subcommand"] = run.subcommand;
  m["argv"] = run.argv;
  m["params"] = run.params;
  m["seed"] = common.seed();
  m["format"] = common.format;
  m["outputs"] = common.out.empty() ? json::array() : json::array({common.out});
  m["started_at"] = iso_utc(run.started);
  m["finished_at"] = iso_utc(std::chrono::system_clock::now());
  return m;
}

void emit(const Table& table, const Run& run, const Common& common, std::ostream& out) {
  const json manifest = manifest_json(run, common);
  auto write = [&](std::ostream& os) {
    if (common.format == "json") {
      json doc = json::object();
      doc["manifest"] = manifest;
      doc["rows"] = rows_json(table);
      os << doc.dump(2) << '\n';
    } else {
      write_csv(table, os);
    }
  };
  if (common.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(common.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + common.out + "'");
  write(file);
  std::ofstream mf(common.out + ".manifest.json", std::ios::binary);
  if (!mf) throw UsageError("cannot write manifest next to '" + common.out + "'");
  mf << manifest.dump(2) << '\n';
}

// Lets counts be written as 1e7 or 2.5e5; rejects values that are not whole numbers.
const CLI::Validator kCount(
    [](std::string& text) -> std::string {
      if (text.find_first_of("eE") == std::string::npos) return {};
      try {
        const Rational v = parse_probability(text, 2);
        if (denominator(v) != 1) return "count '" + text + "' is not an integer";
        text = numerator(v).str();
      } catch (const UsageError& e) {
        return e.what();
      }
      return {};
    },
    "", "count");

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--out", c.out, "Output file; a manifest is written to <out>.manifest.json (default: stdout)");
  cmd->add_option("--seed", c.seed_text, "Master seed (decimal or 0x hex)")->capture_default_str();
  cmd->add_option("--streams", c.streams,
                  "Worker threads (0 = logical CPUs, capped by SRLNC_THREADS); results do not depend on it")
      ->capture_default_str();
}

struct Scenario {
  FieldPtr field;
  Rational p0;
  std::string p0_text;
  double p0_value() const { return to_double(p0); }
};

Scenario make_scenario(const std::string& q_text, const std::string& p0_text) {
  Scenario s;
  s.field = Field::parse(q_text);
  s.p0 = parse_probability(p0_text, s.field->order());
  s.p0_text = p0_text;
  if (s.p0 < 0 || s.p0 > 1) throw UsageError("p0 must lie in [0,1], got '" + p0_text + "'");
  return s;
}

void require_n(int n) {
  if (n < 1) throw UsageError("--n must be at least 1");
}

// ---- approx ----

struct ApproxOptions {
  Common common;
  std::string method;
  int n = 0;
  std::string m;
  std::string q;
  std::string p0;
};

Table cmd_approx(const ApproxOptions& o, Run& run) {
  require_n(o.n);
  const auto method = parse_method(o.method);
  if (!method) throw UsageError("unknown method '" + o.method + "'");
  const auto sc = make_scenario(o.q, o.p0);
  const auto ms = parse_range(o.m);
  run.params = {{"method", std::string(method_name(*method))}, {"n", o.n}, {"m", o.m}, {"q", sc.field->name()}, {"p0", o.p0}};
  Table t{{"n", "m", "q", "p0", "method", "value"}, {}};
  for (int m : ms) {
    t.rows.push_back({static_cast<long long>(o.n), static_cast<long long>(m), static_cast<unsigned long long>(sc.field->order()),
                      sc.p0_value(), std::string(method_name(*method)),
                      p_full_rank(*method, o.n, m, sc.p0_value(), sc.field->order())});
  }
  return t;
}

// ---- simulate ----

struct SimulateOptions {
  Common common;
  int n = 0;
  std::string m;
  std::string q;
  std::string p0;
  std::uint64_t trials = 1000000;
  bool brute = false;
};

Table cmd_simulate(const SimulateOptions& o, Run& run, bool& refused) {
  require_n(o.n);
  if (o.trials == 0 && !o.brute) throw UsageError("--trials must be at least 1");
  const auto sc = make_scenario(o.q, o.p0);
  SweepRequest req;
  req.method = o.brute ? "brute" : "mc";
  req.n = o.n;
  req.ms = parse_range(o.m);
  req.field = sc.field;
  req.p0 = sc.p0;
  req.trials = o.trials;
  req.seed = o.common.seed();
  req.threads = o.common.streams;
  run.params = {{"n", o.n}, {"m", o.m}, {"q", sc.field->name()}, {"p0", o.p0}, {"trials", o.trials}, {"brute", o.brute}};
  const auto table = sweep(req);
  refused = table.has_errors();
  Table t;
  if (o.brute) {
    t.columns = {"n", "m", "q", "p0", "exact", "value", "error"};
    for (const auto& r : table.rows) {
      t.rows.push_back({static_cast<long long>(r.n), static_cast<long long>(r.m), static_cast<unsigned long long>(r.q), r.p0,
                        r.exact ? Cell{to_string(*r.exact)} : Cell{}, r.error ? Cell{} : Cell{r.value},
                        r.error ? Cell{*r.error} : Cell{}});
    }
    return t;
  }
  t.columns = {"n", "m", "q", "p0", "trials", "successes", "estimate", "stderr", "seed"};
  for (const auto& r : table.rows) {
    const auto& e = *r.estimate;
    t.rows.push_back({static_cast<long long>(r.n), static_cast<long long>(r.m), static_cast<unsigned long long>(r.q), r.p0,
                      static_cast<unsigned long long>(e.trials), static_cast<unsigned long long>(e.successes), e.estimate,
                      e.std_error, static_cast<unsigned long long>(e.seed)});
  }
  return t;
}

// ---- compare ----

struct CompareOptions {
  Common common;
  std::string n;
  std::string m;
  std::string q;
  std::string p0;
  std::string methods = "proposed,brown,chen,sehat";
  std::string reference = "mc";
  std::string reference_csv;
  std::uint64_t trials = 1000000;
};

// Reference rows from a CSV written by `simulate` (or `approx`), keyed by (n, q, p0, m).
using ReferenceKey = std::tuple<int, std::uint32_t, std::string, int>;

std::map<ReferenceKey, double> read_reference_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read reference file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw UsageError("reference file '" + path + "' is empty");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) header.push_back(col);
  }
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };
  const auto cn = column("n");
  const auto cm = column("m");
  const auto cq = column("q");
  const auto cp = column("p0");
  auto cv = column("estimate");
  if (!cv) cv = column("value");
  if (!cn || !cm || !cq || !cp || !cv) throw UsageError("reference file needs columns n, m, q, p0 and estimate or value");
  std::map<ReferenceKey, double> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < header.size()) throw UsageError("short row in reference file '" + path + "'");
    try {
      out[{std::stoi(cells[*cn]), static_cast<std::uint32_t>(std::stoul(cells[*cq])), format_double(std::stod(cells[*cp])),
           std::stoi(cells[*cm])}] = std::stod(cells[*cv]);
    } catch (const std::logic_error&) {
      throw UsageError("malformed row in reference file '" + path + "': " + line);
    }
  }
  return out;
}

Table cmd_compare(const CompareOptions& o, Run& run, bool& refused) {
  const auto ms = parse_range(o.m);
  std::vector<int> ns;
  for (const auto& s : split_list(o.n)) {
    for (int v : parse_range(s)) ns.push_back(v);
  }
  if (ns.empty()) throw UsageError("--n is empty");
  for (int n : ns) require_n(n);
  const auto qs = split_list(o.q);
  const auto p0s = split_list(o.p0);
  if (qs.empty() || p0s.empty()) throw UsageError("--q and --p0 need at least one value");
  std::vector<Method> methods;
  for (const auto& name : split_list(o.methods)) {
    const auto m = parse_method(name);
    if (!m) throw UsageError("unknown method '" + name + "'");
    methods.push_back(*m);
  }
  if (methods.empty()) throw UsageError("--methods is empty");

  std::optional<std::map<ReferenceKey, double>> file_reference;
  std::string reference = o.reference;
  if (!o.reference_csv.empty()) {
    file_reference = read_reference_csv(o.reference_csv);
    reference = "file";
  } else if (reference != "mc" && reference != "brute" && !parse_method(reference)) {
    throw UsageError("--reference must be mc, brute, or a method name");
  }
  if (reference == "mc" && o.trials == 0) throw UsageError("--trials must be at least 1");

  run.params = {{"n", o.n},           {"m", o.m},          {"q", o.q},
                {"p0", o.p0},         {"methods", o.methods}, {"reference", reference},
                {"reference_csv", o.reference_csv}, {"trials", o.trials}};

  Table t{{"q", "n", "p0", "method", "reference", "points", "mse", "rank", "best", "worst", "reference_noise"}, {}};
  for (const auto& q_text : qs) {
    for (int n : ns) {
      for (const auto& p0_text : p0s) {
        const auto sc = make_scenario(q_text, p0_text);
        const std::uint32_t q = sc.field->order();
        const double p0 = sc.p0_value();
        std::vector<double> ref;
        std::optional<double> noise;
        if (file_reference) {
          for (int m : ms) {
            const auto it = file_reference->find({n, q, format_double(p0), m});
            if (it == file_reference->end()) {
              throw UsageError("reference file has no row for n=" + std::to_string(n) + " q=" + std::to_string(q) +
                               " p0=" + format_double(p0) + " m=" + std::to_string(m));
            }
            ref.push_back(it->second);
          }
        } else {
          SweepRequest req;
          req.method = reference;
          req.n = n;
          req.ms = ms;
          req.field = sc.field;
          req.p0 = sc.p0;
          req.trials = o.trials;
          req.seed = o.common.seed();
          req.threads = o.common.streams;
          const auto table = sweep(req);
          if (table.has_errors()) {
            refused = true;
            for (const auto& r : table.rows) {
              if (r.error) throw OracleSizeError(*r.error);
            }
          }
          ref = table.values();
          if (reference == "mc") {
            double acc = 0.0;
            for (const auto& r : table.rows) acc += r.estimate->std_error * r.estimate->std_error;
            noise = acc / static_cast<double>(table.rows.size());
          }
        }
        std::vector<double> mses;
        for (Method method : methods) {
          std::vector<double> curve;
          for (int m : ms) curve.push_back(p_full_rank(method, n, m, p0, q));
          mses.push_back(mse(curve, ref));
        }
        for (std::size_t k = 0; k < methods.size(); ++k) {
          long long rank = 1;
          for (std::size_t j = 0; j < methods.size(); ++j) {
            if (mses[j] < mses[k] || (mses[j] == mses[k] && j < k)) ++rank;
          }
          t.rows.push_back({static_cast<unsigned long long>(q), static_cast<long long>(n), p0,
                            std::string(method_name(methods[k])), reference, static_cast<long long>(ms.size()), mses[k], rank,
                            static_cast<long long>(rank == 1), static_cast<long long>(rank == static_cast<long long>(methods.size())),
                            noise ? Cell{*noise} : Cell{}});
        }
      }
    }
  }
  return t;
}

// ---- multicast ----

struct MulticastOptions {
  Common common;
  int n = 0;
  int N = -1;
  std::string q;
  std::string p0;
  std::string epsilon;
  std::uint64_t trials = 100000;
  std::uint64_t table_trials = 0;
  int receivers = 1;
  int payload = 0;
  std::string backends = "proposed";
};

Table cmd_multicast(const MulticastOptions& o, Run& run) {
  require_n(o.n);
  if (o.N < 0) throw UsageError("--N must be nonnegative");
  if (o.trials == 0) throw UsageError("--trials must be at least 1");
  const auto sc = make_scenario(o.q, o.p0);
  const std::uint32_t q = sc.field->order();
  std::vector<double> eps;
  for (const auto& e : split_list(o.epsilon)) {
    const double v = to_double(parse_probability(e, q));
    if (!(v >= 0.0 && v <= 1.0)) throw UsageError("--epsilon values must lie in [0,1]");
    eps.push_back(v);
  }
  if (eps.empty()) throw UsageError("--epsilon needs at least one value");
  std::vector<std::string> backends = split_list(o.backends);
  for (const auto& b : backends) {
    if (b != "mc" && !parse_method(b)) throw UsageError("unknown backend '" + b + "'");
  }
  const std::uint64_t seed = o.common.seed();
  const std::uint64_t table_trials = o.table_trials ? o.table_trials : o.trials;
  run.params = {{"n", o.n},           {"N", o.N},       {"q", sc.field->name()}, {"p0", o.p0},
                {"epsilon", o.epsilon}, {"trials", o.trials}, {"table_trials", table_trials}, {"receivers", o.receivers},
                {"payload", o.payload}, {"backends", o.backends}};

  // Monte Carlo P(n, m) table for the "mc" backend, on a seed disjoint from the channel runs.
  std::optional<PnmTable> mc_table;
  std::vector<double> mc_table_se;
  if (std::find(backends.begin(), backends.end(), "mc") != backends.end() && o.N >= o.n) {
    const CoefficientModel model(sc.field, sc.p0_value());
    mc_table = PnmTable{o.n, o.n, {}};
    for (int m = o.n; m <= o.N; ++m) {
      const auto e = mc_full_rank(o.n, m, model, table_trials, point_seed(mix64(seed + 1), m), o.common.streams);
      mc_table->values.push_back(e.estimate);
      mc_table_se.push_back(e.std_error);
    }
  }

  Table t{{"n", "N", "q", "p0", "epsilon", "receivers", "L", "trials", "successes", "estimate", "stderr", "seed"}, {}};
  for (const auto& b : backends) {
    t.columns.push_back("analytic_" + b);
    if (b == "mc") t.columns.push_back("analytic_mc_stderr");
  }
  for (double e : eps) {
    GenerationConfig cfg;
    cfg.n = o.n;
    cfg.N = o.N;
    cfg.L = o.payload;
    cfg.field = sc.field;
    cfg.p0 = sc.p0_value();
    cfg.epsilon = e;
    cfg.receivers = o.receivers;
    const auto est = estimate_p_epsilon(cfg, o.trials, seed, o.common.streams);
    std::vector<Cell> row{static_cast<long long>(o.n),
                          static_cast<long long>(o.N),
                          static_cast<unsigned long long>(q),
                          cfg.p0,
                          e,
                          static_cast<long long>(o.receivers),
                          static_cast<long long>(o.payload),
                          static_cast<unsigned long long>(o.trials),
                          static_cast<unsigned long long>(est.successes),
                          est.estimate,
                          est.std_error,
                          static_cast<unsigned long long>(seed)};
    for (const auto& b : backends) {
      if (b != "mc") {
        row.emplace_back(decoding_success_prob(o.n, o.N, e, cfg.p0, q, *parse_method(b)));
        continue;
      }
      if (!mc_table) {
        row.emplace_back(0.0);
        row.emplace_back(0.0);
        continue;
      }
      row.emplace_back(decoding_success_prob(o.n, o.N, e, cfg.p0, q, *mc_table));
      const auto w = erasure_weights(o.N, e);
      double var = 0.0;
      for (int m = o.n; m <= o.N; ++m) var += w[m] * w[m] * mc_table_se[m - o.n] * mc_table_se[m - o.n];
      row.emplace_back(std::sqrt(var));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

int report(std::ostream& err, int code, const std::string& what) {
  err << "error: " << what << '\n';
  return code;
}

}  // namespace

std::vector<int> parse_range(const std::string& text) {
  const auto parts = [&] {
    std::vector<std::string> p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) p.push_back(item);
    return p;
  }();
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw UsageError("");
      return v;
    } catch (const std::exception&) {
      throw UsageError("malformed range '" + text + "' (expected a:b[:step])");
    }
  };
  if (parts.empty() || parts.size() > 3 || text.back() == ':') throw UsageError("malformed range '" + text + "' (expected a:b[:step])");
  const int a = to_int(parts[0]);
  const int b = parts.size() >= 2 ? to_int(parts[1]) : a;
  const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
  if (step < 1) throw UsageError("range step must be at least 1");
  if (a > b) throw UsageError("empty range '" + text + "'");
  if (a < 0) throw UsageError("range values must be nonnegative");
  std::vector<int> out;
  for (long long v = a; v <= b; v += step) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decoding success probability of sparse random linear network coding"};
  app.name(args.empty() ? "srlnc" : args[0]);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  app.footer(
      "Fields: gf2, gf256, prime:p, binext:w[:poly_hex], or a bare order.\n"
      "Probabilities: decimals (read exactly), fractions a/b, or 1/q.\n"
      "Ranges: a:b[:step], inclusive.\n"
      "Exit codes: 0 ok, 1 runtime failure, 2 usage, 3 numerical integrity, 4 oracle size refusal.\n"
      "SRLNC_THREADS caps the number of worker threads.");

  ApproxOptions ao;
  auto* approx = app.add_subcommand("approx", "Closed-form P(n,m) over an m sweep");
  approx->add_option("--method", ao.method, "proposed | brown | chen | sehat | uniform-exact")->required();
  approx->add_option("--n", ao.n, "Generation size (rows)")->required();
  approx->add_option("--m", ao.m, "Received packets (columns), a:b[:step]")->required();
  approx->add_option("--q", ao.q, "Field")->required();
  approx->add_option("--p0", ao.p0, "Probability of a zero coefficient")->required();
  add_common(approx, ao.common);

  SimulateOptions so;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo (or exhaustive) P(n,m) over an m sweep");
  simulate->add_option("--n", so.n, "Generation size (rows)")->required();
  simulate->add_option("--m", so.m, "Received packets (columns), a:b[:step]")->required();
  simulate->add_option("--q", so.q, "Field")->required();
  simulate->add_option("--p0", so.p0, "Probability of a zero coefficient")->required();
  simulate->add_option("--trials", so.trials, "Trials per point")->transform(kCount)->capture_default_str();
  simulate->add_flag("--brute", so.brute, "Enumerate all matrices exactly instead of sampling (q^(n*m) <= 2^24)");
  add_common(simulate, so.common);

  CompareOptions co;
  auto* compare = app.add_subcommand("compare", "MSE of approximations against a reference curve");
  compare->add_option("--n", co.n, "Generation sizes (comma list)")->required();
  compare->add_option("--m", co.m, "m sweep, a:b[:step]")->required();
  compare->add_option("--q", co.q, "Fields (comma list)")->required();
  compare->add_option("--p0", co.p0, "Zero probabilities (comma list)")->required();
  compare->add_option("--methods", co.methods, "Approximations to score")->capture_default_str();
  compare->add_option("--reference", co.reference, "mc | brute | a method name")->capture_default_str();
  compare->add_option("--reference-csv", co.reference_csv, "Reference curve from a previous simulate run");
  compare->add_option("--trials", co.trials, "Trials per point for the mc reference")->transform(kCount)->capture_default_str();
  add_common(compare, co.common);

  MulticastOptions mo;
  auto* multicast = app.add_subcommand("multicast", "Erasure-channel decoding probability P(epsilon)");
  multicast->add_option("--n", mo.n, "Generation size")->required();
  multicast->add_option("--N", mo.N, "Coded packets transmitted")->required();
  multicast->add_option("--q", mo.q, "Field")->required();
  multicast->add_option("--p0", mo.p0, "Probability of a zero coefficient")->required();
  multicast->add_option("--epsilon", mo.epsilon, "Erasure rates (comma list)")->required();
  multicast->add_option("--trials", mo.trials, "Simulated generations per rate")->transform(kCount)->capture_default_str();
  multicast->add_option("--table-trials", mo.table_trials, "Trials per point of the mc P(n,m) table (default: --trials)")->transform(kCount);
  multicast->add_option("--receivers", mo.receivers, "Receivers sharing each generation")->capture_default_str();
  multicast->add_option("--payload", mo.payload, "Payload symbols per packet (0 = coding vectors only)")->capture_default_str();
  multicast->add_option("--backends", mo.backends, "Analytic columns: method names and/or mc")->capture_default_str();
  add_common(multicast, mo.common);

  std::string manifest_path;
  std::string replay_out;
  auto* replay = app.add_subcommand("replay", "Re-run the invocation recorded in a manifest");
  replay->add_option("manifest", manifest_path, "Manifest JSON file")->required();
  replay->add_option("--out", replay_out, "Write to this path instead of the recorded one");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("srlnc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  }

  Run run;
  run.argv = args;
  try {
    if (*replay) {
      std::ifstream in(manifest_path);
      if (!in) throw UsageError("cannot read manifest '" + manifest_path + "'");
      json manifest;
      try {
        manifest = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError("malformed manifest '" + manifest_path + "': " + e.what());
      }
      if (!manifest.contains("argv") || !manifest["argv"].is_array()) throw UsageError("manifest has no argv array");
      auto replay_args = manifest["argv"].get<std::vector<std::string>>();
      if (replay_args.size() < 2 || replay_args[1] == "replay") throw UsageError("manifest argv is not replayable");
      if (!replay_out.empty()) {
        bool replaced = false;
        for (std::size_t i = 1; i + 1 < replay_args.size(); ++i) {
          if (replay_args[i] == "--out") {
            replay_args[i + 1] = replay_out;
            replaced = true;
          }
        }
        if (!replaced) {
          replay_args.push_back("--out");
          replay_args.push_back(replay_out);
        }
      }
      return cli::run(replay_args, out, err);
    }
    bool refused = false;
    Table table;
    const Common* common = nullptr;
    if (*approx) {
      run.subcommand = "approx";
      table = cmd_approx(ao, run);
      common = &ao.common;
    } else if (*simulate) {
      run.subcommand = "simulate";
      table = cmd_simulate(so, run, refused);
      common = &so.common;
    } else if (*compare) {
      run.subcommand = "compare";
      table = cmd_compare(co, run, refused);
      common = &co.common;
    } else {
      run.subcommand = "multicast";
      table = cmd_multicast(mo, run);
      common = &mo.common;
    }
    common->seed();
    emit(table, run, *common, out);
    if (refused) return report(err, kOracleSize, "brute-force oracle refused at least one point");
    return kOk;
  } catch (const UsageError& e) {
    return report(err, kUsage, e.what());
  } catch (const DomainError& e) {
    return report(err, kUsage, e.what());
  } catch (const NumericalIntegrityError& e) {
    return report(err, kNumericalIntegrity, e.what());
  } catch (const OracleSizeError& e) {
    return report(err, kOracleSize, e.what());
  } catch (const std::exception& e) {
    return report(err, kRuntimeFailure, e.what());
  }
}

}  // namespace srlnc::cli
