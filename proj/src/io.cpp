#include "lowdisc/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <cstdio>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "lowdisc/errors.hpp"
#include "lowdisc/optimizer.hpp"

namespace lowdisc {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("not a number: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Point sets

void write_point_set(std::ostream& out, const PointSet& ps) {
  out << "# lowdisc d=" << ps.dim() << " n=" << ps.size() << '\n';
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.dim(); ++j) out << (j ? " " : "") << format_double(ps(i, j));
    out << '\n';
  }
}

PointSet read_point_set(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty point-set file");
  std::size_t d = 0;
  std::size_t n = 0;
  if (std::sscanf(line.c_str(), "# lowdisc d=%zu n=%zu", &d, &n) != 2 || d == 0)
    throw ConfigError("bad point-set header: " + line);
  std::vector<double> coords;
  coords.reserve(d * n);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != d) throw ConfigError("point-set row " + std::to_string(rows + 1) + " has wrong arity");
    for (const auto f : fields) coords.push_back(parse_double(f));
    ++rows;
  }
  if (rows != n) throw ConfigError("point-set header announces " + std::to_string(n) + " rows, found " +
                                   std::to_string(rows));
  return PointSet(d, std::move(coords));
}

void save_point_set(const std::filesystem::path& path, const PointSet& ps) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_point_set(out, ps);
}

PointSet load_point_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  return read_point_set(in);
}

// ---------------------------------------------------------------------------
// Configs

namespace {

json config_json(const ScrambleConfig& cfg) {
  json j;
  j["primes"] = cfg.primes;
  json shifts = json::array();
  json polys = json::array();
  bool affine = true;
  for (const auto& f : cfg.polys) {
    const auto a = f.pure_shift();
    affine = affine && a.has_value();
    shifts.push_back(a.value_or(0));
    polys.push_back(f.coeffs);
  }
  if (affine)
    j["shifts"] = shifts;
  else
    j["poly"] = polys;
  json perms = json::array();
  for (const auto& p : cfg.perms) perms.push_back(std::vector<std::uint32_t>(p.map().begin(), p.map().end()));
  j["perms"] = perms;
  j["start_index"] = cfg.start_index;
  j["convention"] = to_string(cfg.convention);
  return j;
}

ScrambleConfig config_from(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ScrambleConfig cfg;
  try {
    cfg.primes = j.at("primes").get<std::vector<std::uint32_t>>();
    const std::size_t d = cfg.primes.size();
    if (j.contains("poly")) {
      for (const auto& c : j.at("poly")) cfg.polys.push_back({c.get<std::vector<std::int64_t>>()});
    } else if (j.contains("shifts")) {
      for (const auto a : j.at("shifts").get<std::vector<std::int64_t>>()) cfg.polys.push_back(PermPolynomial::affine(a));
    } else {
      cfg.polys.assign(d, PermPolynomial{});
    }
    if (j.contains("perms")) {
      for (const auto& p : j.at("perms")) cfg.perms.emplace_back(p.get<std::vector<std::uint32_t>>());
    } else {
      for (const auto p : cfg.primes) cfg.perms.push_back(Permutation::identity(p));
    }
    if (j.contains("start_index")) cfg.start_index = j.at("start_index").get<std::uint64_t>();
    if (j.contains("convention")) cfg.convention = lift_convention_from_string(j.at("convention").get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace

std::string config_to_json(const ScrambleConfig& cfg) { return config_json(cfg).dump(2); }

ScrambleConfig config_from_json(const std::string& text) {
  try {
    return config_from(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

ScrambleConfig load_config(const std::filesystem::path& path) { return config_from_json(read_file(path)); }

void save_config(const std::filesystem::path& path, const ScrambleConfig& cfg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << config_to_json(cfg) << '\n';
}

// ---------------------------------------------------------------------------
// Series

void write_series_csv(std::ostream& out, const std::vector<std::pair<std::size_t, double>>& series) {
  out << "n,scaled\n";
  for (const auto& [n, v] : series) out << n << ',' << format_double(v) << '\n';
}

std::vector<std::pair<std::size_t, double>> read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n,scaled", 0) != 0) throw ConfigError("series CSV lacks the n,scaled header");
  std::vector<std::pair<std::size_t, double>> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("bad series row: " + line);
    std::size_t n = 0;
    const auto res = std::from_chars(line.data(), line.data() + comma, n);
    if (res.ec != std::errc()) throw ConfigError("bad series row: " + line);
    out.emplace_back(n, parse_double(std::string_view(line).substr(comma + 1)));
  }
  return out;
}

void emit_series(const ScrambleConfig& cfg, std::size_t n_max, const std::filesystem::path& out) {
  const auto series = scaled_series(cfg, n_max);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + out.string());
  write_series_csv(f, series);
}

WinnerCounts count_winners(const std::vector<std::vector<std::pair<std::size_t, double>>>& series,
                           double rel_tol) {
  WinnerCounts wc;
  wc.ties_all.assign(series.size(), 0);
  wc.ties_none.assign(series.size(), 0);
  if (series.empty()) return wc;
  // compare on the n values present in every series
  std::vector<std::map<std::size_t, double>> maps;
  for (const auto& s : series) maps.emplace_back(s.begin(), s.end());
  for (const auto& [n, _] : maps.front()) {
    std::vector<double> vals;
    for (const auto& m : maps) {
      const auto it = m.find(n);
      if (it == m.end()) break;
      vals.push_back(it->second);
    }
    if (vals.size() != maps.size()) continue;
    ++wc.compared;
    const double lo = *std::min_element(vals.begin(), vals.end());
    const double tol = rel_tol * std::max(1.0, std::abs(lo));
    std::size_t tied = 0;
    for (const double v : vals) tied += v <= lo + tol ? 1 : 0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (vals[k] > lo + tol) continue;
      ++wc.ties_all[k];
      if (tied == 1) ++wc.ties_none[k];
    }
  }
  return wc;
}

// ---------------------------------------------------------------------------
// Manifests

namespace {

template <typename E>
E enum_from(const std::string& s, std::initializer_list<std::pair<const char*, E>> table, const char* what) {
  for (const auto& [name, value] : table)
    if (s == name) return value;
  throw ConfigError(std::string("unknown ") + what + ": " + s);
}

ManifestEntry entry_from(const json& j, const std::filesystem::path& base_dir) {
  ManifestEntry e;
  e.name = j.value("name", "");
  e.generator = enum_from<Generator>(j.value("generator", "halton"),
                                     {{"halton", Generator::halton},
                                      {"hammersley", Generator::hammersley},
                                      {"kronecker", Generator::kronecker},
                                      {"kritzinger", Generator::kritzinger},
                                      {"search_1d", Generator::search_1d}},
                                     "generator");
  if (j.contains("config")) e.config = config_from(j.at("config"));
  if (j.contains("config_file")) e.config = load_config(base_dir / j.at("config_file").get<std::string>());
  e.n = j.at("n").get<std::size_t>();
  e.expected = j.at("expected").get<double>();
  e.check = enum_from<Check>(j.value("check", "equal"),
                             {{"equal", Check::equal}, {"at_most", Check::at_most}, {"window", Check::window}}, "check");
  e.tolerance = j.value("tolerance", 0.0);
  e.lower_tolerance = j.value("lower_tolerance", 0.0);
  e.method = enum_from<EvalMethod>(
      j.value("method", "exact"),
      {{"closed_form_1d", EvalMethod::closed_form_1d}, {"exact", EvalMethod::exact}, {"ta", EvalMethod::ta}}, "method");
  e.long_running = j.value("long_running", false);
  if (j.contains("conventions"))
    for (const auto& c : j.at("conventions")) e.conventions.push_back(lift_convention_from_string(c.get<std::string>()));
  e.search_shifts = j.value("shifts", 0U);
  e.search_perms = j.value("perms", 0U);
  e.seed = j.value("seed", std::uint64_t{1});
  if (j.contains("ta")) {
    const auto& t = j.at("ta");
    e.ta.iterations = t.value("iterations", e.ta.iterations);
    e.ta.restarts = t.value("restarts", e.ta.restarts);
    e.ta.seed = t.value("seed", e.ta.seed);
  }
  e.note = j.value("note", "");
  if (e.generator == Generator::search_1d && j.contains("prime"))
    e.config = ScrambleConfig::plain({j.at("prime").get<std::uint32_t>()});
  if (e.generator == Generator::hammersley && e.conventions.empty()) e.conventions.push_back(e.config.convention);
  return e;
}

PointSet build_points(const ManifestEntry& e, LiftConvention convention) {
  switch (e.generator) {
    case Generator::halton:
      return generate_point_set(e.config, e.n);
    case Generator::hammersley:
      return hammersley_lift(e.config, e.n, convention);
    case Generator::kronecker:
      return kronecker_sequence(kGoldenRatio, e.n);
    case Generator::kritzinger:
      return kritzinger_sequence(e.n);
    case Generator::search_1d:
      break;
  }
  throw ConfigError("entry has no point set");
}

double measure(const ManifestEntry& e, const PointSet& ps, const ReproduceOptions& options) {
  switch (e.method) {
    case EvalMethod::closed_form_1d:
      return star_disc_1d(ps).value;
    case EvalMethod::exact:
      return ps.dim() == 1 ? star_disc_1d(ps).value : star_disc_exact(ps, options.exact).value;
    case EvalMethod::ta:
      return star_disc_ta(ps, e.ta).value;
  }
  return 0.0;
}

bool accept(const ManifestEntry& e, double v) {
  switch (e.check) {
    case Check::equal:
      return std::abs(v - e.expected) <= e.tolerance;
    case Check::at_most:
      return v <= e.expected + e.tolerance;
    case Check::window:
      return v >= e.expected - e.lower_tolerance && v <= e.expected + e.tolerance;
  }
  return false;
}

std::string fmt(double v, int prec = 8) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss << std::fixed << std::setprecision(prec) << v;
  return ss.str();
}

}  // namespace

Manifest manifest_from_json(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  Manifest m;
  try {
    m.table_id = j.value("table_id", "");
    m.description = j.value("description", "");
    for (const auto& e : j.value("entries", json::array())) m.entries.push_back(entry_from(e, base_dir));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_json(read_file(path), path.parent_path());
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass:
      return "PASS";
    case Outcome::fail:
      return "FAIL";
    case Outcome::skipped:
      return "SKIPPED";
  }
  return "?";
}

std::vector<EntryReport> reproduce(const Manifest& manifest, const ReproduceOptions& options) {
  std::vector<EntryReport> report;
  for (const auto& e : manifest.entries) {
    EntryReport r;
    r.name = e.name;
    if (e.long_running && !options.include_long) {
      r.outcome = Outcome::skipped;
      r.detail = "long-running; pass --include-long";
      report.push_back(std::move(r));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      if (e.generator == Generator::search_1d) {
        const auto res = search_1d(e.config.primes.at(0), e.n, e.search_shifts, e.search_perms, e.seed, options.workers);
        r.measured = res.value;
        r.detail = "shift " + std::to_string(res.config.polys[0].pure_shift().value_or(0));
      } else if (e.generator == Generator::hammersley) {
        std::vector<std::string> matched;
        for (const auto c : e.conventions) {
          const double v = measure(e, build_points(e, c), options);
          if (!r.measured || (accept(e, v) && !accept(e, *r.measured))) r.measured = v;
          r.detail += (r.detail.empty() ? "" : " ") + to_string(c) + "=" + fmt(v);
          if (accept(e, v)) matched.push_back(to_string(c));
        }
        r.detail += matched.empty() ? "; no convention matches" : "; matches " + matched.front();
      } else {
        r.measured = measure(e, build_points(e, e.config.convention), options);
      }
      r.outcome = accept(e, *r.measured) ? Outcome::pass : Outcome::fail;
    } catch (const ResourceError& ex) {
      r.outcome = Outcome::skipped;
      r.detail = ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.push_back(std::move(r));
  }
  return report;
}

void print_report(std::ostream& out, const Manifest& manifest, const std::vector<EntryReport>& report) {
  out << "# " << manifest.table_id << (manifest.description.empty() ? "" : ": " + manifest.description) << '\n';
  for (std::size_t i = 0; i < report.size(); ++i) {
    const auto& r = report[i];
    const auto& e = manifest.entries[i];
    out << std::left << std::setw(8) << to_string(r.outcome) << ' ' << r.name;
    if (r.measured) {
      out << "  measured=" << fmt(*r.measured) << " expected=" << fmt(e.expected, 6);
      switch (e.check) {
        case Check::equal:
          out << " +/-" << e.tolerance;
          break;
        case Check::at_most:
          out << " (at most, slack " << e.tolerance << ")";
          break;
        case Check::window:
          out << " (window -" << e.lower_tolerance << "/+" << e.tolerance << ")";
          break;
      }
      out << " time=" << fmt(r.seconds, 2) << "s";
    }
    if (!r.detail.empty()) out << "  [" << r.detail << "]";
    out << '\n';
  }
}

bool any_failed(const std::vector<EntryReport>& report) {
  return std::any_of(report.begin(), report.end(), [](const EntryReport& r) { return r.outcome == Outcome::fail; });
}

}  // namespace lowdisc
