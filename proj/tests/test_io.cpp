#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "lowdisc/errors.hpp"
#include "lowdisc/io.hpp"
#include "lowdisc/optimizer.hpp"
#include "oracles.hpp"

using namespace lowdisc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "lowdisc_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("point-set files round-trip bit-exactly") {
  oracle::Sampler s(5);
  for (std::size_t d : {1UL, 2UL, 5UL}) {
    const auto pts = s.uniform(37, d);
    std::vector<double> flat;
    for (const auto& q : pts) flat.insert(flat.end(), q.begin(), q.end());
    const PointSet ps(d, flat);
    std::stringstream io;
    write_point_set(io, ps);
    std::string header;
    std::getline(io, header);
    CHECK(header == "# lowdisc d=" + std::to_string(d) + " n=37");
    io.seekg(0);
    const auto back = read_point_set(io);
    REQUIRE(back.dim() == d);
    REQUIRE(back.size() == ps.size());
    for (std::size_t i = 0; i < ps.coords().size(); ++i) CHECK(back.coords()[i] == ps.coords()[i]);
  }
  const auto cfg = ScrambleConfig::from_shifts({2, 3}, {5, 7}, {Permutation::identity(2), Permutation({0, 2, 1})});
  const auto ps = generate_point_set(cfg, 50);
  save_point_set(scratch("halton.txt"), ps);
  const auto back = load_point_set(scratch("halton.txt"));
  for (std::size_t i = 0; i < ps.coords().size(); ++i) CHECK(back.coords()[i] == ps.coords()[i]);
}

TEST_CASE("malformed point-set files are rejected") {
  for (const char* text : {"", "1 2\n", "# lowdisc d=2 n=2\n0.1 0.2\n", "# lowdisc d=2 n=1\n0.1\n",
                           "# lowdisc d=1 n=1\nabc\n", "# lowdisc d=0 n=0\n"}) {
    std::stringstream io(text);
    CHECK_THROWS_AS(read_point_set(io), ConfigError);
  }
}

TEST_CASE("config json round-trip") {
  SplitMix64 stream(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<std::uint32_t> primes{2, 3, 5, 7, 11};
    std::vector<std::int64_t> shifts;
    std::vector<Permutation> perms;
    for (auto p : primes) {
      std::int64_t a = 0;
      do {
        a = 1 + static_cast<std::int64_t>(stream.next() % 500);
      } while (a % p == 0);
      shifts.push_back(a);
      perms.push_back(random_permutation_zero_fixed(p, stream));
    }
    auto cfg = ScrambleConfig::from_shifts(primes, shifts, perms);
    cfg.convention = trial % 2 == 0 ? LiftConvention::paper : LiftConvention::classic;
    const auto back = config_from_json(config_to_json(cfg));
    CHECK(back == cfg);
    CHECK(back.convention == cfg.convention);
  }
  auto poly = ScrambleConfig::plain({3});
  poly.polys = {PermPolynomial({1, 2, 3})};
  CHECK(config_from_json(config_to_json(poly)) == poly);
  save_config(scratch("cfg.json"), poly);
  CHECK(load_config(scratch("cfg.json")) == poly);
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"primes":[4],"shifts":[1]})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"primes":[2,3],"shifts":[1]})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"primes":[3],"shifts":[1],"perms":[[0,1]]})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"primes":[3],"shifts":[1],"perms":[[0,1,1]]})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"primes":[2],"shifts":[1],"convention":"other"})"), ConfigError);
  CHECK_THROWS_AS(load_config(scratch("missing.json")), ConfigError);
}

TEST_CASE("series csv format") {
  const std::vector<std::pair<std::size_t, double>> series{{2, 0.5}, {3, 0.25}, {10, 1.0 / 3.0}};
  std::stringstream io;
  write_series_csv(io, series);
  std::string header;
  std::getline(io, header);
  CHECK(header == "n,scaled");
  CHECK(io.str().find(',', header.size() + 1) != std::string::npos);
  io.seekg(0);
  const auto back = read_series_csv(io);
  REQUIRE(back.size() == series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    CHECK(back[i].first == series[i].first);
    CHECK(back[i].second == series[i].second);
  }
}

TEST_CASE("emitted series for base 5 has one row per prefix") {
  const auto path = scratch("vdc5.csv");
  emit_series(ScrambleConfig::plain({5}), 1000, path);
  std::ifstream in(path);
  const auto rows = read_series_csv(in);
  REQUIRE(rows.size() == 999);
  CHECK(rows.front().first == 2);
  CHECK(rows.back().first == 1000);
  const auto xs = generate_point_set(ScrambleConfig::plain({5}), 1000).column(0);
  for (std::size_t n : {2UL, 17UL, 125UL, 1000UL}) {
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({xs[i]});
    const double d = oracle::star(pts);
    CHECK(rows[n - 2].second == doctest::Approx(static_cast<double>(n) * d / std::log(static_cast<double>(n))).epsilon(1e-12));
  }
}

TEST_CASE("winner counts and ties") {
  using S = std::vector<std::pair<std::size_t, double>>;
  const S a{{2, 1.0}, {3, 2.0}, {4, 3.0}, {5, 1.0}};
  const S b{{2, 2.0}, {3, 1.0}, {4, 3.0}};
  const S c{{2, 3.0}, {3, 3.0}, {4, 3.0}, {5, 0.5}};
  const auto w = count_winners({a, b, c});
  CHECK(w.compared == 3);
  CHECK(w.ties_all == std::vector<std::size_t>{2, 2, 1});
  CHECK(w.ties_none == std::vector<std::size_t>{1, 1, 0});
  CHECK(count_winners({}).compared == 0);
}

TEST_CASE("manifests for every table load") {
  const std::map<std::string, std::size_t> minimum{
      {"table1", 30}, {"table2", 12}, {"table3", 6}, {"table4", 9}, {"appendix", 20}};
  for (const auto& [name, count] : minimum) {
    const auto m = load_manifest(oracle::manifest_dir() / (name + ".json"));
    CHECK_MESSAGE(m.table_id == name, name);
    CHECK_MESSAGE(m.entries.size() >= count, name);
    for (const auto& e : m.entries) {
      CHECK_FALSE(e.name.empty());
      CHECK(e.n >= 1);
      CHECK(e.tolerance >= 0.0);
      if (e.generator == Generator::hammersley) CHECK_FALSE(e.conventions.empty());
    }
  }
}

TEST_CASE("reproduce outcomes on an inline manifest") {
  const auto m = manifest_from_json(R"({
    "table_id": "inline",
    "entries": [
      {"name": "vdc2 n4", "generator": "halton", "config": {"primes": [2], "shifts": [1]}, "n": 4,
       "expected": 0.25, "check": "equal", "tolerance": 1e-12, "method": "closed_form_1d"},
      {"name": "wrong", "generator": "halton", "config": {"primes": [2], "shifts": [1]}, "n": 4,
       "expected": 0.2, "check": "at_most", "tolerance": 0, "method": "exact"},
      {"name": "skipped", "generator": "halton", "config": {"primes": [2, 3], "shifts": [1, 1]}, "n": 4,
       "expected": 1.0, "check": "at_most", "long_running": true},
      {"name": "hammersley", "generator": "hammersley",
       "config": {"primes": [2], "shifts": [1]}, "n": 4, "expected": 0.4375, "check": "equal",
       "tolerance": 1e-12, "conventions": ["paper", "classic"]}
    ]})");
  const auto rep = reproduce(m);
  REQUIRE(rep.size() == 4);
  CHECK(rep[0].outcome == Outcome::pass);
  CHECK(rep[1].outcome == Outcome::fail);
  CHECK(rep[2].outcome == Outcome::skipped);
  REQUIRE(rep[3].measured.has_value());
  CHECK(rep[3].detail.find("classic=") != std::string::npos);
  CHECK(any_failed(rep));
  std::ostringstream out;
  print_report(out, m, rep);
  CHECK(out.str().find("FAIL") != std::string::npos);
  CHECK(out.str().find("SKIPPED") != std::string::npos);

  const auto empty = manifest_from_json(R"({"table_id": "none", "entries": []})");
  const auto none = reproduce(empty);
  CHECK(none.empty());
  CHECK_FALSE(any_failed(none));
  CHECK_THROWS_AS(manifest_from_json("{"), ConfigError);
  CHECK_THROWS_AS(manifest_from_json(R"({"entries": [{"name": "x", "generator": "other", "n": 1, "expected": 0}]})"),
                  ConfigError);
}
