#pragma once

// File formats, reproduction manifests and series emission.
//
// Point-set file: "# lowdisc d=<d> n=<N>" then N lines of d numbers (%.17g).
// Config file: JSON object with keys primes, shifts, perms, poly (optional
// coefficient arrays, constant term first, overriding shifts), start_index
// and convention ("paper" or "classic").

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lowdisc/discrepancy.hpp"
#include "lowdisc/sequence.hpp"

namespace lowdisc {

void write_point_set(std::ostream& out, const PointSet& ps);
PointSet read_point_set(std::istream& in);
void save_point_set(const std::filesystem::path& path, const PointSet& ps);
PointSet load_point_set(const std::filesystem::path& path);

std::string config_to_json(const ScrambleConfig& cfg);
ScrambleConfig config_from_json(const std::string& text);
ScrambleConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const ScrambleConfig& cfg);

/// "n,scaled" header and one row per prefix, '.' as decimal separator.
void write_series_csv(std::ostream& out, const std::vector<std::pair<std::size_t, double>>& series);
std::vector<std::pair<std::size_t, double>> read_series_csv(std::istream& in);
void emit_series(const ScrambleConfig& cfg, std::size_t n_max, const std::filesystem::path& out);

/// Per-series count of prefixes n at which the series attains the minimum
/// over all series. Values within rel_tol of the minimum count as tied:
/// ties_all credits every tied series, ties_none credits none of them.
struct WinnerCounts {
  std::vector<std::size_t> ties_all;
  std::vector<std::size_t> ties_none;
  std::size_t compared = 0;
};
WinnerCounts count_winners(const std::vector<std::vector<std::pair<std::size_t, double>>>& series,
                           double rel_tol = 1e-12);

// ---------------------------------------------------------------------------
// Reproduction manifests

enum class Generator { halton, hammersley, kronecker, kritzinger, search_1d };
enum class Check { equal, at_most, window };
enum class EvalMethod { closed_form_1d, exact, ta };

struct ManifestEntry {
  std::string name;
  Generator generator = Generator::halton;
  ScrambleConfig config;
  std::size_t n = 0;
  double expected = 0.0;
  /// equal: |v - e| <= tolerance; at_most: v <= e + tolerance;
  /// window: e - lower_tolerance <= v <= e + tolerance.
  Check check = Check::equal;
  double tolerance = 0.0;
  double lower_tolerance = 0.0;
  EvalMethod method = EvalMethod::exact;
  bool long_running = false;
  /// Hammersley entries pass when any listed convention matches.
  std::vector<LiftConvention> conventions;
  /// search_1d parameters.
  std::uint32_t search_shifts = 0;
  std::uint32_t search_perms = 0;
  std::uint64_t seed = 1;
  TaParams ta;
  std::string note;
};

struct Manifest {
  std::string table_id;
  std::string description;
  std::vector<ManifestEntry> entries;
};

Manifest manifest_from_json(const std::string& text, const std::filesystem::path& base_dir = {});
Manifest load_manifest(const std::filesystem::path& path);

enum class Outcome { pass, fail, skipped };
std::string to_string(Outcome o);

struct EntryReport {
  std::string name;
  Outcome outcome = Outcome::skipped;
  std::optional<double> measured;
  std::string detail;  // matching convention, method, or skip reason
  double seconds = 0.0;
};

struct ReproduceOptions {
  bool include_long = false;
  ExactOptions exact;
  std::size_t workers = 1;
};

std::vector<EntryReport> reproduce(const Manifest& manifest, const ReproduceOptions& options = {});
void print_report(std::ostream& out, const Manifest& manifest, const std::vector<EntryReport>& report);
bool any_failed(const std::vector<EntryReport>& report);

}  // namespace lowdisc
