#pragma once

// Star- and extreme discrepancy of point sets in [0,1)^d.
//
// Anchored boxes are [0, y). The supremum over all y is realised on the grid
// of point coordinates (plus 1.0): for a corner y the "open" deviation
// vol(y) - #{x < y}/N and the "closed" deviation #{x <= y}/N - vol(y) are the
// two one-sided limits. Comparisons are exact on the stored doubles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lowdisc/rational.hpp"
#include "lowdisc/sequence.hpp"

namespace lowdisc {

enum class DiscMethod { closed_form_1d, exact_grid, oracle, ta_estimate };

std::string to_string(DiscMethod m);

/// Upper corner of the box attaining (or approaching) the reported value.
/// closed = true: the box [0, upper] holds too many points; otherwise [0, upper)
/// holds too few.
struct Witness {
  std::vector<double> upper;
  bool closed = false;
};

struct DiscrepancyResult {
  double value = 0.0;
  Witness witness;
  DiscMethod method = DiscMethod::exact_grid;
  bool is_exact = true;
};

/// Local discrepancy of the box [0, corner) (closed = false) or [0, corner].
double local_discrepancy(const PointSet& points, std::span<const double> corner, bool closed);

DiscrepancyResult star_disc_1d(const PointSet& points);
DiscrepancyResult star_disc_1d(std::span<const double> xs);
/// Exact star-discrepancy of rational one-dimensional points.
Rational star_disc_1d_exact(std::span<const Rational> xs);

DiscrepancyResult extreme_disc_1d(const PointSet& points);
DiscrepancyResult extreme_disc_1d(std::span<const double> xs);

/// Default cap on the estimated work of star_disc_exact: LOWDISC_WORK_BUDGET
/// when set, otherwise 1e10.
double default_work_budget();

/// Estimated elementary steps of star_disc_exact for N points in dimension d,
/// proportional to N^{d/2+1}.
double estimate_exact_work(std::size_t n, std::size_t d);

/// Seconds per unit of estimate_exact_work, measured on a small instance.
double calibrate_work_rate();

struct ExactOptions {
  double work_budget = default_work_budget();
};

/// Exact star-discrepancy by cell decomposition of the corner grid.
/// Throws ResourceError when the work estimate exceeds the budget.
DiscrepancyResult star_disc_exact(const PointSet& points, const ExactOptions& options = {});

/// Definitional brute force over every grid corner; guard (N+1)^d <= 1e7.
DiscrepancyResult star_disc_oracle(const PointSet& points);

/// Threshold-accepting search for a box with large local discrepancy.
struct TaParams {
  std::size_t iterations = 100000;
  std::size_t restarts = 4;
  std::uint64_t seed = 1;
  /// Starting threshold; when unset, the standard deviation of the local
  /// discrepancies of 100 random grid boxes. Decreases linearly to 0.
  std::optional<double> initial_threshold;
  /// Finish every restart with exact coordinate-wise line searches.
  bool refine = true;
};

/// Lower bound on the star-discrepancy from a seeded TA search. Every value is
/// the local discrepancy of a genuine box, so the result never exceeds the
/// exact value.
DiscrepancyResult star_disc_ta(const PointSet& points, const TaParams& params = {});

/// Exact when the work estimate fits the budget, otherwise threshold accepting.
DiscrepancyResult star_disc_auto(const PointSet& points, const ExactOptions& options = {},
                                 const TaParams& ta = {});

/// (n, n * D*_n / log n) for the prefixes n = 2, ..., N_max of a 1-D configuration.
std::vector<std::pair<std::size_t, double>> scaled_series(const ScrambleConfig& cfg, std::size_t n_max);
/// Same for an explicit sequence (prefixes of `xs`).
std::vector<std::pair<std::size_t, double>> scaled_series(std::span<const double> xs);

}  // namespace lowdisc
