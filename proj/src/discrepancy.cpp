#include "lowdisc/discrepancy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "corner_grid.hpp"
#include "lowdisc/errors.hpp"
#include "lowdisc/rng.hpp"

namespace lowdisc {

using detail::CornerGrid;

std::string to_string(DiscMethod m) {
  switch (m) {
    case DiscMethod::closed_form_1d:
      return "closed_form_1d";
    case DiscMethod::exact_grid:
      return "exact_grid";
    case DiscMethod::oracle:
      return "oracle";
    case DiscMethod::ta_estimate:
      return "ta_estimate";
  }
  return "unknown";
}

double local_discrepancy(const PointSet& points, std::span<const double> corner, bool closed) {
  if (corner.size() != points.dim()) throw DomainError("corner dimension mismatch");
  std::size_t count = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool inside = true;
    for (std::size_t j = 0; j < points.dim() && inside; ++j)
      inside = closed ? points(i, j) <= corner[j] : points(i, j) < corner[j];
    count += inside ? 1 : 0;
  }
  double vol = 1.0;
  for (const double y : corner) vol *= y;
  const double frac = static_cast<double>(count) / static_cast<double>(points.size());
  return closed ? frac - vol : vol - frac;
}

// ---------------------------------------------------------------------------
// One dimension

DiscrepancyResult star_disc_1d(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("discrepancy of an empty point set");
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  DiscrepancyResult r;
  r.method = DiscMethod::closed_form_1d;
  r.value = -1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    // [0, x_(i)) holds i points (0-based), [0, x_(i)] holds i+1
    const double open_dev = s[i] - static_cast<double>(i) / n;
    const double closed_dev = static_cast<double>(i + 1) / n - s[i];
    if (open_dev > r.value) {
      r.value = open_dev;
      r.witness = {{s[i]}, false};
    }
    if (closed_dev > r.value) {
      r.value = closed_dev;
      r.witness = {{s[i]}, true};
    }
  }
  // [0, 1) holds every point: deviation 0
  if (r.value < 0.0) r = {0.0, {{1.0}, false}, DiscMethod::closed_form_1d, true};
  return r;
}

DiscrepancyResult star_disc_1d(const PointSet& points) {
  if (points.dim() != 1) throw DomainError("star_disc_1d needs a one-dimensional point set");
  return star_disc_1d(points.coords());
}

Rational star_disc_1d_exact(std::span<const Rational> xs) {
  if (xs.empty()) throw DomainError("discrepancy of an empty point set");
  std::vector<Rational> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  const auto n = static_cast<__int128>(s.size());
  Rational best(0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    best = std::max(best, s[i] - Rational(static_cast<__int128>(i), n));
    best = std::max(best, Rational(static_cast<__int128>(i + 1), n) - s[i]);
  }
  return best;
}

DiscrepancyResult extreme_disc_1d(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("discrepancy of an empty point set");
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  // D = 1/N + max_i (i/N - x_(i)) - min_i (i/N - x_(i)), 1-based i
  double hi = -2.0;
  double lo = 2.0;
  std::size_t arg_hi = 0;
  std::size_t arg_lo = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = static_cast<double>(i + 1) / n - s[i];
    if (t > hi) {
      hi = t;
      arg_hi = i;
    }
    if (t < lo) {
      lo = t;
      arg_lo = i;
    }
  }
  DiscrepancyResult r;
  r.value = 1.0 / n + hi - lo;
  r.method = DiscMethod::closed_form_1d;
  r.is_exact = true;
  // the extreme interval runs between the two maximising order statistics
  r.witness = {{s[std::min(arg_lo, arg_hi)], s[std::max(arg_lo, arg_hi)]}, arg_lo < arg_hi};
  return r;
}

DiscrepancyResult extreme_disc_1d(const PointSet& points) {
  if (points.dim() != 1) throw DomainError("extreme_disc_1d needs a one-dimensional point set");
  return extreme_disc_1d(points.coords());
}

// ---------------------------------------------------------------------------
// Brute-force oracle

DiscrepancyResult star_disc_oracle(const PointSet& points) {
  if (points.empty()) throw DomainError("discrepancy of an empty point set");
  const std::size_t d = points.dim();
  std::vector<std::vector<double>> grid(d);
  double corners = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    grid[j] = points.column(j);
    grid[j].push_back(1.0);
    std::sort(grid[j].begin(), grid[j].end());
    grid[j].erase(std::unique(grid[j].begin(), grid[j].end()), grid[j].end());
    corners *= static_cast<double>(points.size() + 1);
  }
  if (corners > 1e7) throw ResourceError("oracle guard (N+1)^d <= 1e7 exceeded");

  DiscrepancyResult r;
  r.method = DiscMethod::oracle;
  r.value = -1.0;
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> y(d);
  for (;;) {
    for (std::size_t j = 0; j < d; ++j) y[j] = grid[j][idx[j]];
    for (const bool closed : {false, true}) {
      const double v = local_discrepancy(points, y, closed);
      if (v > r.value) {
        r.value = v;
        r.witness = {y, closed};
      }
    }
    std::size_t j = 0;
    while (j < d && ++idx[j] == grid[j].size()) idx[j++] = 0;
    if (j == d) break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Threshold accepting

namespace {

// Best corner along dimension j with the other coordinates fixed; O(N + M_j).
double line_search(const CornerGrid& g, std::vector<std::uint32_t>& corner, std::size_t j, bool& closed,
                   std::vector<std::size_t>& hist) {
  const std::size_t d = g.d();
  const std::uint32_t m = g.extent(j);
  hist.assign(m + 1, 0);
  for (std::size_t i = 0; i < g.n(); ++i) {
    bool inside = true;
    for (std::size_t k = 0; k < d && inside; ++k)
      if (k != j) inside = g.rank(i, k) < corner[k];
    if (inside) ++hist[g.rank(i, j)];
  }
  const double inv_n = 1.0 / static_cast<double>(g.n());
  double best = -1.0;
  std::uint32_t arg = corner[j];
  std::size_t below = 0;
  for (std::uint32_t c = 0; c <= m; ++c) {
    if (c > 0) below += hist[c - 1];
    const double frac = static_cast<double>(below) * inv_n;
    // same multiplication order as CornerGrid::value
    double vhi = 1.0;
    double vlo = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      vhi *= k == j ? g.hi(j, c) : g.hi(k, corner[k]);
      vlo *= k == j ? g.lo(j, c) : g.lo(k, corner[k]);
    }
    const double open_dev = vhi - frac;
    const double closed_dev = frac - vlo;
    if (open_dev > best) {
      best = open_dev;
      arg = c;
      closed = false;
    }
    if (closed_dev > best) {
      best = closed_dev;
      arg = c;
      closed = true;
    }
  }
  corner[j] = arg;
  return best;
}

// Coordinate ascent with exact line searches until no dimension improves.
double refine_corner(const CornerGrid& g, std::vector<std::uint32_t>& corner, bool& closed) {
  std::vector<std::size_t> hist;
  double current = g.value(corner, closed);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t j = 0; j < g.d(); ++j) {
      std::vector<std::uint32_t> trial = corner;
      bool trial_closed = false;
      const double v = line_search(g, trial, j, trial_closed, hist);
      if (v > current) {
        current = v;
        corner = trial;
        closed = trial_closed;
        improved = true;
      }
    }
  }
  return current;
}

struct TaRun {
  double value = -1.0;
  std::vector<std::uint32_t> corner;
  bool closed = false;
};

TaRun ta_restart(const CornerGrid& g, const TaParams& params, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::size_t d = g.d();
  auto random_corner = [&] {
    std::vector<std::uint32_t> c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = static_cast<std::uint32_t>(rng.below(g.extent(j) + 1));
    return c;
  };

  double threshold = 0.0;
  if (params.initial_threshold) {
    threshold = *params.initial_threshold;
  } else {
    std::vector<double> sample(100);
    bool dummy = false;
    for (auto& v : sample) v = g.value(random_corner(), dummy);
    const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / 100.0;
    double var = 0.0;
    for (const double v : sample) var += (v - mean) * (v - mean);
    threshold = std::sqrt(var / 99.0);
  }

  TaRun best;
  std::vector<std::uint32_t> current = random_corner();
  bool closed = false;
  double current_value = g.value(current, closed);
  best = {current_value, current, closed};
  std::vector<std::uint32_t> trial(d);
  const std::size_t iters = std::max<std::size_t>(1, params.iterations);
  for (std::size_t it = 0; it < iters; ++it) {
    const double t = threshold * (1.0 - static_cast<double>(it) / static_cast<double>(iters));
    trial = current;
    const auto j = static_cast<std::size_t>(rng.below(d));
    std::uint32_t step = 1;
    while ((rng.next() & 1ULL) != 0 && step < g.extent(j)) ++step;
    const bool up = (rng.next() & 1ULL) != 0;
    const std::uint32_t m = g.extent(j);
    trial[j] = up ? std::min<std::uint32_t>(m, trial[j] + step) : (trial[j] > step ? trial[j] - step : 0);
    bool trial_closed = false;
    const double v = g.value(trial, trial_closed);
    if (v >= current_value - t) {
      current.swap(trial);
      current_value = v;
      if (v > best.value) best = {v, current, trial_closed};
    }
  }
  if (params.refine) best.value = refine_corner(g, best.corner, best.closed);
  return best;
}

}  // namespace

DiscrepancyResult star_disc_ta(const PointSet& points, const TaParams& params) {
  if (points.empty()) throw DomainError("discrepancy of an empty point set");
  const CornerGrid grid(points);
  TaRun best;
  const std::size_t restarts = std::max<std::size_t>(1, params.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    TaRun run = ta_restart(grid, params, params.seed + r);
    // ties keep the lowest restart index so the result is schedule-independent
    if (run.value > best.value) best = std::move(run);
  }
  DiscrepancyResult out;
  out.value = best.value;
  out.witness = grid.witness(best.corner, best.closed);
  out.method = DiscMethod::ta_estimate;
  out.is_exact = false;
  return out;
}

DiscrepancyResult star_disc_auto(const PointSet& points, const ExactOptions& options, const TaParams& ta) {
  if (points.dim() == 1) return star_disc_1d(points);
  if (estimate_exact_work(points.size(), points.dim()) <= options.work_budget) return star_disc_exact(points, options);
  return star_disc_ta(points, ta);
}

double calibrate_work_rate() {
  const ScrambleConfig cfg = ScrambleConfig::plain({2, 3, 5, 7});
  const PointSet ps = generate_point_set(cfg, 64);
  const auto start = std::chrono::steady_clock::now();
  (void)star_disc_exact(ps);
  const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
  return el.count() / estimate_exact_work(64, 4);
}

// ---------------------------------------------------------------------------
// Scaled series

std::vector<std::pair<std::size_t, double>> scaled_series(std::span<const double> xs) {
  if (xs.size() < 2) throw DomainError("scaled series needs N_max >= 2");
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(xs.size() - 1);
  std::vector<double> sorted;
  sorted.reserve(xs.size());
  for (std::size_t n = 1; n <= xs.size(); ++n) {
    sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), xs[n - 1]), xs[n - 1]);
    if (n < 2) continue;
    const double dn = static_cast<double>(n);
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      v = std::max({v, sorted[i] - static_cast<double>(i) / dn, static_cast<double>(i + 1) / dn - sorted[i]});
    out.emplace_back(n, v * dn / std::log(dn));
  }
  return out;
}

std::vector<std::pair<std::size_t, double>> scaled_series(const ScrambleConfig& cfg, std::size_t n_max) {
  if (cfg.dims() != 1) throw DomainError("scaled series is only defined for one-dimensional sequences");
  if (n_max < 2) throw DomainError("scaled series needs N_max >= 2");
  const PointSet ps = generate_point_set(cfg, n_max);
  return scaled_series(ps.coords());
}

}  // namespace lowdisc
