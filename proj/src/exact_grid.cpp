// Exact star-discrepancy by recursive cell decomposition of the corner grid
// (after Dobkin, Eppstein and Mitchell).
//
// Dimensions are cut one after another into slabs [a_k, b_k] of corner
// indices. Relative to a finished cell every surviving point is either
//   - counted by every corner of the cell (rank < a_j in all dims), or
//   - "forced": rank in [a_j, b_j) for exactly one dim j, rank < a_m else.
// Slab boundaries in dimension k are placed at the rank of every forced point
// (so no point becomes forced twice) and after every ~sqrt(F) free points.
// Inside a cell the count is additive over dimensions and the volume is a
// product, so the extreme corners for each number of counted points follow
// from a max-product / min-product knapsack over the dimensions.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "corner_grid.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/errors.hpp"

namespace lowdisc {

namespace {

using detail::CornerGrid;

struct Forced {
  std::uint32_t point;
  std::uint32_t dim;
};

class ExactSolver {
 public:
  explicit ExactSolver(const CornerGrid& grid)
      : g_(grid),
        d_(grid.d()),
        inv_n_(1.0 / static_cast<double>(grid.n())),
        a_(grid.d()),
        b_(grid.d()),
        best_corner_(grid.d()),
        sorted_free_(grid.d() + 1),
        sorted_forced_(grid.d() + 1),
        child_forced_(grid.d() + 1),
        breaks_(grid.d() + 1),
        dim_ranks_(grid.d()) {}

  void run() {
    std::vector<std::uint32_t> all(g_.n());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    // Seed with the full box so that pruning starts from a genuine value.
    std::vector<std::uint32_t> top(d_);
    for (std::size_t j = 0; j < d_; ++j) top[j] = g_.extent(j);
    consider_corner(top);
    descend(0, all, {}, 1.0, 1.0, true, true);
  }

  [[nodiscard]] double best() const { return best_; }
  [[nodiscard]] const std::vector<std::uint32_t>& best_corner() const { return best_corner_; }
  [[nodiscard]] bool best_closed() const { return best_closed_; }

 private:
  void consider_corner(const std::vector<std::uint32_t>& c) {
    bool closed = false;
    const double v = g_.value(c, closed);
    if (v > best_) {
      best_ = v;
      best_corner_ = c;
      best_closed_ = closed;
    }
  }

  void descend(std::size_t k, std::span<const std::uint32_t> free, std::span<const Forced> forced, double hi_prod,
               double lo_prod, bool want_hi, bool want_lo) {
    if (k == d_) {
      leaf(free.size(), forced, want_hi, want_lo);
      return;
    }
    auto& sf = sorted_free_[k];
    auto& sg = sorted_forced_[k];
    sf.assign(free.begin(), free.end());
    sg.assign(forced.begin(), forced.end());
    std::sort(sf.begin(), sf.end(), [&](std::uint32_t x, std::uint32_t y) { return g_.rank(x, k) < g_.rank(y, k); });
    std::sort(sg.begin(), sg.end(),
              [&](const Forced& x, const Forced& y) { return g_.rank(x.point, k) < g_.rank(y.point, k); });

    auto& br = breaks_[k];
    br.clear();
    for (const auto& f : sg) br.push_back(g_.rank(f.point, k));
    const std::size_t step = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(sf.size()))));
    for (std::size_t i = step; i < sf.size(); i += step) br.push_back(g_.rank(sf[i], k));
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());

    const std::uint32_t extent = g_.extent(k);
    const bool last = k + 1 == d_;
    // Walk slabs from the top down: large volumes and counts come first.
    std::size_t free_end = sf.size();
    std::size_t forced_end = sg.size();
    for (std::size_t idx = br.size() + 1; idx-- > 0;) {
      const std::uint32_t lo_edge = idx == 0 ? 0 : br[idx - 1] + 1;
      const std::uint32_t hi_edge = idx == br.size() ? extent : br[idx];
      // points with rank >= hi_edge are never counted in this slab
      while (free_end > 0 && g_.rank(sf[free_end - 1], k) >= hi_edge) --free_end;
      while (forced_end > 0 && g_.rank(sg[forced_end - 1].point, k) >= hi_edge) --forced_end;
      std::size_t free_below = free_end;
      while (free_below > 0 && g_.rank(sf[free_below - 1], k) >= lo_edge) --free_below;
      // forced points never have a rank inside [lo_edge, hi_edge)
      const std::size_t forced_below = forced_end;

      const double hp = hi_prod * g_.hi(k, hi_edge);
      const double lp = lo_prod * g_.lo(k, lo_edge);
      const std::size_t reachable = free_end + forced_below;
      const bool child_hi = want_hi && hp > best_;
      const bool child_lo = want_lo && static_cast<double>(reachable) * inv_n_ - (last ? lp : 0.0) > best_;
      if (!child_hi && !child_lo) continue;

      auto& cg = child_forced_[k];
      cg.assign(sg.begin(), sg.begin() + static_cast<std::ptrdiff_t>(forced_below));
      for (std::size_t i = free_below; i < free_end; ++i) cg.push_back({sf[i], static_cast<std::uint32_t>(k)});
      a_[k] = lo_edge;
      b_[k] = hi_edge;
      descend(k + 1, std::span<const std::uint32_t>(sf.data(), free_below), cg, hp, lp, child_hi, child_lo);
    }
  }

  // Options for dimension j: value of the extreme corner that counts exactly t
  // of the forced ranks q (sorted). Infeasible counts get `bad`.
  void options(std::size_t j, const std::vector<std::uint32_t>& q, bool hi_side, std::vector<double>& out) const {
    const std::size_t m = q.size();
    out.assign(m + 1, 0.0);
    const double bad = hi_side ? -1.0 : std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t <= m; ++t) {
      if (hi_side) {
        if (t == m) {
          out[t] = g_.hi(j, b_[j]);
        } else {
          out[t] = (t > 0 && q[t] == q[t - 1]) ? bad : g_.hi(j, q[t]);
        }
      } else {
        if (t == 0) {
          out[t] = g_.lo(j, a_[j]);
        } else {
          out[t] = (t < m && q[t] == q[t - 1]) ? bad : g_.lo(j, q[t - 1] + 1);
        }
      }
    }
  }

  // Extreme product of per-dimension options for each total count. When
  // `choice` is given, records the per-dimension count for backtracking.
  void knapsack(bool hi_side, std::vector<double>& acc, std::vector<std::vector<std::uint32_t>>* choice) {
    acc.assign(1, 1.0);
    const double bad = hi_side ? -1.0 : std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d_; ++j) {
      const auto& q = dim_ranks_[j];
      if (q.empty()) {
        const double f = hi_side ? g_.hi(j, b_[j]) : g_.lo(j, a_[j]);
        for (auto& v : acc)
          if (v != bad) v *= f;
        if (choice != nullptr) (*choice)[j].assign(acc.size(), 0);
        continue;
      }
      options(j, q, hi_side, opt_);
      next_.assign(acc.size() + q.size(), bad);
      if (choice != nullptr) (*choice)[j].assign(next_.size(), 0);
      for (std::size_t x = 0; x < acc.size(); ++x) {
        if (acc[x] == bad) continue;
        for (std::size_t t = 0; t < opt_.size(); ++t) {
          if (opt_[t] == bad) continue;
          const double v = acc[x] * opt_[t];
          if (hi_side ? v > next_[x + t] : v < next_[x + t]) {
            next_[x + t] = v;
            if (choice != nullptr) (*choice)[j][x + t] = static_cast<std::uint32_t>(t);
          }
        }
      }
      acc.swap(next_);
    }
  }

  void leaf(std::size_t base, std::span<const Forced> forced, bool want_hi, bool want_lo) {
    double vhi = 1.0;
    double vlo = 1.0;
    for (std::size_t j = 0; j < d_; ++j) {
      vhi *= g_.hi(j, b_[j]);
      vlo *= g_.lo(j, a_[j]);
    }
    const double base_frac = static_cast<double>(base) * inv_n_;
    want_hi = want_hi && vhi - base_frac > best_;
    want_lo = want_lo && static_cast<double>(base + forced.size()) * inv_n_ - vlo > best_;
    if (!want_hi && !want_lo) return;

    for (auto& q : dim_ranks_) q.clear();
    for (const auto& f : forced) dim_ranks_[f.dim].push_back(g_.rank(f.point, f.dim));
    for (auto& q : dim_ranks_) std::sort(q.begin(), q.end());

    for (const bool hi_side : {true, false}) {
      if (hi_side ? !want_hi : !want_lo) continue;
      knapsack(hi_side, acc_, nullptr);
      double cell_best = -1.0;
      std::size_t arg = 0;
      for (std::size_t t = 0; t < acc_.size(); ++t) {
        const double frac = static_cast<double>(base + t) * inv_n_;
        double v;
        if (hi_side) {
          if (acc_[t] < 0.0) continue;
          v = acc_[t] - frac;
        } else {
          if (std::isinf(acc_[t])) continue;
          v = frac - acc_[t];
        }
        if (v > cell_best) {
          cell_best = v;
          arg = t;
        }
      }
      if (cell_best > best_) record(hi_side, arg, cell_best);
    }
  }

  void record(bool hi_side, std::size_t total, double value) {
    std::vector<std::vector<std::uint32_t>> choice(d_);
    knapsack(hi_side, acc_, &choice);
    std::vector<std::uint32_t> corner(d_);
    std::size_t rem = total;
    for (std::size_t j = d_; j-- > 0;) {
      const auto& q = dim_ranks_[j];
      const std::uint32_t t = q.empty() ? 0 : choice[j][rem];
      if (hi_side) {
        corner[j] = t < q.size() ? q[t] : b_[j];
      } else {
        corner[j] = t == 0 ? a_[j] : q[t - 1] + 1;
      }
      rem -= t;
    }
    best_ = value;
    best_corner_ = corner;
    best_closed_ = !hi_side;
  }

  const CornerGrid& g_;
  std::size_t d_;
  double inv_n_;
  std::vector<std::uint32_t> a_;
  std::vector<std::uint32_t> b_;
  double best_ = -1.0;
  std::vector<std::uint32_t> best_corner_;
  bool best_closed_ = false;

  std::vector<std::vector<std::uint32_t>> sorted_free_;
  std::vector<std::vector<Forced>> sorted_forced_;
  std::vector<std::vector<Forced>> child_forced_;
  std::vector<std::vector<std::uint32_t>> breaks_;
  std::vector<std::vector<std::uint32_t>> dim_ranks_;
  std::vector<double> acc_;
  std::vector<double> next_;
  std::vector<double> opt_;
};

}  // namespace

double default_work_budget() {
  if (const char* env = std::getenv("LOWDISC_WORK_BUDGET")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e10;
}

double estimate_exact_work(std::size_t n, std::size_t d) {
  return std::pow(static_cast<double>(n), static_cast<double>(d) / 2.0 + 1.0);
}

DiscrepancyResult star_disc_exact(const PointSet& points, const ExactOptions& options) {
  if (points.empty()) throw DomainError("discrepancy of an empty point set");
  const double work = estimate_exact_work(points.size(), points.dim());
  if (work > options.work_budget)
    throw ResourceError("exact star-discrepancy work estimate " + std::to_string(work) + " exceeds budget " +
                        std::to_string(options.work_budget) + "; use the threshold-accepting estimate");
  const CornerGrid grid(points);
  ExactSolver solver(grid);
  solver.run();
  DiscrepancyResult r;
  r.value = solver.best();
  r.witness = grid.witness(solver.best_corner(), solver.best_closed());
  r.method = DiscMethod::exact_grid;
  r.is_exact = true;
  return r;
}

}  // namespace lowdisc
