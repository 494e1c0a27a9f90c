#include "lowdisc/bounds.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "lowdisc/errors.hpp"
#include "lowdisc/sequence.hpp"

namespace lowdisc {

namespace {

double ln(double x) { return std::log(x); }

void require_n(std::uint64_t n, std::uint64_t min, const char* what) {
  if (n < min) throw DomainError(std::string(what) + ": N too small");
}

}  // namespace

double vdc_star_bound(std::uint32_t b, std::uint64_t n) {
  if (b < 2) throw DomainError("vdc_star_bound: base must be >= 2");
  require_n(n, 1, "vdc_star_bound");
  const double N = static_cast<double>(n);
  return 1.0 / N + (b + 1.0) / (2.0 * N) + (b - 1.0) / (2.0 * ln(b)) * ln(N) / N;
}

double subsequence_extreme_bound(std::uint32_t p, std::uint64_t n) {
  if (p < 2) throw DomainError("subsequence_extreme_bound: base must be >= 2");
  require_n(n, 2, "subsequence_extreme_bound");
  const double N = static_cast<double>(n);
  return (p - 1.0) / (2.0 * ln(p)) * ln(N) / N;
}

double halton_extreme_bound(std::span<const std::uint32_t> primes, std::uint64_t n) {
  if (primes.empty()) throw DomainError("halton_extreme_bound: no primes");
  require_n(n, 2, "halton_extreme_bound");
  const double N = static_cast<double>(n);
  double prod = 1.0;
  for (const auto p : primes) prod *= 2.0 * (p - 1.0) / ln(p);
  return std::pow(ln(N), static_cast<double>(primes.size())) / N * prod;
}

double atanassov_star_bound(std::span<const std::uint32_t> bases, std::uint64_t n, std::optional<double> s) {
  if (bases.empty()) throw DomainError("atanassov_star_bound: no bases");
  require_n(n, 2, "atanassov_star_bound");
  const std::size_t d = bases.size();
  const double N = static_cast<double>(n);
  const double sv = s.value_or(static_cast<double>(d));
  std::vector<double> lead(d);
  for (std::size_t j = 0; j < d; ++j) lead[j] = std::floor(bases[j] / 2.0) * ln(N) / ln(bases[j]);

  double main = 1.0;
  for (std::size_t j = 0; j < d; ++j) main *= lead[j] + sv;
  main /= std::tgamma(static_cast<double>(d) + 1.0);

  double tail = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    double prod = 1.0;
    for (std::size_t j = 0; j < k; ++j) prod *= lead[j] + static_cast<double>(k);
    tail += bases[k] / std::tgamma(static_cast<double>(k) + 1.0) * prod;
  }
  return (main + tail) / N;
}

double bracketing_bound(unsigned d, double eps) {
  if (d < 3) throw DomainError("bracketing_bound: needs d >= 3");
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("bracketing_bound: eps must lie in (0, 1]");
  const double dd = d;
  // d^d/d! computed in log space to stay finite for large d
  return std::exp(dd * ln(dd) - std::lgamma(dd + 1.0) - dd * ln(eps));
}

double stirling_cover_bound(unsigned mu, unsigned d) {
  const double dd = d;
  return std::sqrt(2.0 / (std::numbers::pi * dd)) * std::exp(dd + mu * dd * std::numbers::ln2);
}

CoverParams cover_constant_pipeline(unsigned mu, unsigned d) {
  if (mu < 2) throw DomainError("cover_constant_pipeline: mu must be >= 2");
  if (d < 5) throw DomainError("cover_constant_pipeline: needs d >= 5");
  const double m = mu;
  const double dd = d;
  const double l2 = std::numbers::ln2;
  CoverParams p;
  p.mu = mu;
  p.d = d;
  p.sigma = m - m * l2 - 1.0 - l2 / dd;
  p.zeta = 1.0 + l2 + l2 / dd;
  p.tau_mu = l2 / (m - p.sigma) + kTauOffset;
  p.c_mu = 1.0 / (1.0 - std::sqrt((m + 1.0) / (2.0 * m)));
  p.c0 = std::sqrt((m - p.sigma) / 2.0);
  p.c1 = std::sqrt(4.0 * p.tau_mu * (1.0 + 1.0 / (3.0 * p.c_mu)));
  p.c = p.c0 * (1.0 + p.c1 * p.c_mu * std::sqrt(m / std::pow(2.0, m)));

  const double ms = m - p.sigma;
  const double num = std::exp(-(ms * (m * p.tau_mu - 1.0) + (1.0 - l2) * m - p.zeta - p.sigma) * dd);
  const double den = 1.0 - std::exp(-(ms * p.tau_mu - l2) * dd);
  p.bracket = 1.0 + num / den;
  p.bracket_ok = den > 0.0 && p.bracket <= std::sqrt(std::numbers::pi * dd / 2.0);
  return p;
}

ProbabilityForms probability_forms(double c, unsigned d, double q) {
  if (d < 5) throw DomainError("probability_forms: needs d >= 5");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("probability_forms: q must lie in (0, 1)");
  const double dd = d;
  return {1.0 - std::exp(-(kProbA * c * c - kProbB) * dd),
          kQuantileFactor * std::sqrt(kProbB + ln(1.0 / (1.0 - q)) / dd)};
}

double sqrt_bound(double c, unsigned d, std::uint64_t n) {
  require_n(n, 1, "sqrt_bound");
  return c * std::sqrt(static_cast<double>(d) / static_cast<double>(n));
}

std::uint64_t sqrt_bound_inverse(double c, unsigned d, double eps) {
  if (!(eps > 0.0)) throw DomainError("sqrt_bound_inverse: eps must be positive");
  return static_cast<std::uint64_t>(std::floor(c * c * d / (eps * eps)));
}

std::string to_string(CrossoverBound b) {
  switch (b) {
    case CrossoverBound::hammersley_d2:
      return "hammersley_d2";
    case CrossoverBound::hammersley_d3:
      return "hammersley_d3";
    case CrossoverBound::atanassov_lift:
      return "atanassov_lift";
  }
  return "unknown";
}

double crossover_bound_value(CrossoverBound bound, unsigned d, std::uint64_t n, std::optional<double> s) {
  require_n(n, 1, "crossover_bound_value");
  const double N = static_cast<double>(n);
  switch (bound) {
    case CrossoverBound::hammersley_d2:
      return 7.0 / (2.0 * N) + ln(N) / (2.0 * std::numbers::ln2 * N);
    case CrossoverBound::hammersley_d3:
      return 3.0 / N + (ln(N) / (2.0 * std::numbers::ln2) + 1.5) * (ln(N) / ln(3.0) + 2.0) / N;
    case CrossoverBound::atanassov_lift: {
      if (d < 2) throw DomainError("atanassov_lift needs d >= 2");
      if (n < 2) return 1.0 + 1.0 / N;
      const auto bases = first_primes(d - 1);
      return atanassov_star_bound(bases, n, s) + 1.0 / N;
    }
  }
  throw DomainError("unknown crossover bound");
}

CrossoverResult crossover_threshold(unsigned d, CrossoverBound bound, double c, std::optional<double> s) {
  const auto ratio = [&](std::uint64_t n) { return crossover_bound_value(bound, d, n, s) / sqrt_bound(c, d, n); };
  constexpr std::uint64_t kLimit = 1000000000ULL;

  // Last N at or above 1: scan every N up to 1000, then a geometric grid
  // of ratio 1.001, and bisect the final bracket.
  std::uint64_t last_above = 0;
  std::uint64_t next_below = 0;
  std::uint64_t prev_n = 0;
  auto visit = [&](std::uint64_t n) {
    if (n <= prev_n) return;
    if (ratio(n) >= 1.0) {
      last_above = n;
      next_below = 0;
    } else if (next_below == 0) {
      next_below = n;
    }
    prev_n = n;
  };
  for (std::uint64_t n = 1; n <= 1000; ++n) visit(n);
  for (double x = 1000.0; x <= static_cast<double>(kLimit); x *= 1.001) visit(static_cast<std::uint64_t>(x));
  if (last_above >= prev_n || next_below == 0) throw NotFoundError("no crossover below 1e9");
  std::uint64_t lo = last_above;
  std::uint64_t hi = next_below;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (ratio(mid) >= 1.0 ? lo : hi) = mid;
  }
  const std::uint64_t threshold = last_above == 0 ? 0 : lo;

  // Verify beyond the threshold on a geometric grid of (N*, 10 N*].
  const double base = static_cast<double>(std::max<std::uint64_t>(threshold, 1));
  CrossoverResult out{threshold, true};
  double prev = ratio(threshold + 1);
  if (prev >= 1.0) throw NotFoundError("bound does not stay below c sqrt(d/N) past the crossover");
  for (int i = 1; i <= 1000; ++i) {
    const auto n = static_cast<std::uint64_t>(std::floor(base * std::pow(10.0, i / 1000.0)));
    if (n <= threshold) continue;
    const double r = ratio(n);
    if (r >= 1.0) throw NotFoundError("bound crosses back above c sqrt(d/N) at N = " + std::to_string(n));
    if (r > prev + 1e-15) out.monotone = false;
    prev = r;
  }
  return out;
}

JumpPlan jump_plan(std::uint64_t n0, double d0, unsigned d, double c, JumpMode mode) {
  require_n(n0, 2, "jump_plan");
  const double target = sqrt_bound(c, d, n0);
  JumpPlan plan;
  plan.n0 = n0;
  plan.d0 = d0;
  plan.mode = mode;
  plan.budget = target - d0;
  if (plan.budget <= 0.0) throw DomainError("jump_plan: bound already violated at N0");
  if (plan.budget >= 1.0) throw DomainError("jump_plan: budget must be below 1");
  const double N0 = static_cast<double>(n0);
  plan.alpha = (mode == JumpMode::sequence ? 1.0 : 1.0 - 1.0 / N0) / (1.0 - plan.budget);
  if (plan.alpha <= 1.0) throw DomainError("jump_plan: no room to jump (alpha <= 1)");
  plan.n1 = static_cast<std::uint64_t>(std::floor(plan.alpha * N0));
  double reached = d0 / plan.alpha + (plan.alpha - 1.0) / plan.alpha;
  if (mode == JumpMode::pointset) reached += 1.0 / static_cast<double>(plan.n1);
  plan.valid = reached <= target * (1.0 + 1e-12);
  return plan;
}

}  // namespace lowdisc
