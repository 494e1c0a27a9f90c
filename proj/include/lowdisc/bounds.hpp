#pragma once

// Closed-form discrepancy bounds and the constants behind the c*sqrt(d/N)
// estimate. All logarithms are natural.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace lowdisc {

/// The constant in D* <= c sqrt(d/N).
inline constexpr double kSqrtConstant = 2.4631832;
/// Constants of the probabilistic form 1 - exp(-(kProbA c^2 - kProbB) d).
inline constexpr double kProbA = 1.6728349;
inline constexpr double kProbB = 10.1495427;
inline constexpr double kQuantileFactor = 0.7731673;

/// 1/N + (b+1)/(2N) + (b-1)/(2 log b) * log(N)/N.
double vdc_star_bound(std::uint32_t b, std::uint64_t n);

/// Leading term (p-1)/(2 log p) * log(N)/N of the extreme discrepancy of a
/// scrambled subsequence; the O(1/N) remainder is not included.
double subsequence_extreme_bound(std::uint32_t p, std::uint64_t n);

/// Leading term (log N)^d / N * prod 2(p_i-1)/log p_i for Halton subsequences.
double halton_extreme_bound(std::span<const std::uint32_t> primes, std::uint64_t n);

/// Atanassov's bound for the Halton sequence in the given bases. The free
/// parameter s defaults to the dimension.
double atanassov_star_bound(std::span<const std::uint32_t> bases, std::uint64_t n,
                            std::optional<double> s = std::nullopt);

/// d^d / d! * eps^-d, the bracketing-cover cardinality bound; needs d >= 3.
double bracketing_bound(unsigned d, double eps);
/// sqrt(2/(pi d)) e^d 2^(mu d), the Stirling relaxation of bracketing_bound(d, 2^-mu).
double stirling_cover_bound(unsigned mu, unsigned d);

struct CoverParams {
  unsigned mu = 0;
  unsigned d = 0;
  double sigma = 0;
  double zeta = 0;
  double tau_mu = 0;
  double c_mu = 0;
  double c0 = 0;
  double c1 = 0;
  double c = 0;
  /// The bracketed factor of the probability bound, and whether it is <= sqrt(pi d / 2).
  double bracket = 0;
  bool bracket_ok = false;
};

/// Offset added to log(2)/(mu - sigma) to form tau_mu.
inline constexpr double kTauOffset = 0.02120108;

CoverParams cover_constant_pipeline(unsigned mu, unsigned d);

struct ProbabilityForms {
  double prob_lower_bound = 0;
  double quantile_c = 0;
};

/// 1 - exp(-(kProbA c^2 - kProbB) d) and kQuantileFactor * sqrt(kProbB + log(1/(1-q))/d).
ProbabilityForms probability_forms(double c, unsigned d, double q);

/// c * sqrt(d/N).
double sqrt_bound(double c, unsigned d, std::uint64_t n);
/// floor(c^2 d / eps^2): a set size that guarantees sqrt_bound <= eps.
std::uint64_t sqrt_bound_inverse(double c, unsigned d, double eps);

enum class CrossoverBound {
  hammersley_d2,    // 7/(2N) + log(N)/(2 log 2 N)
  hammersley_d3,    // 3/N + (log N/(2 log 2) + 3/2)(log N/log 3 + 2)/N
  atanassov_lift,   // Atanassov bound of the first d-1 primes plus 1/N
};

std::string to_string(CrossoverBound b);

struct CrossoverResult {
  /// Largest N with bound(N) >= c sqrt(d/N); the bound holds strictly beyond it.
  std::uint64_t threshold = 0;
  /// Ratio bound / (c sqrt(d/N)) was non-increasing on the sampled range.
  bool monotone = false;
};

/// Evaluate one of the crossover bounds at N.
double crossover_bound_value(CrossoverBound bound, unsigned d, std::uint64_t n,
                             std::optional<double> s = std::nullopt);

/// Threshold N* with the strict inequality verified on a geometric grid of
/// 1000 points in (N*, 10 N*]. Throws NotFoundError when there is no
/// crossover below 1e9.
CrossoverResult crossover_threshold(unsigned d, CrossoverBound bound, double c,
                                    std::optional<double> s = std::nullopt);

enum class JumpMode { sequence, pointset };

struct JumpPlan {
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  double d0 = 0;
  double budget = 0;
  double alpha = 0;
  JumpMode mode = JumpMode::sequence;
  /// D0/alpha + (alpha-1)/alpha (+ 1/N1 for point sets) <= c sqrt(d/N0).
  bool valid = false;
};

/// How far N can grow from N0 while the triangle inequality keeps D* below
/// c sqrt(d/N0). Throws DomainError unless 0 < b < 1 and alpha > 1.
JumpPlan jump_plan(std::uint64_t n0, double d0, unsigned d, double c, JumpMode mode);

}  // namespace lowdisc
