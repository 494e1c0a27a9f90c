#pragma once

// Greedy coordinate-wise search over shifts and zero-fixing digit
// permutations for scrambled Halton subsequences and Hammersley sets.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lowdisc/discrepancy.hpp"
#include "lowdisc/rng.hpp"
#include "lowdisc/sequence.hpp"

namespace lowdisc {

/// Uniform-ish random permutation of {0, ..., p-1} with pi(0) = 0: positions
/// 1..p-1 are shuffled by Fisher-Yates with j = draw mod (i+1).
Permutation random_permutation_zero_fixed(std::uint32_t p, SplitMix64& stream);

/// Independent stream for search dimension `dim` (0-based).
SplitMix64 dimension_stream(std::uint64_t seed, std::size_t dim);

struct SearchBudget {
  /// Shifts 1..n_shifts[i] are tried in dimension i (multiples of p_i skipped).
  std::vector<std::uint32_t> n_shifts;
  /// Random permutations per shift in dimension i; 0 keeps only the
  /// (shift 1, identity) baseline.
  std::vector<std::uint32_t> m_perms;
  std::uint64_t seed = 1;

  /// The budget used for the published d <= 9 configurations, truncated to d.
  static SearchBudget standard(std::size_t d, std::uint64_t seed = 1);
};

enum class SearchMethod { automatic, exact, ta };

std::string to_string(SearchMethod m);
SearchMethod search_method_from_string(const std::string& s);

struct SearchOptions {
  SearchMethod method = SearchMethod::automatic;
  ExactOptions exact;
  TaParams ta;
  /// Candidate evaluations run on this many threads; results do not depend on it.
  std::size_t workers = 1;
};

struct StageRecord {
  std::size_t dim = 0;
  std::uint32_t prime = 0;
  std::int64_t shift = 1;
  Permutation perm;
  double value = 0.0;
  bool is_exact = true;
  std::size_t candidates = 0;
};

struct SearchResult {
  ScrambleConfig config;
  std::size_t n = 0;
  double value = 0.0;
  bool is_exact = true;
  std::vector<StageRecord> trace;
  std::size_t evaluations = 0;
};

/// Fix dimensions one at a time: for dimension i try (shift 1, identity) and
/// every admissible shift a <= n_shifts[i] with m_perms[i] random
/// zero-fixing permutations, keep the candidate minimising the i-dimensional
/// star-discrepancy of the first N points. Ties go to the smaller shift, then
/// to the earlier draw.
SearchResult greedy_search(const std::vector<std::uint32_t>& primes, std::size_t n, const SearchBudget& budget,
                           const SearchOptions& options = {});

/// Exhaustive one-dimensional search over shifts 1..n_shifts (coprime to p)
/// and n_perms random zero-fixing permutations per shift, plus the plain sequence.
SearchResult search_1d(std::uint32_t p, std::size_t n, std::uint32_t n_shifts, std::uint32_t n_perms,
                       std::uint64_t seed, std::size_t workers = 1);

struct InverseSearchResult {
  std::size_t n = 0;
  SearchResult search;
};

/// Smallest N (from 1 up to n_cap) for which greedy_search finds a
/// configuration with exact star-discrepancy <= target. Throws NotFoundError
/// when the cap is reached.
InverseSearchResult inverse_star_search(std::size_t d, double target, const SearchBudget& budget,
                                        const SearchOptions& options = {}, std::size_t n_cap = 1000);

/// Scrambled Hammersley search: for each candidate prime, shifts
/// 1..shift_budgets[k] with enough permutations per shift to reach
/// total_tries evaluations; the lifted 2-D set is evaluated exactly.
SearchResult hammersley_search(std::size_t n, const std::vector<std::uint32_t>& candidate_primes,
                               const std::vector<std::uint32_t>& shift_budgets, std::size_t total_tries,
                               std::uint64_t seed, LiftConvention convention = LiftConvention::paper,
                               std::size_t workers = 1);

}  // namespace lowdisc
