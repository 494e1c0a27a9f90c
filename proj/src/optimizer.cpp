#include "lowdisc/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <set>
#include <thread>
#include <tuple>

#include "lowdisc/errors.hpp"

namespace lowdisc {

Permutation random_permutation_zero_fixed(std::uint32_t p, SplitMix64& stream) {
  if (p < 2) throw DomainError("permutation base must be >= 2");
  std::vector<std::uint32_t> map(p);
  std::iota(map.begin(), map.end(), 0U);
  for (std::uint32_t i = p - 1; i >= 2; --i) {
    // j in {1, ..., i}: draw mod i over the nonzero positions
    const auto j = 1 + static_cast<std::uint32_t>(stream.below(i));
    std::swap(map[i], map[j]);
  }
  return Permutation(std::move(map));
}

SplitMix64 dimension_stream(std::uint64_t seed, std::size_t dim) {
  return SplitMix64(seed ^ (static_cast<std::uint64_t>(dim) * 0x9E3779B97F4A7C15ULL));
}

SearchBudget SearchBudget::standard(std::size_t d, std::uint64_t seed) {
  static const std::vector<std::uint32_t> shifts{100, 100, 40, 40, 40, 40, 40, 20, 20};
  static const std::vector<std::uint32_t> perms{1, 5, 20, 80, 80, 60, 60, 60, 60};
  SearchBudget b;
  b.seed = seed;
  for (std::size_t i = 0; i < d; ++i) {
    b.n_shifts.push_back(shifts[std::min(i, shifts.size() - 1)]);
    b.m_perms.push_back(perms[std::min(i, perms.size() - 1)]);
  }
  return b;
}

std::string to_string(SearchMethod m) {
  switch (m) {
    case SearchMethod::automatic:
      return "auto";
    case SearchMethod::exact:
      return "exact";
    case SearchMethod::ta:
      return "ta";
  }
  return "unknown";
}

SearchMethod search_method_from_string(const std::string& s) {
  if (s == "auto") return SearchMethod::automatic;
  if (s == "exact") return SearchMethod::exact;
  if (s == "ta") return SearchMethod::ta;
  throw ConfigError("unknown search method: " + s);
}

namespace {

struct Candidate {
  std::int64_t shift = 1;
  Permutation perm;
  std::size_t order = 0;
  double value = 0.0;
  bool is_exact = true;
};

bool better(const Candidate& a, const Candidate& b) {
  return std::tie(a.value, a.shift, a.order) < std::tie(b.value, b.shift, b.order);
}

// Evaluate every candidate (possibly on several threads) and return the
// lexicographic minimum; the result does not depend on the schedule.
template <typename Eval>
Candidate evaluate_all(std::vector<Candidate>& cands, std::size_t workers, Eval&& eval) {
  workers = std::max<std::size_t>(1, std::min(workers, cands.size()));
  if (workers == 1) {
    for (auto& c : cands) eval(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cands.size() && !failed; i = next++) {
          try {
            eval(cands[i]);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  return *std::min_element(cands.begin(), cands.end(), better);
}

// (shift 1, identity) first, then m_perms draws per admissible shift.
// Exact duplicates of an earlier candidate are dropped: they could never win
// the tie-break.
std::vector<Candidate> stage_candidates(std::uint32_t p, std::uint32_t n_shifts, std::uint32_t m_perms,
                                        SplitMix64 stream) {
  std::vector<Candidate> out;
  std::set<std::pair<std::int64_t, std::vector<std::uint32_t>>> seen;
  auto push = [&](std::int64_t a, Permutation perm) {
    auto key = std::make_pair(a, std::vector<std::uint32_t>(perm.map().begin(), perm.map().end()));
    if (!seen.insert(std::move(key)).second) return;
    out.push_back({a, std::move(perm), out.size(), 0.0, true});
  };
  push(1, Permutation::identity(p));
  for (std::uint32_t a = 1; a <= n_shifts; ++a) {
    if (a % p == 0) continue;
    for (std::uint32_t k = 0; k < m_perms; ++k) push(a, random_permutation_zero_fixed(p, stream));
  }
  return out;
}

ScrambleConfig prefix_config(const std::vector<std::uint32_t>& primes, const std::vector<StageRecord>& fixed) {
  std::vector<std::int64_t> shifts;
  std::vector<Permutation> perms;
  for (const auto& r : fixed) {
    shifts.push_back(r.shift);
    perms.push_back(r.perm);
  }
  return ScrambleConfig::from_shifts(std::vector<std::uint32_t>(primes.begin(), primes.begin() + fixed.size()),
                                     shifts, perms);
}

DiscrepancyResult evaluate(const PointSet& ps, const SearchOptions& options) {
  if (ps.dim() == 1) return star_disc_1d(ps);
  switch (options.method) {
    case SearchMethod::exact:
      return star_disc_exact(ps, ExactOptions{1e300});
    case SearchMethod::ta:
      return star_disc_ta(ps, options.ta);
    case SearchMethod::automatic:
      break;
  }
  return star_disc_auto(ps, options.exact, options.ta);
}

}  // namespace

SearchResult greedy_search(const std::vector<std::uint32_t>& primes, std::size_t n, const SearchBudget& budget,
                           const SearchOptions& options) {
  const std::size_t d = primes.size();
  if (d == 0) throw ConfigError("greedy_search: no primes");
  if (n == 0) throw DomainError("greedy_search: N must be >= 1");
  if (budget.n_shifts.size() != d || budget.m_perms.size() != d)
    throw ConfigError("greedy_search: budget dimension does not match the primes");
  ScrambleConfig::plain(primes).validate();

  SearchResult result;
  result.n = n;
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint32_t p = primes[i];
    auto cands = stage_candidates(p, std::max<std::uint32_t>(1, budget.n_shifts[i]), budget.m_perms[i],
                                  dimension_stream(budget.seed, i));
    const Candidate best = evaluate_all(cands, options.workers, [&](Candidate& c) {
      auto trial = result.trace;
      trial.push_back({i, p, c.shift, c.perm, 0.0, true, 0});
      const DiscrepancyResult r = evaluate(generate_point_set(prefix_config(primes, trial), n), options);
      c.value = r.value;
      c.is_exact = r.is_exact;
    });
    result.evaluations += cands.size();
    result.trace.push_back({i, p, best.shift, best.perm, best.value, best.is_exact, cands.size()});
  }
  result.config = prefix_config(primes, result.trace);
  const StageRecord& last = result.trace.back();
  result.value = last.value;
  result.is_exact = last.is_exact;
  if (!result.is_exact) {
    // re-check only the winner when the exact engine can afford it
    const PointSet ps = generate_point_set(result.config, n);
    if (estimate_exact_work(n, d) <= options.exact.work_budget) {
      result.value = star_disc_exact(ps, options.exact).value;
      result.is_exact = true;
    }
  }
  return result;
}

SearchResult search_1d(std::uint32_t p, std::size_t n, std::uint32_t n_shifts, std::uint32_t n_perms,
                       std::uint64_t seed, std::size_t workers) {
  if (!is_prime(p)) throw ConfigError("search_1d: base must be prime");
  if (n == 0) throw DomainError("search_1d: N must be >= 1");
  auto cands = stage_candidates(p, std::max<std::uint32_t>(1, n_shifts), n_perms, dimension_stream(seed, 0));
  const Candidate best = evaluate_all(cands, workers, [&](Candidate& c) {
    const auto cfg = ScrambleConfig::from_shifts({p}, {c.shift}, {c.perm});
    c.value = star_disc_1d(generate_point_set(cfg, n)).value;
  });
  SearchResult result;
  result.n = n;
  result.config = ScrambleConfig::from_shifts({p}, {best.shift}, {best.perm});
  result.value = best.value;
  result.evaluations = cands.size();
  result.trace.push_back({0, p, best.shift, best.perm, best.value, true, cands.size()});
  return result;
}

InverseSearchResult inverse_star_search(std::size_t d, double target, const SearchBudget& budget,
                                        const SearchOptions& options, std::size_t n_cap) {
  if (!(target > 0.0 && target < 1.0 + 1e-12)) throw DomainError("inverse_star_search: target must lie in (0, 1]");
  const auto primes = first_primes(d);
  for (std::size_t n = 1; n <= n_cap; ++n) {
    SearchResult r = greedy_search(primes, n, budget, options);
    if (r.is_exact && r.value <= target) return {n, std::move(r)};
  }
  throw NotFoundError("inverse_star_search: no configuration reached the target below the N cap");
}

SearchResult hammersley_search(std::size_t n, const std::vector<std::uint32_t>& candidate_primes,
                               const std::vector<std::uint32_t>& shift_budgets, std::size_t total_tries,
                               std::uint64_t seed, LiftConvention convention, std::size_t workers) {
  if (n < 2) throw DomainError("hammersley_search: N must be >= 2");
  if (candidate_primes.size() != shift_budgets.size())
    throw ConfigError("hammersley_search: one shift budget per prime required");

  SearchResult result;
  result.n = n;
  Candidate best;
  best.value = 2.0;
  std::uint32_t best_prime = 0;
  for (std::size_t k = 0; k < candidate_primes.size(); ++k) {
    const std::uint32_t p = candidate_primes[k];
    if (!is_prime(p)) throw ConfigError("hammersley_search: candidate base must be prime");
    const std::uint32_t shifts = std::max<std::uint32_t>(1, shift_budgets[k]);
    const auto per_shift = static_cast<std::uint32_t>(std::max<std::size_t>(1, total_tries / shifts));
    auto cands = stage_candidates(p, shifts, per_shift, dimension_stream(seed, k));
    const Candidate local = evaluate_all(cands, workers, [&](Candidate& c) {
      auto cfg = ScrambleConfig::from_shifts({p}, {c.shift}, {c.perm});
      cfg.convention = convention;
      c.value = star_disc_exact(hammersley_lift(cfg, n, convention), ExactOptions{1e300}).value;
    });
    result.evaluations += cands.size();
    result.trace.push_back({k, p, local.shift, local.perm, local.value, true, cands.size()});
    // primes are compared by value only; the earlier prime wins ties
    if (local.value < best.value) {
      best = local;
      best_prime = p;
    }
  }
  result.config = ScrambleConfig::from_shifts({best_prime}, {best.shift}, {best.perm});
  result.config.convention = convention;
  result.value = best.value;
  return result;
}

}  // namespace lowdisc
