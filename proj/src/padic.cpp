#include "lowdisc/padic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lowdisc/errors.hpp"

namespace lowdisc {

namespace {

constexpr std::uint64_t kEnumerationGuard = std::uint64_t{1} << 24;

// |count/N - 1/p^k| = |count * p^k - N| / (N p^k)
Rational deviation(std::size_t count, std::size_t n, unsigned __int128 pk) {
  const __int128 num = static_cast<__int128>(count) * static_cast<__int128>(pk) - static_cast<__int128>(n);
  return Rational(num < 0 ? -num : num, static_cast<__int128>(n) * static_cast<__int128>(pk));
}

unsigned digit_count(std::uint64_t v, std::uint32_t p) {
  unsigned len = 0;
  while (v != 0) {
    v /= p;
    ++len;
  }
  return len;
}

}  // namespace

std::size_t ResidueProfile::total() const {
  std::size_t s = 0;
  for (const auto& [r, c] : counts) s += c;
  return s;
}

ResidueProfile residue_profile(std::span<const std::uint64_t> values, std::uint32_t p, unsigned level) {
  unsigned __int128 m = 1;
  for (unsigned i = 0; i < level; ++i) m *= p;
  std::vector<std::uint64_t> res(values.begin(), values.end());
  for (auto& v : res) v = static_cast<std::uint64_t>(v % m);
  std::sort(res.begin(), res.end());
  ResidueProfile prof{p, level, {}};
  for (std::size_t i = 0; i < res.size();) {
    std::size_t j = i;
    while (j < res.size() && res[j] == res[i]) ++j;
    prof.counts.emplace_back(res[i], j - i);
    i = j;
  }
  return prof;
}

PadicDiscResult padic_discrepancy(std::span<const std::uint64_t> values, std::uint32_t p) {
  if (values.empty()) throw DomainError("p-adic discrepancy of an empty sequence");
  if (!is_prime(p)) throw DomainError("p-adic discrepancy needs a prime p");
  const std::size_t n = values.size();

  std::vector<std::uint64_t> all(values.begin(), values.end());
  std::sort(all.begin(), all.end());
  std::size_t m_max = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && all[j] == all[i]) ++j;
    m_max = std::max(m_max, j - i);
    i = j;
  }
  const std::size_t distinct = static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());

  PadicDiscResult out;
  out.m_max_tail = m_max;
  Rational best(0);
  unsigned best_level = 0;
  unsigned __int128 pk = 1;
  bool separated = false;
  unsigned stop = 0;
  // Enumerate until every distinct value sits in its own class, then one
  // more level so that the empty-class term p^{-k} of the next level is seen.
  for (unsigned k = 0;; ++k) {
    const ResidueProfile prof = residue_profile(values, p, k);
    for (const auto& [r, c] : prof.counts) {
      const Rational dev = deviation(c, n, pk);
      if (dev > best) {
        best = dev;
        best_level = k;
      }
    }
    if (static_cast<unsigned __int128>(prof.counts.size()) < pk) {
      const Rational empty(1, static_cast<__int128>(pk));
      if (empty > best) {
        best = empty;
        best_level = k;
      }
    }
    if (separated) break;
    if (prof.counts.size() == distinct) {
      separated = true;
      stop = k;
    }
    pk *= p;
  }
  out.stop_level = stop;
  const Rational tail(static_cast<__int128>(m_max), static_cast<__int128>(n));
  if (tail > best) {
    out.value = tail;
    out.attained_level = std::nullopt;
  } else {
    out.value = best;
    out.attained_level = best_level;
  }
  return out;
}

std::uint64_t relabel_digits(std::uint64_t v, std::uint32_t p, const Permutation& pi, unsigned depth) {
  if (pi.base() != p) throw ConfigError("permutation base does not match p");
  std::uint64_t out = 0;
  std::uint64_t w = 1;
  for (unsigned j = 0; j < depth; ++j) {
    out += static_cast<std::uint64_t>(pi(static_cast<std::uint32_t>(v % p))) * w;
    v /= p;
    w *= p;
  }
  return out;
}

std::vector<std::uint64_t> relabelled_values(const PermPolynomial& f, const Permutation& pi, std::uint32_t p,
                                             std::size_t n) {
  std::vector<std::uint64_t> raw(n);
  std::uint64_t vmax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    raw[i] = f.eval(i + 1);
    vmax = std::max(vmax, raw[i]);
  }
  const unsigned depth = digit_count(vmax, p);
  for (auto& v : raw) v = relabel_digits(v, p, pi, depth);
  return raw;
}

bool verify_equidistribution(const PermPolynomial& f, const Permutation& pi, std::uint32_t p, std::size_t n,
                             unsigned k_max) {
  // no bijectivity precondition is enforced: a non-permuting f simply fails the count
  const auto values = relabelled_values(f, pi, p, n);
  std::uint64_t m = 1;
  std::vector<std::size_t> counts;
  for (unsigned k = 0; k <= k_max; ++k) {
    if (k > 0) m *= p;
    if (m > kEnumerationGuard) throw ResourceError("p^k exceeds the 2^24 enumeration guard");
    counts.assign(m, 0);
    for (const auto v : values) ++counts[v % m];
    const std::size_t lo = n / m;
    for (const auto c : counts)
      if (c != lo && c != lo + 1) return false;
  }
  return true;
}

std::pair<std::size_t, std::size_t> crt_count_range(std::span<const std::int64_t> shifts,
                                                     std::span<const std::uint32_t> primes,
                                                     std::span<const unsigned> levels, std::size_t n) {
  if (shifts.size() != primes.size() || levels.size() != primes.size())
    throw DomainError("shifts, primes and levels differ in length");
  std::vector<std::uint64_t> moduli;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (std::gcd(shifts[i], static_cast<std::int64_t>(primes[i])) != 1)
      throw DomainError("shift not coprime to its prime");
    std::uint64_t m = 1;
    for (unsigned k = 0; k < levels[i]; ++k) m *= primes[i];
    moduli.push_back(m);
    total *= m;
    if (total > kEnumerationGuard) throw ResourceError("residue box count exceeds the 2^24 guard");
  }
  std::vector<std::size_t> counts(total, 0);
  for (std::size_t t = 1; t <= n; ++t) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const auto m = static_cast<__int128>(moduli[i]);
      __int128 r = (static_cast<__int128>(shifts[i]) * static_cast<__int128>(t)) % m;
      if (r < 0) r += m;
      idx = idx * moduli[i] + static_cast<std::uint64_t>(r);
    }
    ++counts[idx];
  }
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  return {*lo, *hi};
}

double meijer_transfer_bound(double delta, std::uint32_t p) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
  if (p < 2) throw DomainError("p must be >= 2");
  const double lp = std::log(static_cast<double>(p));
  return delta * (2.0 + 2.0 * (p - 1) / lp * std::log(1.0 / delta));
}

}  // namespace lowdisc
