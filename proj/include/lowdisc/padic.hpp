#pragma once

// p-adic discrepancy of integer sequences and the residue-counting checks
// behind the discrepancy bounds for scrambled van der Corput / Halton
// subsequences.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lowdisc/rational.hpp"
#include "lowdisc/sequence.hpp"

namespace lowdisc {

/// Occupancy of the residue classes mod p^k (only occupied classes stored).
struct ResidueProfile {
  std::uint32_t p = 2;
  unsigned level = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> counts;  // (residue, count), sorted by residue

  [[nodiscard]] std::size_t total() const;
};

ResidueProfile residue_profile(std::span<const std::uint64_t> values, std::uint32_t p, unsigned level);

struct PadicDiscResult {
  Rational value;
  /// Level of the enumerated maximum; nullopt when the supremum is the
  /// (unattained) limit m_max / N of deep, stabilised discs.
  std::optional<unsigned> attained_level;
  std::size_t m_max_tail = 0;
  unsigned stop_level = 0;
};

/// sup_{k >= 0, z} | #(Disc(z,k) ∩ values) / N - p^{-k} |, exactly.
PadicDiscResult padic_discrepancy(std::span<const std::uint64_t> values, std::uint32_t p);

/// Apply pi digitwise to the base-p expansion of v, using `depth` digits.
std::uint64_t relabel_digits(std::uint64_t v, std::uint32_t p, const Permutation& pi, unsigned depth);

/// pi-relabelled values f(1), ..., f(N), all expanded to the digit depth of the largest f(n).
std::vector<std::uint64_t> relabelled_values(const PermPolynomial& f, const Permutation& pi, std::uint32_t p,
                                             std::size_t n);

/// Every residue class mod p^k, k <= k_max, holds floor(N/p^k) or
/// floor(N/p^k)+1 of the relabelled values f(1..N). Index maps that are not
/// permutation polynomials are counted as well (and typically fail).
bool verify_equidistribution(const PermPolynomial& f, const Permutation& pi, std::uint32_t p, std::size_t n,
                             unsigned k_max);

/// Min and max occupancy over all joint residue boxes of (a_1 n, ..., a_d n), n = 1..N.
std::pair<std::size_t, std::size_t> crt_count_range(std::span<const std::int64_t> shifts,
                                                     std::span<const std::uint32_t> primes,
                                                     std::span<const unsigned> levels, std::size_t n);

/// delta * (2 + 2(p-1)/log p * log(1/delta)); Meijer's transfer from p-adic to extreme discrepancy.
double meijer_transfer_bound(double delta, std::uint32_t p);

}  // namespace lowdisc
