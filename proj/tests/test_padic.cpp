#include <doctest.h>

#include <cmath>
#include <numeric>

#include "lowdisc/discrepancy.hpp"
#include "lowdisc/errors.hpp"
#include "lowdisc/optimizer.hpp"
#include "lowdisc/padic.hpp"
#include "oracles.hpp"

using namespace lowdisc;

namespace {

oracle::Q to_q(const Rational& r) {
  return {oracle::Z(static_cast<long long>(r.num())), oracle::Z(static_cast<long long>(r.den()))};
}

unsigned ceil_log(std::size_t n, std::uint32_t p) {
  unsigned k = 0;
  for (std::size_t pk = 1; pk < n; pk *= p) ++k;
  return k;
}

}  // namespace

TEST_CASE("padic discrepancy examples") {
  const std::vector<std::uint64_t> a{1, 2, 3, 4};
  CHECK(padic_discrepancy(a, 2).value == Rational(1, 4));
  const std::vector<std::uint64_t> b{1, 1, 1, 1};
  const auto rb = padic_discrepancy(b, 2);
  CHECK(rb.value == Rational(1));
  CHECK_FALSE(rb.attained_level.has_value());
  const std::vector<std::uint64_t> c{1, 2};
  CHECK(padic_discrepancy(c, 2).value == Rational(1, 2));
  CHECK_THROWS_AS(padic_discrepancy(std::vector<std::uint64_t>{}, 2), DomainError);
}

TEST_CASE("padic discrepancy matches the level enumeration oracle") {
  oracle::Sampler s(3);
  for (std::uint32_t p : {2U, 3U, 5U, 7U}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = s.size(1, 40);
      const std::uint64_t range = trial % 3 == 0 ? 8 : 5000;
      std::vector<std::uint64_t> v(n);
      for (auto& x : v) x = std::uniform_int_distribution<std::uint64_t>(0, range)(s.engine());
      const auto got = padic_discrepancy(v, p);
      CHECK(to_q(got.value) == oracle::padic(v, p));
      CHECK(got.value >= Rational(1, static_cast<Rational::Int>(n)));
      CHECK(got.value <= Rational(1));
    }
  }
}

TEST_CASE("residue profile totals") {
  const std::vector<std::uint64_t> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto prof = residue_profile(v, 3, 2);
  CHECK(prof.total() == v.size());
  for (const auto& [res, count] : prof.counts) {
    CHECK(res < 9);
    CHECK(count >= 1);
  }
}

TEST_CASE("equidistribution examples") {
  CHECK(verify_equidistribution(PermPolynomial::affine(1), Permutation::identity(3), 3, 10, 3));
  CHECK_FALSE(verify_equidistribution(PermPolynomial::affine(2), Permutation::identity(2), 2, 8, 2));
  SplitMix64 stream(2024);
  const Permutation pi = random_permutation_zero_fixed(5, stream);
  CHECK(verify_equidistribution(PermPolynomial::affine(3, 1), pi, 5, 37, 3));
}

TEST_CASE("shifted relabelled subsequences have padic discrepancy exactly 1/N") {
  SplitMix64 stream(77);
  for (std::uint32_t p : {2U, 3U, 5U, 7U, 11U, 13U, 29U}) {
    for (std::int64_t a : {1, 2, 3, 7, 19, 24}) {
      if (a % p == 0) continue;
      const Permutation pi = random_permutation_zero_fixed(p, stream);
      for (std::size_t n : {1UL, 17UL, 256UL, 1000UL, 10000UL}) {
        const auto f = PermPolynomial::affine(a);
        CHECK(verify_equidistribution(f, pi, p, n, ceil_log(n, p) + 1));
        const auto values = relabelled_values(f, pi, p, n);
        CHECK(padic_discrepancy(values, p).value == Rational(1, static_cast<Rational::Int>(n)));
      }
    }
  }
}

TEST_CASE("relabelling acts digitwise") {
  const Permutation pi(std::vector<std::uint32_t>{0, 2, 1});
  // 5 = 12_3 -> 21_3 = 7 at depth 2
  CHECK(relabel_digits(5, 3, pi, 2) == 7);
  // depth pads with zero digits, which pi fixes here
  CHECK(relabel_digits(5, 3, pi, 4) == 7);
  const Permutation moves_zero(std::vector<std::uint32_t>{1, 0});
  CHECK(relabel_digits(0, 2, moves_zero, 3) == 7);
}

TEST_CASE("crt count range examples") {
  const std::vector<std::int64_t> s11{1, 1};
  const std::vector<std::uint32_t> p23{2, 3};
  const std::vector<unsigned> k11{1, 1};
  CHECK(crt_count_range(s11, p23, k11, 12) == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(crt_count_range(s11, p23, k11, 10) == std::pair<std::size_t, std::size_t>{1, 2});
  const std::vector<std::int64_t> s12{1, 2};
  const std::vector<std::uint32_t> p25{2, 5};
  const std::vector<unsigned> k21{2, 1};
  CHECK(crt_count_range(s12, p25, k21, 40) == std::pair<std::size_t, std::size_t>{2, 2});
}

TEST_CASE("crt count range guard and coprimality") {
  const std::vector<std::int64_t> s{1, 1};
  const std::vector<std::uint32_t> p{2, 3};
  const std::vector<unsigned> big{20, 10};
  CHECK_THROWS_AS(crt_count_range(s, p, big, 10), ResourceError);
  const std::vector<std::int64_t> bad{2, 1};
  const std::vector<unsigned> k{1, 1};
  CHECK_THROWS_AS(crt_count_range(bad, p, k, 10), DomainError);
}

TEST_CASE("crt spread is at most one for unit shifts") {
  oracle::Sampler s(99);
  const std::vector<std::uint32_t> all{2, 3, 5, 7, 11, 13};
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t d = s.size(1, 3);
    std::vector<std::uint32_t> primes(all.begin(), all.end());
    std::shuffle(primes.begin(), primes.end(), s.engine());
    primes.resize(d);
    std::vector<unsigned> levels;
    std::vector<std::int64_t> shifts;
    std::uint64_t modulus = 1;
    for (auto p : primes) {
      unsigned k = static_cast<unsigned>(s.size(0, 3));
      while (k > 0 && modulus * static_cast<std::uint64_t>(std::pow(p, k)) > 10000) --k;
      modulus *= static_cast<std::uint64_t>(std::pow(p, k));
      levels.push_back(k);
      std::int64_t a = 0;
      do {
        a = static_cast<std::int64_t>(s.size(1, 60));
      } while (a % p == 0);
      shifts.push_back(a);
    }
    const std::size_t n = s.size(1, 3000);
    const auto [lo, hi] = crt_count_range(shifts, primes, levels, n);
    CHECK(hi - lo <= 1);
    CHECK(lo == n / modulus);
  }
}

TEST_CASE("meijer transfer examples") {
  for (std::uint32_t p : {2U, 3U, 29U}) CHECK(meijer_transfer_bound(1.0, p) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(meijer_transfer_bound(0.01, 2) == doctest::Approx(0.01 * (2.0 + 2.0 / std::log(2.0) * std::log(100.0))));
  CHECK(std::abs(meijer_transfer_bound(0.01, 2) - 0.15288) <= 1e-4);
  CHECK_THROWS_AS(meijer_transfer_bound(0.0, 2), DomainError);
  CHECK_THROWS_AS(meijer_transfer_bound(1.5, 2), DomainError);
}

TEST_CASE("meijer bound at 1/N falls with N") {
  for (std::uint32_t p : {2U, 5U, 13U}) {
    double prev = meijer_transfer_bound(1.0 / 3.0, p);
    for (std::size_t n = 4; n <= 5000; ++n) {
      const double v = meijer_transfer_bound(1.0 / static_cast<double>(n), p);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("meijer bound dominates the extreme discrepancy of scrambled subsequences") {
  SplitMix64 stream(4);
  for (std::uint32_t p : {2U, 3U, 5U, 7U, 11U}) {
    for (std::int64_t a : {1, 2, 3, 4, 6, 9}) {
      if (a % p == 0) continue;
      const Permutation pi = random_permutation_zero_fixed(p, stream);
      const auto cfg = ScrambleConfig::from_shifts({p}, {a}, {pi});
      const auto xs = generate_point_set(cfg, 2000).column(0);
      for (std::size_t n : {2UL, 3UL, 10UL, 64UL, 500UL, 1999UL, 2000UL}) {
        const double ext = extreme_disc_1d(std::span<const double>(xs.data(), n)).value;
        CHECK(ext <= meijer_transfer_bound(1.0 / static_cast<double>(n), p));
      }
    }
  }
}
