#include "lowdisc/sequence.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "lowdisc/errors.hpp"

namespace lowdisc {

namespace {

using u128 = unsigned __int128;

constexpr u128 kExactDoubleLimit = u128{1} << 53;

// Digits of n in base b, least significant first.
struct Digits {
  std::uint32_t d[70];
  unsigned len = 0;
};

Digits digits_of(std::uint64_t n, std::uint32_t base) {
  Digits out;
  while (n != 0) {
    out.d[out.len++] = static_cast<std::uint32_t>(n % base);
    n /= base;
  }
  return out;
}

// num / den with a single rounding when both are exact doubles; otherwise a
// Horner evaluation from the least significant weight upward.
double ratio_to_double(u128 num, u128 den, const Digits& digits, std::uint32_t base, const Permutation* pi) {
  if (den <= kExactDoubleLimit && num <= kExactDoubleLimit) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  long double v = 0.0L;
  if (pi != nullptr && (*pi)(0) != 0) v = static_cast<long double>((*pi)(0)) / (base - 1);
  for (unsigned j = digits.len; j-- > 0;) {
    const std::uint32_t e = pi != nullptr ? (*pi)(digits.d[j]) : digits.d[j];
    v = (static_cast<long double>(e) + v) / base;
  }
  return static_cast<double>(v);
}

bool pow_fits(std::uint32_t base, unsigned len) {
  u128 p = 1;
  for (unsigned i = 0; i < len; ++i) {
    p *= base;
    if (p > (u128{1} << 100)) return false;
  }
  return true;
}

void check_base(std::uint32_t base) {
  if (base < 2) throw DomainError("radical inverse base must be >= 2");
}

}  // namespace

// ---------------------------------------------------------------------------
// Permutation / PermPolynomial / ScrambleConfig

Permutation::Permutation(std::vector<std::uint32_t> map) : map_(std::move(map)) {
  if (map_.size() < 2) throw ConfigError("permutation base must be >= 2");
  std::vector<bool> seen(map_.size(), false);
  for (const auto v : map_) {
    if (v >= map_.size() || seen[v]) throw ConfigError("digit map is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::uint32_t base) {
  std::vector<std::uint32_t> m(base);
  std::iota(m.begin(), m.end(), 0U);
  return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

std::uint64_t PermPolynomial::eval_mod(std::uint64_t n, std::uint64_t m) const {
  if (coeffs.empty()) throw ConfigError("empty polynomial");
  const auto mm = static_cast<__int128>(m);
  const __int128 x = static_cast<__int128>(n % m);
  __int128 acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = (acc * x + (*it % static_cast<std::int64_t>(m))) % mm;
    if (acc < 0) acc += mm;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t PermPolynomial::eval(std::uint64_t n) const {
  if (coeffs.empty()) throw ConfigError("empty polynomial");
  __int128 acc = 0;
  const auto x = static_cast<__int128>(n);
  constexpr __int128 kLimit = static_cast<__int128>(std::numeric_limits<std::uint64_t>::max());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x + *it;
    if (acc > kLimit || acc < -kLimit) throw ConfigError("index polynomial overflows 64 bits");
  }
  if (acc < 0) throw ConfigError("index polynomial produced a negative value");
  return static_cast<std::uint64_t>(acc);
}

std::optional<std::int64_t> PermPolynomial::pure_shift() const {
  if (coeffs.size() == 2 && coeffs[0] == 0) return coeffs[1];
  if (coeffs.size() == 1 && coeffs[0] == 0) return 0;
  return std::nullopt;
}

std::string to_string(LiftConvention c) { return c == LiftConvention::paper ? "paper" : "classic"; }

LiftConvention lift_convention_from_string(const std::string& s) {
  if (s == "paper") return LiftConvention::paper;
  if (s == "classic") return LiftConvention::classic;
  throw ConfigError("unknown lifting convention '" + s + "'");
}

ScrambleConfig ScrambleConfig::from_shifts(std::vector<std::uint32_t> primes, const std::vector<std::int64_t>& shifts,
                                           std::vector<Permutation> perms) {
  if (shifts.size() != primes.size()) throw ConfigError("shifts and primes differ in length");
  ScrambleConfig cfg;
  cfg.primes = std::move(primes);
  cfg.perms = std::move(perms);
  for (const auto a : shifts) cfg.polys.push_back(PermPolynomial::affine(a));
  return cfg;
}

ScrambleConfig ScrambleConfig::plain(std::vector<std::uint32_t> primes) {
  std::vector<Permutation> perms;
  std::vector<std::int64_t> shifts(primes.size(), 1);
  for (const auto p : primes) perms.push_back(Permutation::identity(p));
  return from_shifts(std::move(primes), shifts, std::move(perms));
}

void ScrambleConfig::validate() const {
  if (primes.empty()) throw ConfigError("configuration needs at least one dimension");
  if (polys.size() != primes.size() || perms.size() != primes.size())
    throw ConfigError("primes, polynomials and permutations differ in length");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) throw ConfigError("base " + std::to_string(primes[i]) + " is not prime");
    for (std::size_t j = 0; j < i; ++j)
      if (primes[j] == primes[i]) throw ConfigError("primes must be pairwise distinct");
    if (perms[i].base() != primes[i])
      throw ConfigError("permutation " + std::to_string(i) + " does not match base " + std::to_string(primes[i]));
    if (const auto a = polys[i].pure_shift()) {
      if (std::gcd(*a, static_cast<std::int64_t>(primes[i])) != 1)
        throw ConfigError("shift " + std::to_string(*a) + " is not coprime to " + std::to_string(primes[i]));
    } else if (!validate_perm_polynomial(polys[i], primes[i], 2)) {
      throw ConfigError("index polynomial " + std::to_string(i) + " is not a permutation polynomial mod p^2");
    }
  }
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw DomainError("point set dimension must be >= 1");
  if (coords_.size() % dim_ != 0) throw DomainError("coordinate count is not a multiple of the dimension");
}

std::vector<double> PointSet::column(std::size_t j) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(i, j);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 2; out.size() < count; ++c)
    if (is_prime(c)) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// Radical inverses

double radical_inverse(std::uint64_t n, std::uint32_t base) {
  check_base(base);
  const Digits dg = digits_of(n, base);
  if (!pow_fits(base, dg.len)) return ratio_to_double(0, ~u128{0}, dg, base, nullptr);
  u128 num = 0;
  u128 den = 1;
  for (unsigned j = 0; j < dg.len; ++j) {
    num = num * base + dg.d[j];
    den *= base;
  }
  return ratio_to_double(num, den, dg, base, nullptr);
}

Rational radical_inverse_exact(std::uint64_t n, std::uint32_t base) {
  check_base(base);
  const Digits dg = digits_of(n, base);
  if (!pow_fits(base, dg.len)) throw ResourceError("exact radical inverse exceeds 128-bit range");
  __int128 num = 0;
  __int128 den = 1;
  for (unsigned j = 0; j < dg.len; ++j) {
    num = num * base + dg.d[j];
    den *= base;
  }
  return {num, den};
}

double scrambled_radical_inverse(std::uint64_t n, std::uint32_t base, const Permutation& pi) {
  check_base(base);
  if (pi.base() != base) throw ConfigError("permutation base does not match radical inverse base");
  const Digits dg = digits_of(n, base);
  if (!pow_fits(base, dg.len + 1)) return ratio_to_double(0, ~u128{0}, dg, base, &pi);
  u128 num = 0;
  u128 den = 1;
  for (unsigned j = 0; j < dg.len; ++j) {
    num = num * base + pi(dg.d[j]);
    den *= base;
  }
  if (pi(0) != 0) {
    num = num * (base - 1) + pi(0);
    den *= (base - 1);
  }
  return ratio_to_double(num, den, dg, base, &pi);
}

Rational scrambled_radical_inverse_exact(std::uint64_t n, std::uint32_t base, const Permutation& pi) {
  check_base(base);
  if (pi.base() != base) throw ConfigError("permutation base does not match radical inverse base");
  const Digits dg = digits_of(n, base);
  if (!pow_fits(base, dg.len + 1)) throw ResourceError("exact radical inverse exceeds 128-bit range");
  __int128 num = 0;
  __int128 den = 1;
  for (unsigned j = 0; j < dg.len; ++j) {
    num = num * base + pi(dg.d[j]);
    den *= base;
  }
  return Rational(num * (base - 1) + pi(0), den * (base - 1));
}

bool validate_perm_polynomial(const PermPolynomial& f, std::uint32_t p, unsigned k) {
  if (!is_prime(p)) throw DomainError("modulus base must be prime");
  if (k < 1) throw DomainError("level must be >= 1");
  std::uint64_t m = 1;
  for (unsigned i = 0; i < k; ++i) {
    m *= p;
    if (m > (std::uint64_t{1} << 24)) throw ResourceError("p^k exceeds the 2^24 enumeration guard");
  }
  std::vector<bool> hit(m, false);
  for (std::uint64_t n = 0; n < m; ++n) {
    const auto v = f.eval_mod(n, m);
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generators

PointSet generate_point_set(const ScrambleConfig& cfg, std::size_t n_points) {
  if (n_points < 1) throw DomainError("point count must be >= 1");
  cfg.validate();
  const std::size_t d = cfg.dims();
  std::vector<double> coords(n_points * d);
  bool unit = false;
  for (std::size_t i = 0; i < n_points; ++i) {
    const std::uint64_t n = cfg.start_index + i;
    for (std::size_t j = 0; j < d; ++j) {
      const double v = scrambled_radical_inverse(cfg.polys[j].eval(n), cfg.primes[j], cfg.perms[j]);
      unit = unit || v >= 1.0;
      coords[i * d + j] = v;
    }
  }
  PointSet ps(d, std::move(coords));
  ps.config = cfg;
  ps.requested_n = n_points;
  ps.has_unit_coordinate = unit;
  return ps;
}

std::vector<Rational> generate_exact_1d(const ScrambleConfig& cfg, std::size_t n_points) {
  cfg.validate();
  if (cfg.dims() != 1) throw DomainError("exact generation is one-dimensional");
  std::vector<Rational> out;
  out.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    out.push_back(scrambled_radical_inverse_exact(cfg.polys[0].eval(cfg.start_index + i), cfg.primes[0], cfg.perms[0]));
  return out;
}

PointSet hammersley_lift(const ScrambleConfig& cfg, std::size_t n, LiftConvention convention) {
  if (n < 2) throw DomainError("Hammersley lift needs N >= 2");
  const std::size_t count = convention == LiftConvention::classic ? n : n - 1;
  const PointSet base = generate_point_set(cfg, count);
  const std::size_t d = cfg.dims() + 1;
  std::vector<double> coords(count * d);
  const std::size_t offset = convention == LiftConvention::classic ? 0 : 1;
  for (std::size_t i = 0; i < count; ++i) {
    coords[i * d] = static_cast<double>(i + offset) / static_cast<double>(n);
    for (std::size_t j = 1; j < d; ++j) coords[i * d + j] = base(i, j - 1);
  }
  PointSet ps(d, std::move(coords));
  ps.config = cfg;
  ps.config->convention = convention;
  ps.requested_n = n;
  ps.has_unit_coordinate = base.has_unit_coordinate;
  return ps;
}

PointSet kronecker_sequence(double alpha, std::size_t n_points) {
  if (n_points < 1) throw DomainError("point count must be >= 1");
  std::vector<double> coords(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const long double v = static_cast<long double>(i + 1) * static_cast<long double>(alpha);
    coords[i] = static_cast<double>(v - std::floor(v));
  }
  PointSet ps(1, std::move(coords));
  ps.requested_n = n_points;
  return ps;
}

std::string to_string(KritzingerObjective o) { return o == KritzingerObjective::printed ? "printed" : "original"; }

KritzingerObjective kritzinger_objective_from_string(const std::string& s) {
  if (s == "printed") return KritzingerObjective::printed;
  if (s == "original") return KritzingerObjective::original;
  throw ConfigError("unknown Kritzinger objective '" + s + "'");
}

double kritzinger_objective(std::span<const double> previous, double x, KritzingerObjective objective) {
  double s = 0.0;
  for (const double k : previous) s += std::max(k, x);
  const double quad = objective == KritzingerObjective::printed ? x + 1.0 : static_cast<double>(previous.size() + 1);
  return -2.0 * s + quad * x * x - x;
}

namespace {

using BigRational = boost::multiprecision::cpp_rational;

BigRational to_big(const Rational& r) {
  using boost::multiprecision::cpp_int;
  const auto conv = [](__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    cpp_int out = static_cast<std::uint64_t>(u >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(u);
    return neg ? cpp_int(-out) : out;
  };
  return {conv(r.num()), conv(r.den())};
}

// F(x2) - F(x1) for x1 < x2, exactly. Only previous elements in [x1, x2)
// contribute individually.
BigRational objective_difference(const std::vector<Rational>& previous, const Rational& x1, const Rational& x2,
                                 KritzingerObjective objective) {
  const BigRational b1 = to_big(x1);
  const BigRational b2 = to_big(x2);
  BigRational sum = 0;
  for (const auto& k : previous) {
    if (k >= x2) continue;
    if (k < x1) {
      sum += b2 - b1;
    } else {
      sum += b2 - to_big(k);
    }
  }
  const BigRational n1(static_cast<long long>(previous.size() + 1));
  const auto poly = [&](const BigRational& x) {
    return (objective == KritzingerObjective::printed ? x + 1 : n1) * x * x - x;
  };
  return BigRational(-2) * sum + poly(b2) - poly(b1);
}

}  // namespace

std::vector<Rational> kritzinger_sequence_exact(std::size_t n_points, KritzingerObjective objective) {
  if (n_points < 1) throw DomainError("point count must be >= 1");
  std::vector<Rational> seq{Rational(1, 2)};
  std::vector<long double> sorted{0.5L};
  std::vector<long double> suffix;
  while (seq.size() < n_points) {
    const std::size_t m = seq.size() + 1;
    // suffix[i] = sum of sorted[i..]
    suffix.assign(sorted.size() + 1, 0.0L);
    for (std::size_t i = sorted.size(); i-- > 0;) suffix[i] = suffix[i + 1] + sorted[i];
    std::vector<long double> values(m);
    long double best = std::numeric_limits<long double>::infinity();
    for (std::size_t k = 1; k <= m; ++k) {
      const long double x = static_cast<long double>(2 * k - 1) / static_cast<long double>(2 * m);
      const auto lt = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
      const long double quad = objective == KritzingerObjective::printed ? x + 1.0L : static_cast<long double>(m);
      const long double f = -2.0L * (suffix[lt] + x * static_cast<long double>(lt)) + quad * x * x - x;
      values[k - 1] = f;
      best = std::min(best, f);
    }
    std::vector<std::size_t> near;
    for (std::size_t k = 0; k < m; ++k)
      if (values[k] - best <= 1e-9L) near.push_back(k + 1);
    std::size_t chosen = near.front();
    for (std::size_t idx = 1; idx < near.size(); ++idx) {
      const Rational xc(static_cast<__int128>(2 * chosen - 1), static_cast<__int128>(2 * m));
      const Rational xn(static_cast<__int128>(2 * near[idx] - 1), static_cast<__int128>(2 * m));
      // keep the smaller x unless the larger one is strictly better
      if (objective_difference(seq, xc, xn, objective) < 0) chosen = near[idx];
    }
    const Rational x(static_cast<__int128>(2 * chosen - 1), static_cast<__int128>(2 * m));
    seq.push_back(x);
    sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), static_cast<long double>(x.to_double())),
                  static_cast<long double>(2 * chosen - 1) / static_cast<long double>(2 * m));
  }
  return seq;
}

PointSet kritzinger_sequence(std::size_t n_points, KritzingerObjective objective) {
  const auto exact = kritzinger_sequence_exact(n_points, objective);
  std::vector<double> coords;
  coords.reserve(exact.size());
  for (const auto& r : exact) coords.push_back(r.to_double());
  PointSet ps(1, std::move(coords));
  ps.requested_n = n_points;
  return ps;
}

}  // namespace lowdisc
