#pragma once

// Scrambled van der Corput / Halton generators, Hammersley lifts and the
// one-dimensional comparison sequences (golden-ratio Kronecker, Kritzinger).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lowdisc/rational.hpp"

namespace lowdisc {

/// Bijection of the digit set {0, ..., base-1}.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ConfigError unless `map` is a bijection on {0, ..., map.size()-1}.
  explicit Permutation(std::vector<std::uint32_t> map);

  static Permutation identity(std::uint32_t base);

  [[nodiscard]] std::uint32_t base() const { return static_cast<std::uint32_t>(map_.size()); }
  [[nodiscard]] std::uint32_t operator()(std::uint32_t digit) const { return map_[digit]; }
  [[nodiscard]] std::span<const std::uint32_t> map() const { return map_; }
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] bool fixes_zero() const { return !map_.empty() && map_[0] == 0; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> map_;
};

/// Integer polynomial f(n) = sum_i coeffs[i] * n^i used as an index map.
struct PermPolynomial {
  std::vector<std::int64_t> coeffs{0, 1};

  static PermPolynomial affine(std::int64_t slope, std::int64_t offset = 0) { return {{offset, slope}}; }

  /// f(n) mod m in [0, m).
  [[nodiscard]] std::uint64_t eval_mod(std::uint64_t n, std::uint64_t m) const;
  /// f(n) as a non-negative integer; throws ConfigError on negative values or overflow.
  [[nodiscard]] std::uint64_t eval(std::uint64_t n) const;
  /// The slope a when f(n) = a*n, otherwise nullopt.
  [[nodiscard]] std::optional<std::int64_t> pure_shift() const;

  friend bool operator==(const PermPolynomial&, const PermPolynomial&) = default;
};

/// Where the lifted coordinate of a Hammersley set starts.
///  - paper:   (j/N, x_{j-1}) for j = 1, ..., N-1   (N-1 points)
///  - classic: (j/N, x_j)     for j = 0, ..., N-1   (N points)
/// x_j is the j-th generated point (0-based) of the underlying sequence.
enum class LiftConvention { paper, classic };

std::string to_string(LiftConvention c);
LiftConvention lift_convention_from_string(const std::string& s);

struct ScrambleConfig {
  std::vector<std::uint32_t> primes;
  std::vector<PermPolynomial> polys;
  std::vector<Permutation> perms;
  std::uint64_t start_index = 1;
  LiftConvention convention = LiftConvention::paper;

  [[nodiscard]] std::size_t dims() const { return primes.size(); }

  /// Affine index maps a_i * n with the given digit permutations.
  static ScrambleConfig from_shifts(std::vector<std::uint32_t> primes, const std::vector<std::int64_t>& shifts,
                                    std::vector<Permutation> perms);
  /// Plain Halton (or van der Corput) sequence in the given bases.
  static ScrambleConfig plain(std::vector<std::uint32_t> primes);

  /// Throws ConfigError if any documented invariant is violated.
  void validate() const;

  friend bool operator==(const ScrambleConfig&, const ScrambleConfig&) = default;
};

/// N points in [0,1)^d, stored row-major.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> coords);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  [[nodiscard]] bool empty() const { return size() == 0; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return coords_[i * dim_ + j]; }
  [[nodiscard]] std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
  }
  [[nodiscard]] std::span<const double> coords() const { return coords_; }
  /// Column j as a vector.
  [[nodiscard]] std::vector<double> column(std::size_t j) const;

  /// Generator configuration and requested count, when produced by this library.
  std::optional<ScrambleConfig> config;
  std::size_t requested_n = 0;
  /// Set when a coordinate equals exactly 1.0 (index 0 with pi(0) = base-1).
  bool has_unit_coordinate = false;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

bool is_prime(std::uint64_t n);
/// The first `count` primes.
std::vector<std::uint32_t> first_primes(std::size_t count);

/// Radical inverse sum_j e_j b^{-j-1} of n = sum_j e_j b^j.
double radical_inverse(std::uint64_t n, std::uint32_t base);
Rational radical_inverse_exact(std::uint64_t n, std::uint32_t base);

/// Scrambled radical inverse sum_j pi(e_j) b^{-j-1}, including the geometric
/// tail pi(0) b^{-L} / (b-1) contributed by the zero digits above the L
/// significant digits of n. Equals radical_inverse for the identity.
double scrambled_radical_inverse(std::uint64_t n, std::uint32_t base, const Permutation& pi);
Rational scrambled_radical_inverse_exact(std::uint64_t n, std::uint32_t base, const Permutation& pi);

/// True iff f permutes Z / p^k Z, by enumeration. Throws ResourceError when
/// p^k exceeds 2^24.
bool validate_perm_polynomial(const PermPolynomial& f, std::uint32_t p, unsigned k);

/// Points n = start_index, ..., start_index + N - 1 of the scrambled Halton
/// subsequence (phi_{p_1,pi_1}(f_1(n)), ..., phi_{p_d,pi_d}(f_d(n))).
PointSet generate_point_set(const ScrambleConfig& cfg, std::size_t n_points);

/// Exact coordinates of a one-dimensional configuration.
std::vector<Rational> generate_exact_1d(const ScrambleConfig& cfg, std::size_t n_points);

/// Lift a (d-1)-dimensional configuration to a d-dimensional Hammersley set.
PointSet hammersley_lift(const ScrambleConfig& cfg, std::size_t n, LiftConvention convention);

/// Fractional parts {n alpha} for n = 1, ..., N. Rational alpha is accepted
/// (the sequence then cycles).
PointSet kronecker_sequence(double alpha, std::size_t n_points);
inline constexpr double kGoldenRatio = 1.6180339887498948482;

/// Quadratic term of the Kritzinger objective for the (n+1)-th element:
///  - printed:  (x+1) x^2, as the construction is usually quoted
///  - original: (n+1) x^2, whose continuous minimiser always lies on the
///    grid (2k-1)/(2(n+1)) (sequence 1/2, 1/4, 5/6, ...)
enum class KritzingerObjective { printed, original };

std::string to_string(KritzingerObjective o);
KritzingerObjective kritzinger_objective_from_string(const std::string& s);

/// First N elements of the Kritzinger sequence, exactly. Element n is
/// (2k-1)/(2n) for some k (the minimum is taken over that grid); ties in the
/// greedy objective pick the smallest x.
std::vector<Rational> kritzinger_sequence_exact(std::size_t n_points,
                                                KritzingerObjective objective = KritzingerObjective::printed);
PointSet kritzinger_sequence(std::size_t n_points, KritzingerObjective objective = KritzingerObjective::printed);

/// The Kritzinger objective -2 sum_k max(K_k, x) + q x^2 - x, q per `objective`.
double kritzinger_objective(std::span<const double> previous, double x,
                            KritzingerObjective objective = KritzingerObjective::printed);

}  // namespace lowdisc
