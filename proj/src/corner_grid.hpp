#pragma once

// Rank-space view of a point set shared by the exact and heuristic engines.
//
// In dimension j the distinct coordinates u_j[0] < ... < u_j[M_j - 1] get
// ranks 0..M_j-1. A corner index c_j in [0, M_j] counts the points with
// rank < c_j. Its "open" upper value is hi_j[c_j] = u_j[c_j] (1.0 for
// c_j = M_j) and its "closed" value is lo_j[c_j] = u_j[c_j - 1] (0 for
// c_j = 0), so that
//   open box  [0, hi(c))  holds count(c) points,
//   closed box [0, lo(c)] holds count(c) points.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lowdisc/discrepancy.hpp"
#include "lowdisc/sequence.hpp"

namespace lowdisc::detail {

class CornerGrid {
 public:
  explicit CornerGrid(const PointSet& points);

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t d() const { return d_; }
  [[nodiscard]] std::uint32_t rank(std::size_t i, std::size_t j) const { return rank_[i * d_ + j]; }
  [[nodiscard]] std::uint32_t extent(std::size_t j) const { return extent_[j]; }
  [[nodiscard]] double hi(std::size_t j, std::uint32_t c) const { return hi_[j][c]; }
  [[nodiscard]] double lo(std::size_t j, std::uint32_t c) const { return lo_[j][c]; }

  [[nodiscard]] std::size_t count(std::span<const std::uint32_t> corner) const;
  /// max(open deviation, closed deviation) at the corner; reports which side won.
  [[nodiscard]] double value(std::span<const std::uint32_t> corner, bool& closed) const;
  [[nodiscard]] Witness witness(std::span<const std::uint32_t> corner, bool closed) const;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint32_t> extent_;
  std::vector<std::vector<double>> hi_;
  std::vector<std::vector<double>> lo_;
};

}  // namespace lowdisc::detail
