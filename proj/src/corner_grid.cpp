#include "corner_grid.hpp"

#include <algorithm>

namespace lowdisc::detail {

CornerGrid::CornerGrid(const PointSet& points)
    : n_(points.size()), d_(points.dim()), rank_(points.size() * points.dim()), extent_(points.dim()),
      hi_(points.dim()), lo_(points.dim()) {
  for (std::size_t j = 0; j < d_; ++j) {
    std::vector<double> u = points.column(j);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    extent_[j] = static_cast<std::uint32_t>(u.size());
    hi_[j].resize(u.size() + 1);
    lo_[j].resize(u.size() + 1);
    for (std::size_t t = 0; t <= u.size(); ++t) {
      hi_[j][t] = t < u.size() ? u[t] : 1.0;
      lo_[j][t] = t > 0 ? u[t - 1] : 0.0;
    }
    for (std::size_t i = 0; i < n_; ++i)
      rank_[i * d_ + j] =
          static_cast<std::uint32_t>(std::lower_bound(u.begin(), u.end(), points(i, j)) - u.begin());
  }
}

std::size_t CornerGrid::count(std::span<const std::uint32_t> corner) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint32_t* r = &rank_[i * d_];
    bool inside = true;
    for (std::size_t j = 0; j < d_ && inside; ++j) inside = r[j] < corner[j];
    c += inside ? 1 : 0;
  }
  return c;
}

double CornerGrid::value(std::span<const std::uint32_t> corner, bool& closed) const {
  double vhi = 1.0;
  double vlo = 1.0;
  for (std::size_t j = 0; j < d_; ++j) {
    vhi *= hi_[j][corner[j]];
    vlo *= lo_[j][corner[j]];
  }
  const double frac = static_cast<double>(count(corner)) / static_cast<double>(n_);
  const double open_dev = vhi - frac;
  const double closed_dev = frac - vlo;
  closed = closed_dev > open_dev;
  return closed ? closed_dev : open_dev;
}

Witness CornerGrid::witness(std::span<const std::uint32_t> corner, bool closed) const {
  Witness w;
  w.closed = closed;
  w.upper.resize(d_);
  for (std::size_t j = 0; j < d_; ++j) w.upper[j] = closed ? lo_[j][corner[j]] : hi_[j][corner[j]];
  return w;
}

}  // namespace lowdisc::detail
