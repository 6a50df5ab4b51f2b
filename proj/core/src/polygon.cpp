#include "gpword/polygon.hpp"

#include <utility>

namespace gpword {

bool operator==(const Point2& p, const Point2& q) { return p.x == q.x && p.y == q.y; }

FeasRegion FeasRegion::unit_square() {
  FeasRegion region;
  region.vertices_ = {{QuadExt(0), QuadExt(0)},
                      {QuadExt(1), QuadExt(0)},
                      {QuadExt(1), QuadExt(1)},
                      {QuadExt(0), QuadExt(1)}};
  return region;
}

FeasRegion FeasRegion::from_vertices(std::vector<Point2> vertices) {
  FeasRegion region;
  region.vertices_ = std::move(vertices);
  return region;
}

QuadExt FeasRegion::doubled_area() const {
  QuadExt total(0);
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = vertices_[i];
    const Point2& q = vertices_[(i + 1) % n];
    total += p.x * q.y - q.x * p.y;
  }
  return total;
}

QuadExt FeasRegion::area() const { return doubled_area() * QuadExt(Rational(1, 2)); }

bool FeasRegion::has_positive_area() const {
  if (vertices_.size() < 3) return false;
  const int sign = doubled_area().sign();
  if (sign < 0) {
    throw std::logic_error("convex region lost its counter-clockwise orientation");
  }
  return sign > 0;
}

FeasRegion FeasRegion::clipped(const HalfPlane& half_plane) const {
  if (half_plane.a.is_zero() && half_plane.b.is_zero()) {
    throw invalid_input("half-plane normal must be nonzero");
  }
  if (vertices_.empty()) return {};

  const std::size_t n = vertices_.size();
  std::vector<int> side(n);
  std::vector<QuadExt> value(n);
  for (std::size_t i = 0; i < n; ++i) {
    value[i] = half_plane.eval(vertices_[i]);
    side[i] = value[i].sign();
  }

  std::vector<Point2> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (side[i] >= 0) out.push_back(vertices_[i]);
    if ((side[i] > 0 && side[j] < 0) || (side[i] < 0 && side[j] > 0)) {
      // Edge crosses the boundary; the parameter is exact because the
      // endpoint values have strictly opposite signs.
      QuadExt t = value[i] / (value[i] - value[j]);
      out.push_back({vertices_[i].x + t * (vertices_[j].x - vertices_[i].x),
                     vertices_[i].y + t * (vertices_[j].y - vertices_[i].y)});
    }
  }

  // Drop consecutive duplicates (including across the wrap-around), which
  // appear when an original vertex lies exactly on the boundary.
  std::vector<Point2> deduped;
  for (const Point2& p : out) {
    if (deduped.empty() || !(deduped.back() == p)) deduped.push_back(p);
  }
  while (deduped.size() > 1 && deduped.front() == deduped.back()) deduped.pop_back();

  FeasRegion region;
  region.vertices_ = std::move(deduped);
  return region;
}

Point2 FeasRegion::interior_point() const {
  if (!has_positive_area()) {
    throw invalid_input("degenerate region has no interior point");
  }
  QuadExt sx(0);
  QuadExt sy(0);
  for (const Point2& p : vertices_) {
    sx += p.x;
    sy += p.y;
  }
  const QuadExt count(static_cast<long long>(vertices_.size()));
  return {sx / count, sy / count};
}

}  // namespace gpword
