#pragma once

#include <vector>

#include "gpword/quadext.hpp"

namespace gpword {

struct Point2 {
  QuadExt x;
  QuadExt y;
};

bool operator==(const Point2& p, const Point2& q);

/// The closed half-plane a*x + b*y + c >= 0.
struct HalfPlane {
  QuadExt a;
  QuadExt b;
  QuadExt c;

  QuadExt eval(const Point2& p) const { return a * p.x + b * p.y + c; }
};

/// A (possibly degenerate) convex region given by its vertices in
/// counter-clockwise order, with every coordinate an exact field element.
/// Clipping keeps closed half-planes; a system of *strict* inequalities is
/// solvable inside the unit square exactly when the closed intersection has
/// positive area, which is how decide_factor uses this class.
class FeasRegion {
 public:
  FeasRegion() = default;  // empty region

  static FeasRegion unit_square();
  /// Trusted constructor for tests and internal use: vertices must be convex
  /// and counter-clockwise.
  static FeasRegion from_vertices(std::vector<Point2> vertices);

  bool is_empty() const { return vertices_.empty(); }
  const std::vector<Point2>& vertices() const { return vertices_; }

  /// Twice the signed area (shoelace); non-negative for CCW input.
  QuadExt doubled_area() const;
  QuadExt area() const;
  bool has_positive_area() const;

  /// Sutherland-Hodgman clip against one closed half-plane.  New vertices are
  /// intersections of the half-plane boundary with original edges, so
  /// coefficients never chain through repeated clips.
  FeasRegion clipped(const HalfPlane& half_plane) const;

  /// Vertex centroid; an interior point whenever the region has positive
  /// area.  Throws invalid_input on degenerate regions.
  Point2 interior_point() const;

 private:
  std::vector<Point2> vertices_;
};

}  // namespace gpword
