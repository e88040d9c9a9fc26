#pragma once

// Hyperbolic trigonometry for geodesic triangles and right-angled hexagons,
// plus point arithmetic in the hyperboloid model
//   H = { x : x0^2 - x1^2 - x2^2 = 1, x0 > 0 }.
// Surfaces never carry global coordinates; hyperboloid points only live in
// per-triangle or per-hexagon charts.

#include <array>

namespace hypcover {

// Relative tolerance used to reject degenerate triangles.
inline constexpr double kDegeneracyTol = 1e-12;

// Edge lengths of a geodesic triangle. Side k is opposite corner k.
struct TriangleLengths {
  double a = 0, b = 0, c = 0;

  double operator[](int k) const { return k == 0 ? a : (k == 1 ? b : c); }
  static TriangleLengths fromArray(const std::array<double, 3>& l) { return {l[0], l[1], l[2]}; }

  // Positive, finite and strictly inside the triangle inequality (relative tol).
  bool isValid() const;
};

// Throws DegenerateGeometry if !t.isValid().
void requireValid(const TriangleLengths& t);

// Interior angle at `corner`, i.e. between the two sides adjacent to it.
double angleFromLengths(const TriangleLengths& t, int corner);
std::array<double, 3> anglesFromLengths(const TriangleLengths& t);

// Area = angle defect, evaluated through the hyperbolic l'Huilier formula so
// that tiny triangles keep full relative precision.
double areaFromLengths(const TriangleLengths& t);

// Seam of the right-angled hexagon whose alternate sides are l1/2, l2/2, l3/2:
// the side joining the l1/2 and l2/2 sides (opposite the l3/2 side).
double hexagonSeamLength(double l1, double l2, double l3);

struct HyperboloidPoint {
  double x0 = 1, x1 = 0, x2 = 0;

  // x0^2 - x1^2 - x2^2
  double minkowskiNorm() const { return x0 * x0 - x1 * x1 - x2 * x2; }
  bool onHyperboloid(double tol = 1e-12) const;
};

// -<p,q> in the (-,+,+) form, equal to cosh(dist(p, q)).
double coshDistance(const HyperboloidPoint& p, const HyperboloidPoint& q);

// Stable for nearby points: uses 2 asinh(|p - q| / 2).
double distance(const HyperboloidPoint& p, const HyperboloidPoint& q);

HyperboloidPoint geodesicMidpoint(const HyperboloidPoint& p, const HyperboloidPoint& q);

// Projects back onto the sheet by Minkowski rescaling.
HyperboloidPoint renormalize(const HyperboloidPoint& p);

// Places a triangle in a chart: corner 0 at the origin (1,0,0), corner 1 on
// the positive x1 axis, corner 2 in the upper half (counterclockwise order).
std::array<HyperboloidPoint, 3> placeTriangle(const TriangleLengths& t);

// Position plus orthonormal tangent frame (forward, left) on the hyperboloid.
// Used to trace polygons side by side.
class Turtle {
public:
  Turtle();

  void forward(double distance);
  // Counterclockwise rotation of the heading by `angle`.
  void turnLeft(double angle);

  const HyperboloidPoint& position() const { return pos_; }
  HyperboloidPoint pointAhead(double distance) const;
  // Unit tangent as a Minkowski vector.
  std::array<double, 3> heading() const { return fwd_; }

private:
  void reorthonormalize();

  HyperboloidPoint pos_;
  std::array<double, 3> fwd_;
  std::array<double, 3> left_;
};

} // namespace hypcover
