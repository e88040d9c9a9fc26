#include "hypcover/hypgeom.h"

#include "hypcover/errors.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hypcover {

namespace {

double minkowskiDot(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

std::array<double, 3> asArray(const HyperboloidPoint& p) { return {p.x0, p.x1, p.x2}; }
HyperboloidPoint asPoint(const std::array<double, 3>& x) { return {x[0], x[1], x[2]}; }

std::string describe(const TriangleLengths& t) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << t.a << ", " << t.b << ", " << t.c << ")";
  return os.str();
}

} // namespace

bool TriangleLengths::isValid() const {
  for (double l : {a, b, c}) {
    if (!std::isfinite(l) || l <= 0) return false;
  }
  const double scale = std::max({a, b, c});
  const double slack = kDegeneracyTol * scale;
  return (b + c - a) > slack && (a + c - b) > slack && (a + b - c) > slack;
}

void requireValid(const TriangleLengths& t) {
  if (!t.isValid()) throw DegenerateGeometry("degenerate triangle with lengths " + describe(t));
}

double angleFromLengths(const TriangleLengths& t, int corner) {
  requireValid(t);
  const double opp = t[corner];
  const double adj1 = t[(corner + 1) % 3];
  const double adj2 = t[(corner + 2) % 3];
  const double s = 0.5 * (t.a + t.b + t.c);
  // Half-angle form: tan(x/2)^2 = sinh(s-adj1) sinh(s-adj2) / (sinh s sinh(s-opp)).
  const double num = std::sinh(s - adj1) * std::sinh(s - adj2);
  const double den = std::sinh(s) * std::sinh(s - opp);
  return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

std::array<double, 3> anglesFromLengths(const TriangleLengths& t) {
  return {angleFromLengths(t, 0), angleFromLengths(t, 1), angleFromLengths(t, 2)};
}

double areaFromLengths(const TriangleLengths& t) {
  requireValid(t);
  const double s = 0.5 * (t.a + t.b + t.c);
  const double prod = std::tanh(0.5 * s) * std::tanh(0.5 * (s - t.a)) *
                      std::tanh(0.5 * (s - t.b)) * std::tanh(0.5 * (s - t.c));
  const double area = 4.0 * std::atan(std::sqrt(prod));
  if (!(area > 0) || !std::isfinite(area)) {
    throw DegenerateGeometry("non-positive angle defect for triangle " + describe(t));
  }
  return area;
}

double hexagonSeamLength(double l1, double l2, double l3) {
  if (!(l1 > 0 && l2 > 0 && l3 > 0) || !std::isfinite(l1) || !std::isfinite(l2) || !std::isfinite(l3)) {
    throw InvalidInput("hexagon half-cuff lengths must be positive and finite");
  }
  const double h1 = 0.5 * l1, h2 = 0.5 * l2, h3 = 0.5 * l3;
  const double coshSeam = (std::cosh(h3) + std::cosh(h1) * std::cosh(h2)) / (std::sinh(h1) * std::sinh(h2));
  const double seam = std::acosh(coshSeam);
  if (!std::isfinite(seam)) throw DegenerateGeometry("hexagon seam length overflowed");
  return seam;
}

bool HyperboloidPoint::onHyperboloid(double tol) const {
  return x0 > 0 && std::abs(minkowskiNorm() - 1.0) <= tol * std::max(1.0, x0 * x0);
}

double coshDistance(const HyperboloidPoint& p, const HyperboloidPoint& q) {
  return -minkowskiDot(asArray(p), asArray(q));
}

double distance(const HyperboloidPoint& p, const HyperboloidPoint& q) {
  const std::array<double, 3> d{p.x0 - q.x0, p.x1 - q.x1, p.x2 - q.x2};
  const double chord2 = std::max(0.0, minkowskiDot(d, d));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

HyperboloidPoint renormalize(const HyperboloidPoint& p) {
  const double norm = p.minkowskiNorm();
  if (!(norm > 0) || p.x0 <= 0) throw InvalidInput("point is not timelike future-directed");
  const double s = 1.0 / std::sqrt(norm);
  return {p.x0 * s, p.x1 * s, p.x2 * s};
}

HyperboloidPoint geodesicMidpoint(const HyperboloidPoint& p, const HyperboloidPoint& q) {
  if (p.x0 == q.x0 && p.x1 == q.x1 && p.x2 == q.x2) {
    throw InvalidInput("geodesic midpoint of coincident points");
  }
  return renormalize({p.x0 + q.x0, p.x1 + q.x1, p.x2 + q.x2});
}

std::array<HyperboloidPoint, 3> placeTriangle(const TriangleLengths& t) {
  const double alpha0 = angleFromLengths(t, 0);
  // Side 2 joins corners 0 and 1, side 1 joins corners 2 and 0.
  const HyperboloidPoint v0{1.0, 0.0, 0.0};
  const HyperboloidPoint v1{std::cosh(t.c), std::sinh(t.c), 0.0};
  const HyperboloidPoint v2{std::cosh(t.b), std::sinh(t.b) * std::cos(alpha0), std::sinh(t.b) * std::sin(alpha0)};
  return {v0, v1, v2};
}

Turtle::Turtle() : pos_{1.0, 0.0, 0.0}, fwd_{0.0, 1.0, 0.0}, left_{0.0, 0.0, 1.0} {}

void Turtle::forward(double d) {
  const double ch = std::cosh(d), sh = std::sinh(d);
  const auto p = asArray(pos_);
  std::array<double, 3> np{}, nf{};
  for (int i = 0; i < 3; ++i) {
    np[i] = ch * p[i] + sh * fwd_[i];
    nf[i] = sh * p[i] + ch * fwd_[i];
  }
  pos_ = renormalize(asPoint(np));
  fwd_ = nf;
  reorthonormalize();
}

void Turtle::turnLeft(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  std::array<double, 3> nf{}, nl{};
  for (int i = 0; i < 3; ++i) {
    nf[i] = c * fwd_[i] + s * left_[i];
    nl[i] = -s * fwd_[i] + c * left_[i];
  }
  fwd_ = nf;
  left_ = nl;
  reorthonormalize();
}

// Keeps (pos, fwd, left) Minkowski-orthonormal so rounding does not compound
// along long walks.
void Turtle::reorthonormalize() {
  const auto p = asArray(pos_);
  auto project = [&](std::array<double, 3> v, const std::array<double, 3>* other) {
    // <p,p> = -1, so removing the p-component adds <v,p> p.
    const double vp = minkowskiDot(v, p);
    for (int i = 0; i < 3; ++i) v[i] += vp * p[i];
    if (other) {
      const double vo = minkowskiDot(v, *other);
      for (int i = 0; i < 3; ++i) v[i] -= vo * (*other)[i];
    }
    const double norm = std::sqrt(minkowskiDot(v, v));
    for (double& x : v) x /= norm;
    return v;
  };
  fwd_ = project(fwd_, nullptr);
  left_ = project(left_, &fwd_);
}

HyperboloidPoint Turtle::pointAhead(double d) const {
  const double ch = std::cosh(d), sh = std::sinh(d);
  return renormalize({ch * pos_.x0 + sh * fwd_[0], ch * pos_.x1 + sh * fwd_[1], ch * pos_.x2 + sh * fwd_[2]});
}

} // namespace hypcover
