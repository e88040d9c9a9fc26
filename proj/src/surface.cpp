#include "hypcover/surface.h"

#include "hypcover/errors.h"
#include "hypcover/hypgeom.h"
#include "union_find.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace hypcover {

using detail::UnionFind;

TriangulatedSurface TriangulatedSurface::fromGluing(std::vector<Lengths> lengths, std::vector<Gluing> gluing) {
  if (lengths.size() != gluing.size()) throw InvalidInput("lengths and gluing disagree on the face count");
  const int faceCount = static_cast<int>(lengths.size());

  TriangulatedSurface s;
  s.lengths_ = std::move(lengths);
  s.gluing_ = std::move(gluing);

  UnionFind corners(3 * faceCount);
  for (int f = 0; f < faceCount; ++f) {
    for (int k = 0; k < 3; ++k) {
      const SideRef here{f, k};
      const SideRef there = s.gluing_[f][k];
      if (!there.valid()) {
        ++s.boundarySides_;
        continue;
      }
      if (there.face >= faceCount || there.side < 0 || there.side > 2) {
        throw InvalidInput("gluing references a side outside the surface");
      }
      if (there == here || s.gluing_[there.face][there.side] != here) {
        std::ostringstream os;
        os << "gluing is not a fixed-point-free involution at face " << f << " side " << k;
        throw InvalidInput(os.str());
      }
      // Glued sides run in opposite directions.
      corners.unite(3 * f + (k + 1) % 3, 3 * there.face + (there.side + 2) % 3);
      corners.unite(3 * f + (k + 2) % 3, 3 * there.face + (there.side + 1) % 3);
    }
  }

  std::unordered_map<int, int> label;
  s.faces_.resize(faceCount);
  for (int f = 0; f < faceCount; ++f) {
    for (int c = 0; c < 3; ++c) {
      const int root = corners.find(3 * f + c);
      auto [it, inserted] = label.try_emplace(root, static_cast<int>(label.size()));
      s.faces_[f][c] = it->second;
    }
  }
  s.vertexCount_ = static_cast<int>(label.size());
  return s;
}

int TriangulatedSurface::genus() const {
  const int loops = static_cast<int>(boundaryLoops().size());
  return (2 - eulerCharacteristic() - loops) / 2;
}

double TriangulatedSurface::faceArea(int f) const {
  return areaFromLengths(TriangleLengths::fromArray(lengths_[f]));
}

double TriangulatedSurface::totalArea() const {
  double total = 0;
  for (int f = 0; f < faceCount(); ++f) total += faceArea(f);
  return total;
}

double TriangulatedSurface::maxEdgeLength() const {
  double longest = 0;
  for (const auto& l : lengths_) longest = std::max({longest, l[0], l[1], l[2]});
  return longest;
}

std::vector<double> TriangulatedSurface::coneAngles() const {
  std::vector<double> cone(vertexCount_, 0.0);
  for (int f = 0; f < faceCount(); ++f) {
    const auto angles = anglesFromLengths(TriangleLengths::fromArray(lengths_[f]));
    for (int c = 0; c < 3; ++c) cone[faces_[f][c]] += angles[c];
  }
  return cone;
}

std::vector<std::vector<SideRef>> TriangulatedSurface::boundaryLoops() const {
  std::map<int, SideRef> startingAt;
  for (int f = 0; f < faceCount(); ++f) {
    for (int k = 0; k < 3; ++k) {
      if (!gluing_[f][k].valid()) startingAt.emplace(sideStart({f, k}), SideRef{f, k});
    }
  }
  std::vector<std::vector<SideRef>> loops;
  std::set<SideRef> used;
  for (const auto& [start, first] : startingAt) {
    if (used.count(first)) continue;
    std::vector<SideRef> loop;
    SideRef cur = first;
    while (!used.count(cur)) {
      used.insert(cur);
      loop.push_back(cur);
      auto next = startingAt.find(sideEnd(cur));
      if (next == startingAt.end()) break;
      cur = next->second;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

int TriangulatedSurface::componentCount() const {
  UnionFind uf(faceCount());
  for (int f = 0; f < faceCount(); ++f) {
    for (const auto& g : gluing_[f]) {
      if (g.valid()) uf.unite(f, g.face);
    }
  }
  return uf.componentCount();
}

std::vector<std::string> TriangulatedSurface::checkClosedInvariants() const {
  std::vector<std::string> problems;
  auto report = [&](auto&&... parts) {
    std::ostringstream os;
    os.precision(17);
    (os << ... << parts);
    problems.push_back(os.str());
  };

  if (!isClosed()) report(boundarySides_, " unglued sides; surface is not closed");
  for (int f = 0; f < faceCount(); ++f) {
    if (!TriangleLengths::fromArray(lengths_[f]).isValid()) report("face ", f, " is degenerate");
    for (int k = 0; k < 3; ++k) {
      const SideRef p = gluing_[f][k];
      if (p.valid() && std::abs(lengths_[f][k] - lengths_[p.face][p.side]) > 1e-10) {
        report("glued sides (", f, ",", k, ") and (", p.face, ",", p.side, ") differ in length");
      }
    }
  }
  if (!problems.empty()) return problems;

  const int chi = eulerCharacteristic();
  if (chi % 2 != 0) report("odd Euler characteristic ", chi);
  const int g = (2 - chi) / 2;
  if (g < 2) report("genus ", g, " cannot carry a hyperbolic metric");
  if (componentCount() != 1) report("surface is disconnected");

  const auto cone = coneAngles();
  for (int v = 0; v < vertexCount_; ++v) {
    if (std::abs(cone[v] - 2 * std::numbers::pi) > 1e-8) report("vertex ", v, " has cone angle ", cone[v]);
  }
  const double area = totalArea();
  const double expected = 2 * std::numbers::pi * (2 * g - 2);
  if (std::abs(area - expected) > 1e-8) report("total area ", area, " differs from Gauss-Bonnet value ", expected);
  return problems;
}

void TriangulatedSurface::validateClosed() const {
  const auto problems = checkClosedInvariants();
  if (!problems.empty()) throw InvalidInput("invalid closed surface: " + problems.front());
}

bool isSeparating(const TriangulatedSurface& surface, const std::vector<SideRef>& edges) {
  std::set<SideRef> cut;
  for (const SideRef& e : edges) {
    cut.insert(e);
    cut.insert(surface.partner(e));
  }
  UnionFind uf(surface.faceCount());
  for (int f = 0; f < surface.faceCount(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const SideRef p = surface.partner({f, k});
      if (p.valid() && !cut.count({f, k})) uf.unite(f, p.face);
    }
  }
  return uf.componentCount() > surface.componentCount();
}

MeshCurve makeCurve(const TriangulatedSurface& surface, std::vector<SideRef> edges, std::string name) {
  if (edges.size() < 2) throw InvalidInput("curve '" + name + "' needs at least two edges");
  std::set<int> seen;
  std::set<SideRef> sides;
  double length = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const SideRef e = edges[i];
    if (e.face < 0 || e.face >= surface.faceCount() || e.side < 0 || e.side > 2) {
      throw InvalidInput("curve '" + name + "' references a side outside the surface");
    }
    const SideRef next = edges[(i + 1) % edges.size()];
    if (surface.sideEnd(e) != surface.sideStart(next)) {
      throw InvalidInput("curve '" + name + "' is not a closed edge chain");
    }
    if (!seen.insert(surface.sideStart(e)).second) {
      throw InvalidInput("curve '" + name + "' revisits a vertex (not simple)");
    }
    if (sides.count(surface.partner(e))) throw InvalidInput("curve '" + name + "' backtracks along an edge");
    sides.insert(e);
    length += surface.sideLength(e);
  }
  MeshCurve curve;
  curve.name = std::move(name);
  curve.separating = isSeparating(surface, edges);
  curve.edges = std::move(edges);
  curve.length = length;
  return curve;
}

MeshCurve vertexLinkCurve(const TriangulatedSurface& surface, int vertex) {
  std::map<int, SideRef> byStart;
  for (int f = 0; f < surface.faceCount(); ++f) {
    for (int c = 0; c < 3; ++c) {
      if (surface.faceVertices(f)[c] == vertex) byStart.emplace(surface.sideStart({f, c}), SideRef{f, c});
    }
  }
  if (byStart.empty()) throw InvalidInput("vertex has no incident faces");
  std::vector<SideRef> chain;
  SideRef cur = byStart.begin()->second;
  do {
    chain.push_back(cur);
    auto it = byStart.find(surface.sideEnd(cur));
    if (it == byStart.end()) throw InvalidInput("vertex link is not a closed chain");
    cur = it->second;
  } while (cur != chain.front() && chain.size() <= byStart.size());
  return makeCurve(surface, std::move(chain), "link-" + std::to_string(vertex));
}

namespace {

// Edge identity used while assembling the base surface: every key is carried
// by exactly two triangle sides.
enum class EdgeKind { Cuff, Seam, Spoke };
using EdgeKey = std::tuple<EdgeKind, int, int, int>;

std::string cuffName(int i) { return "cuff " + std::to_string(i + 1); }

} // namespace

BaseSurface buildSurface(const FenchelNielsenSpec& spec) {
  const int m = spec.cuffSubdivisions;
  if (m < 4 || m % 2 != 0) throw InvalidInput("cuff subdivision count must be even and at least 4");
  for (int i = 0; i < 3; ++i) {
    const double l = spec.cuffLengths[i];
    if (!(l > 0) || !std::isfinite(l)) throw InvalidInput(cuffName(i) + " must have positive finite length");
  }

  const auto& L = spec.cuffLengths;
  std::array<double, 3> seams{};
  for (int j = 0; j < 3; ++j) {
    // Seam j joins half-cuff j to half-cuff j+1 and is opposite half-cuff j+2.
    try {
      seams[j] = hexagonSeamLength(L[j], L[(j + 1) % 3], L[(j + 2) % 3]);
    } catch (const Error&) {
      throw DegenerateGeometry("degenerate hexagon: seam between " + cuffName(j) + " and " +
                               cuffName((j + 1) % 3) + " is not finite");
    }
    if (!std::isfinite(seams[j]) || seams[j] <= 0) {
      throw DegenerateGeometry("degenerate hexagon: seam between " + cuffName(j) + " and " +
                               cuffName((j + 1) % 3) + " is not finite");
    }
  }

  const double spacing = (L[0] + L[1] + L[2]) / (3.0 * m);
  std::array<int, 3> seamSegs{};
  for (int j = 0; j < 3; ++j) seamSegs[j] = std::max(1, static_cast<int>(std::lround(seams[j] / spacing)));

  // Front hexagon boundary, counterclockwise, one entry per boundary segment.
  struct Segment {
    EdgeKind kind;
    int index;     // cuff or seam index
    int position;  // local segment index along that side
    double length;
  };
  std::vector<Segment> segments;
  std::vector<HyperboloidPoint> points;
  Turtle turtle;
  for (int j = 0; j < 3; ++j) {
    const double step = L[j] / m;
    for (int e = 0; e < m / 2; ++e) {
      points.push_back(turtle.position());
      segments.push_back({EdgeKind::Cuff, j, e, step});
      turtle.forward(step);
    }
    turtle.turnLeft(0.5 * std::numbers::pi);
    const double seamStep = seams[j] / seamSegs[j];
    for (int k = 0; k < seamSegs[j]; ++k) {
      points.push_back(turtle.position());
      segments.push_back({EdgeKind::Seam, j, k, seamStep});
      turtle.forward(seamStep);
    }
    turtle.turnLeft(0.5 * std::numbers::pi);
  }
  if (distance(turtle.position(), points.front()) > 1e-9) {
    throw DegenerateGeometry("right-angled hexagon with cuffs " + std::to_string(L[0]) + ", " +
                             std::to_string(L[1]) + ", " + std::to_string(L[2]) + " does not close");
  }

  HyperboloidPoint centroid{0, 0, 0};
  {
    // Minkowski centroid of the six corners (start of each cuff and seam run).
    for (std::size_t q = 0; q < segments.size(); ++q) {
      if (segments[q].position == 0) {
        centroid.x0 += points[q].x0;
        centroid.x1 += points[q].x1;
        centroid.x2 += points[q].x2;
      }
    }
    centroid = renormalize(centroid);
  }

  const int K = static_cast<int>(segments.size());
  std::vector<double> spoke(K);
  for (int q = 0; q < K; ++q) spoke[q] = distance(centroid, points[q]);

  std::vector<TriangulatedSurface::Lengths> lengths;
  std::map<EdgeKey, std::vector<SideRef>> edges;
  std::vector<int> faceSegment;
  auto addFace = [&](const TriangulatedSurface::Lengths& l, const std::array<EdgeKey, 3>& keys, int seg) {
    const int f = static_cast<int>(lengths.size());
    lengths.push_back(l);
    faceSegment.push_back(seg);
    for (int k = 0; k < 3; ++k) edges[keys[k]].push_back({f, k});
  };

  for (int pants = 0; pants < 2; ++pants) {
    for (int back = 0; back < 2; ++back) {
      const int hex = 2 * pants + back;
      for (int q = 0; q < K; ++q) {
        const Segment& seg = segments[q];
        EdgeKey boundaryKey;
        if (seg.kind == EdgeKind::Cuff) {
          // Local cuff segment index on this pants, counted in the pants'
          // boundary direction: front covers [0, m/2), back covers [m/2, m).
          const int local = back ? m - 1 - seg.position : seg.position;
          int global = local;
          if (pants == 1) {
            // Reversed gluing with integer twist: local position p on the
            // second pants meets position (twist - p) on the first.
            const int tw = ((spec.twists[seg.index] % m) + m) % m;
            global = (((tw - local - 1) % m) + m) % m;
          }
          boundaryKey = {EdgeKind::Cuff, seg.index, global, 0};
        } else {
          boundaryKey = {EdgeKind::Seam, pants, seg.index, seg.position};
        }
        const EdgeKey spokeHere{EdgeKind::Spoke, hex, q, 0};
        const EdgeKey spokeNext{EdgeKind::Spoke, hex, (q + 1) % K, 0};
        if (!back) {
          // (centre, p_q, p_q+1)
          addFace({seg.length, spoke[(q + 1) % K], spoke[q]}, {boundaryKey, spokeNext, spokeHere}, q);
        } else {
          // Mirror image: (centre, p_q+1, p_q)
          addFace({seg.length, spoke[q], spoke[(q + 1) % K]}, {boundaryKey, spokeHere, spokeNext}, q);
        }
      }
    }
  }

  for (int f = 0; f < static_cast<int>(lengths.size()); ++f) {
    if (!TriangleLengths::fromArray(lengths[f]).isValid()) {
      const Segment& seg = segments[faceSegment[f]];
      const std::string where = seg.kind == EdgeKind::Cuff
                                    ? cuffName(seg.index)
                                    : cuffName(seg.index) + " / " + cuffName((seg.index + 1) % 3);
      throw DegenerateGeometry("numerically degenerate triangle next to " + where);
    }
  }

  std::vector<TriangulatedSurface::Gluing> gluing(lengths.size());
  for (const auto& [key, sides] : edges) {
    if (sides.size() != 2) throw InvalidInput("internal error: edge not shared by exactly two sides");
    gluing[sides[0].face][sides[0].side] = sides[1];
    gluing[sides[1].face][sides[1].side] = sides[0];
  }

  BaseSurface base;
  base.surface = TriangulatedSurface::fromGluing(std::move(lengths), std::move(gluing));
  base.seamSubdivisions = seamSegs;
  for (int i = 0; i < 3; ++i) {
    const int tw = ((spec.twists[i] % m) + m) % m;
    base.appliedTwists[i] = tw * L[i] / m;
  }

  // Cuff curves, oriented along the first pants' boundary (faces of the first
  // pants on the left).
  int offset = 0;
  for (int j = 0; j < 3; ++j) {
    std::vector<SideRef> cuff;
    for (int e = 0; e < m / 2; ++e) cuff.push_back({offset + e, 0});
    for (int e = m / 2 - 1; e >= 0; --e) cuff.push_back({K + offset + e, 0});
    base.cuffs[j] = makeCurve(base.surface, std::move(cuff), "cuff" + std::to_string(j + 1));
    offset += m / 2 + seamSegs[j];
  }
  base.gamma = base.cuffs[0];
  base.gamma.name = "gamma";
  return base;
}

CutSurface cutAlong(const TriangulatedSurface& surface, const MeshCurve& curve) {
  if (curve.edges.empty()) throw InvalidInput("cannot cut along an empty curve");
  for (const SideRef& e : curve.edges) {
    if (e.face < 0 || e.face >= surface.faceCount() || !surface.partner(e).valid()) {
      throw InvalidInput("curve '" + curve.name + "' is not made of interior mesh edges");
    }
  }
  if (isSeparating(surface, curve.edges)) {
    throw InvalidInput("curve '" + curve.name + "' is separating; cutting would disconnect the surface");
  }
  auto gluing = surface.gluing();
  auto lengths = surface.lengths();
  CutSurface cut;
  for (const SideRef& e : curve.edges) {
    const SideRef p = surface.partner(e);
    cut.leftBoundary.push_back(e);
    cut.rightBoundary.push_back(p);
    gluing[e.face][e.side] = {};
    gluing[p.face][p.side] = {};
  }
  cut.surface = TriangulatedSurface::fromGluing(std::move(lengths), std::move(gluing));
  return cut;
}

TriangulatedSurface reglue(const CutSurface& cut) {
  auto gluing = cut.surface.gluing();
  auto lengths = cut.surface.lengths();
  for (std::size_t i = 0; i < cut.leftBoundary.size(); ++i) {
    const SideRef a = cut.leftBoundary[i], b = cut.rightBoundary[i];
    gluing[a.face][a.side] = b;
    gluing[b.face][b.side] = a;
  }
  return TriangulatedSurface::fromGluing(std::move(lengths), std::move(gluing));
}

bool identicalCombinatorics(const TriangulatedSurface& a, const TriangulatedSurface& b) {
  if (a.faceCount() != b.faceCount() || a.vertexCount() != b.vertexCount()) return false;
  for (int f = 0; f < a.faceCount(); ++f) {
    if (a.gluing()[f] != b.gluing()[f] || a.lengths()[f] != b.lengths()[f] ||
        a.faceVertices(f) != b.faceVertices(f)) {
      return false;
    }
  }
  return true;
}

} // namespace hypcover
