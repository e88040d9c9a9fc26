#pragma once

// Closed (or cut-open) surfaces made of geodesic hyperbolic triangles, given
// purely by side gluings and edge lengths.

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace hypcover {

// Oriented side of a triangle. Side k is opposite corner k and runs from
// corner (k+1)%3 to corner (k+2)%3, so the face lies to its left.
struct SideRef {
  int face = -1;
  int side = -1;

  bool valid() const { return face >= 0; }
  auto operator<=>(const SideRef&) const = default;
};

class TriangulatedSurface {
public:
  using Lengths = std::array<double, 3>;
  using Gluing = std::array<SideRef, 3>;

  TriangulatedSurface() = default;

  // Vertices are derived from the gluing: glued sides run in opposite
  // directions, and corners identified that way form one vertex. An invalid
  // SideRef marks a boundary side. Structural problems (non-involutive
  // gluing) throw InvalidInput; metric invariants are checked separately.
  static TriangulatedSurface fromGluing(std::vector<Lengths> lengths, std::vector<Gluing> gluing);

  int faceCount() const { return static_cast<int>(lengths_.size()); }
  int vertexCount() const { return vertexCount_; }
  int edgeCount() const { return (3 * faceCount() + boundarySideCount()) / 2; }
  int boundarySideCount() const { return boundarySides_; }
  bool isClosed() const { return boundarySides_ == 0; }

  const std::array<int, 3>& faceVertices(int f) const { return faces_[f]; }
  const Lengths& faceLengths(int f) const { return lengths_[f]; }
  SideRef partner(SideRef s) const { return gluing_[s.face][s.side]; }
  double sideLength(SideRef s) const { return lengths_[s.face][s.side]; }
  int sideStart(SideRef s) const { return faces_[s.face][(s.side + 1) % 3]; }
  int sideEnd(SideRef s) const { return faces_[s.face][(s.side + 2) % 3]; }

  const std::vector<Lengths>& lengths() const { return lengths_; }
  const std::vector<Gluing>& gluing() const { return gluing_; }

  int eulerCharacteristic() const { return vertexCount() - edgeCount() + faceCount(); }
  // Closed surfaces: (2 - chi)/2. Open: (2 - chi - #boundary loops)/2.
  int genus() const;
  double faceArea(int f) const;
  double totalArea() const;
  double maxEdgeLength() const;
  std::vector<double> coneAngles() const;

  // Boundary loops as chains of boundary sides (each in its face's direction).
  std::vector<std::vector<SideRef>> boundaryLoops() const;
  // Number of connected components under the side gluing.
  int componentCount() const;

  // Checks every closed-surface invariant; returns human-readable
  // violations (empty when valid).
  std::vector<std::string> checkClosedInvariants() const;
  // Throws InvalidInput carrying the first violation.
  void validateClosed() const;

private:
  std::vector<std::array<int, 3>> faces_;
  std::vector<Lengths> lengths_;
  std::vector<Gluing> gluing_;
  int vertexCount_ = 0;
  int boundarySides_ = 0;
};

// A simple closed curve made of mesh edges. Every SideRef is oriented along
// the curve; its face lies on the curve's left.
struct MeshCurve {
  std::string name;
  std::vector<SideRef> edges;
  double length = 0;
  bool separating = false;
};

// Validates that `edges` form one closed simple cycle, then fills length and
// the separating flag.
MeshCurve makeCurve(const TriangulatedSurface& surface, std::vector<SideRef> edges, std::string name);

// True when removing the curve's edges disconnects the face adjacency graph.
bool isSeparating(const TriangulatedSurface& surface, const std::vector<SideRef>& edges);

// The counterclockwise link of a vertex (the sides opposite it). Contractible,
// hence separating.
MeshCurve vertexLinkCurve(const TriangulatedSurface& surface, int vertex);

// Fenchel-Nielsen data for the genus-2 surface made of two pairs of pants
// glued cuff to cuff.
struct FenchelNielsenSpec {
  std::array<double, 3> cuffLengths{2.0, 2.0, 2.0};
  // In units of the cuff vertex spacing l_i / m.
  std::array<int, 3> twists{0, 0, 0};
  // Vertices per cuff; must be even and >= 4.
  int cuffSubdivisions = 8;
};

struct BaseSurface {
  TriangulatedSurface surface;
  // Cuff 0, the designated non-separating geodesic.
  MeshCurve gamma;
  std::array<MeshCurve, 3> cuffs;
  std::array<double, 3> appliedTwists{};
  // Segments per hexagon seam.
  std::array<int, 3> seamSubdivisions{};
};

// Each pair of pants is two right-angled hexagons, each triangulated by a fan
// from its Minkowski centroid.
BaseSurface buildSurface(const FenchelNielsenSpec& spec);

// Surface cut open along a curve. leftBoundary[i] and rightBoundary[i] were
// glued to each other before the cut; leftBoundary follows the curve.
struct CutSurface {
  TriangulatedSurface surface;
  std::vector<SideRef> leftBoundary;
  std::vector<SideRef> rightBoundary;
};

CutSurface cutAlong(const TriangulatedSurface& surface, const MeshCurve& curve);
TriangulatedSurface reglue(const CutSurface& cut);

// Same faces, lengths, gluing and vertex labels.
bool identicalCombinatorics(const TriangulatedSurface& a, const TriangulatedSurface& b);

} // namespace hypcover
