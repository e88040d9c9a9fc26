#pragma once

// Piecewise-linear finite elements on a length-only triangulated surface.

#include "hypcover/surface.h"

#include <Eigen/SparseCore>

#include <filesystem>
#include <vector>

namespace hypcover {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class MassKind { Consistent, Lumped };

// Stiffness K and mass B of the P1 discretization; one dof per vertex.
struct SparsePencil {
  SparseMatrix K;
  SparseMatrix B;

  int dof() const { return static_cast<int>(K.rows()); }
};

// Stiffness uses cotangent weights of the Euclidean triangle with the same
// edge lengths; mass uses the hyperbolic (angle-defect) triangle area.
// Every matrix entry is the sum of its per-triangle contributions taken in
// sorted order, so the result does not depend on face or vertex numbering
// beyond the induced relabeling.
SparsePencil assemble(const TriangulatedSurface& surface, MassKind mass = MassKind::Consistent);

struct RefinedSurface {
  TriangulatedSurface surface;
  std::vector<MeshCurve> curves;
};

// 1 -> 4 geodesic midpoint subdivision. Child 4f + c (c < 3) is the corner
// triangle at corner c of face f and child 4f + 3 is the middle triangle.
// Curves are carried along with twice as many edges.
RefinedSurface refine(const TriangulatedSurface& surface, const std::vector<MeshCurve>& curves = {});

// Refines a surface `levels` times, carrying the given curves.
RefinedSurface refineTimes(const TriangulatedSurface& surface, const std::vector<MeshCurve>& curves, int levels);

// Coordinate listing `row col value`, 0-based, 17 significant digits.
void writeCoordinateMatrix(const std::filesystem::path& path, const SparseMatrix& matrix);

} // namespace hypcover
