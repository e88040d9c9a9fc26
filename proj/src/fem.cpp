#include "hypcover/fem.h"

#include "hypcover/errors.h"
#include "hypcover/hypgeom.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <tuple>

namespace hypcover {

namespace {

struct Entry {
  int row;
  int col;
  double value;
};

// Sums duplicate entries in ascending value order.
SparseMatrix canonicalSum(int size, std::vector<Entry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.row, a.col, a.value) < std::tie(b.row, b.col, b.value);
  });
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    double sum = 0;
    while (j < entries.size() && entries[j].row == entries[i].row && entries[j].col == entries[i].col) {
      sum += entries[j].value;
      ++j;
    }
    triplets.emplace_back(entries[i].row, entries[i].col, sum);
    i = j;
  }
  SparseMatrix m(size, size);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

// Area of the Euclidean triangle with the given side lengths (Kahan's form).
double euclideanArea(const TriangulatedSurface::Lengths& l) {
  std::array<double, 3> s = l;
  std::sort(s.begin(), s.end(), std::greater<>());
  const double a = s[0], b = s[1], c = s[2];
  const double prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  if (!(prod > 0)) throw DegenerateGeometry("degenerate Euclidean comparison triangle");
  return 0.25 * std::sqrt(prod);
}

} // namespace

SparsePencil assemble(const TriangulatedSurface& surface, MassKind mass) {
  const int nv = surface.vertexCount();
  std::vector<Entry> stiff, massEntries;
  stiff.reserve(9 * static_cast<std::size_t>(surface.faceCount()));
  massEntries.reserve(9 * static_cast<std::size_t>(surface.faceCount()));

  for (int f = 0; f < surface.faceCount(); ++f) {
    const auto& l = surface.faceLengths(f);
    const auto& v = surface.faceVertices(f);
    const double area = surface.faceArea(f);
    const double euclid = euclideanArea(l);
    for (int c = 0; c < 3; ++c) {
      const int i = v[(c + 1) % 3], j = v[(c + 2) % 3];
      const double a = l[c], b = l[(c + 1) % 3], d = l[(c + 2) % 3];
      const double halfCot = (b * b + d * d - a * a) / (8.0 * euclid);
      stiff.push_back({i, j, -halfCot});
      stiff.push_back({j, i, -halfCot});
      stiff.push_back({i, i, halfCot});
      stiff.push_back({j, j, halfCot});
    }
    for (int r = 0; r < 3; ++r) {
      if (mass == MassKind::Lumped) {
        massEntries.push_back({v[r], v[r], area / 3.0});
        continue;
      }
      for (int s = 0; s < 3; ++s) massEntries.push_back({v[r], v[s], r == s ? area / 6.0 : area / 12.0});
    }
  }
  SparsePencil pencil;
  pencil.K = canonicalSum(nv, stiff);
  pencil.B = canonicalSum(nv, massEntries);
  return pencil;
}

RefinedSurface refine(const TriangulatedSurface& surface, const std::vector<MeshCurve>& curves) {
  const int F = surface.faceCount();
  std::vector<TriangulatedSurface::Lengths> lengths(4 * static_cast<std::size_t>(F));
  std::vector<TriangulatedSurface::Gluing> gluing(4 * static_cast<std::size_t>(F));

  // Halves of parent side k: the first (from corner k+1) lies in child k+1
  // as its side 2, the second (towards corner k+2) in child k+2 as side 1.
  auto firstHalf = [](int f, int k) { return SideRef{4 * f + (k + 1) % 3, 2}; };
  auto secondHalf = [](int f, int k) { return SideRef{4 * f + (k + 2) % 3, 1}; };

  for (int f = 0; f < F; ++f) {
    const auto& l = surface.faceLengths(f);
    const auto corners = placeTriangle(TriangleLengths::fromArray(l));
    std::array<HyperboloidPoint, 3> mid;
    for (int k = 0; k < 3; ++k) mid[k] = geodesicMidpoint(corners[(k + 1) % 3], corners[(k + 2) % 3]);
    // inner[k]: distance between the midpoints other than mid[k].
    std::array<double, 3> inner{};
    for (int k = 0; k < 3; ++k) inner[k] = distance(mid[(k + 1) % 3], mid[(k + 2) % 3]);

    for (int c = 0; c < 3; ++c) {
      lengths[4 * f + c] = {inner[c], 0.5 * l[(c + 1) % 3], 0.5 * l[(c + 2) % 3]};
      gluing[4 * f + c][0] = {4 * f + 3, c};
    }
    lengths[4 * f + 3] = inner;
    for (int k = 0; k < 3; ++k) gluing[4 * f + 3][k] = {4 * f + k, 0};

    for (int k = 0; k < 3; ++k) {
      const SideRef p = surface.partner({f, k});
      const SideRef a = firstHalf(f, k), b = secondHalf(f, k);
      if (!p.valid()) {
        gluing[a.face][a.side] = {};
        gluing[b.face][b.side] = {};
        continue;
      }
      // Glued sides run in opposite directions.
      gluing[a.face][a.side] = secondHalf(p.face, p.side);
      gluing[b.face][b.side] = firstHalf(p.face, p.side);
    }
  }

  RefinedSurface out;
  out.surface = TriangulatedSurface::fromGluing(std::move(lengths), std::move(gluing));
  for (const MeshCurve& curve : curves) {
    std::vector<SideRef> edges;
    edges.reserve(2 * curve.edges.size());
    for (const SideRef& e : curve.edges) {
      edges.push_back(firstHalf(e.face, e.side));
      edges.push_back(secondHalf(e.face, e.side));
    }
    out.curves.push_back(makeCurve(out.surface, std::move(edges), curve.name));
  }
  return out;
}

RefinedSurface refineTimes(const TriangulatedSurface& surface, const std::vector<MeshCurve>& curves, int levels) {
  if (levels < 0) throw InvalidInput("refinement level must be non-negative");
  RefinedSurface current{surface, curves};
  for (int i = 0; i < levels; ++i) current = refine(current.surface, current.curves);
  return current;
}

void writeCoordinateMatrix(const std::filesystem::path& path, const SparseMatrix& matrix) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  for (int col = 0; col < matrix.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(matrix, col); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
  if (!out) throw Error("write failed for " + path.string());
}

} // namespace hypcover
