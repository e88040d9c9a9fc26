#include "hypcover/cover.h"

#include "hypcover/errors.h"

#include <set>
#include <sstream>

namespace hypcover {

namespace {

CoverSurface buildCyclic(const TriangulatedSurface& base, const MeshCurve& gamma, int degree, int n, int N) {
  if (degree < 1) throw InvalidInput("cover degree must be positive");
  if (!base.isClosed()) throw InvalidInput("base surface must be closed");
  if (gamma.edges.empty()) throw InvalidInput("cover curve is empty");
  if (isSeparating(base, gamma.edges)) {
    throw InvalidInput("curve '" + gamma.name + "' is separating; the cyclic cover would disconnect");
  }

  const int F = base.faceCount();
  std::set<SideRef> leftSides(gamma.edges.begin(), gamma.edges.end());
  std::set<SideRef> rightSides;
  for (const SideRef& e : gamma.edges) rightSides.insert(base.partner(e));

  std::vector<TriangulatedSurface::Lengths> lengths;
  std::vector<TriangulatedSurface::Gluing> gluing;
  lengths.reserve(static_cast<std::size_t>(F) * degree);
  gluing.reserve(static_cast<std::size_t>(F) * degree);
  for (int k = 0; k < degree; ++k) {
    for (int f = 0; f < F; ++f) {
      lengths.push_back(base.faceLengths(f));
      TriangulatedSurface::Gluing g{};
      for (int s = 0; s < 3; ++s) {
        const SideRef p = base.partner({f, s});
        int copy = k;
        // Left of gamma in copy k meets right of gamma in copy k+1.
        if (leftSides.count({f, s})) copy = (k + 1) % degree;
        else if (rightSides.count({f, s})) copy = (k + degree - 1) % degree;
        g[s] = {copy * F + p.face, p.side};
      }
      gluing.push_back(g);
    }
  }

  CoverSurface cover;
  cover.surface = TriangulatedSurface::fromGluing(std::move(lengths), std::move(gluing));
  cover.baseFaceCount = F;
  cover.degree = degree;
  cover.n = n;
  cover.N = N;

  const int total = F * degree;
  cover.copyOf.resize(total);
  cover.deckFace.resize(total);
  cover.pieceOf.resize(total);
  for (int face = 0; face < total; ++face) {
    const int k = face / F;
    cover.copyOf[face] = k;
    cover.deckFace[face] = ((k + 1) % degree) * F + face % F;
    cover.pieceOf[face] = k / N;
  }
  cover.deckVertex.assign(cover.surface.vertexCount(), -1);
  for (int face = 0; face < total; ++face) {
    for (int c = 0; c < 3; ++c) {
      cover.deckVertex[cover.surface.faceVertices(face)[c]] = cover.surface.faceVertices(cover.deckFace[face])[c];
    }
  }

  // Lift i sits between copy (i+1)N - 1 (piece i) and copy (i+1)N mod d.
  for (int i = 0; i <= n; ++i) {
    const int copy = (i + 1) * N - 1;
    std::vector<SideRef> edges;
    for (const SideRef& e : gamma.edges) edges.push_back({copy * F + e.face, e.side});
    cover.lifts.push_back(makeCurve(cover.surface, std::move(edges), "gamma" + std::to_string(i + 1)));
  }
  return cover;
}

} // namespace

double CoverSurface::pieceArea(int piece) const {
  double area = 0;
  for (int f = 0; f < surface.faceCount(); ++f) {
    if (pieceOf[f] == piece) area += surface.faceArea(f);
  }
  return area;
}

std::vector<int> CoverSurface::facesOfPiece(int piece) const {
  std::vector<int> faces;
  for (int f = 0; f < surface.faceCount(); ++f) {
    if (pieceOf[f] == piece) faces.push_back(f);
  }
  return faces;
}

CoverSurface cyclicCover(const TriangulatedSurface& base, const MeshCurve& gamma, int n, int N) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (N < 1) throw InvalidInput("N must be at least 1");
  return buildCyclic(base, gamma, (n + 1) * N, n, N);
}

CoverSurface cyclicCoverOfDegree(const TriangulatedSurface& base, const MeshCurve& gamma, int degree) {
  if (degree < 1) throw InvalidInput("cover degree must be positive");
  return buildCyclic(base, gamma, degree, 0, degree);
}

DeckCertificate verifyDeckSymmetry(const CoverSurface& cover) {
  const TriangulatedSurface& s = cover.surface;
  const int total = s.faceCount();
  auto fail = [](std::string why, int face, int image) {
    return DeckCertificate{false, std::move(why), face, image};
  };
  if (static_cast<int>(cover.deckFace.size()) != total) return fail("deck permutation has wrong size", -1, -1);

  std::vector<char> hit(total, 0);
  for (int f = 0; f < total; ++f) {
    const int img = cover.deckFace[f];
    if (img < 0 || img >= total || hit[img]) return fail("deck map is not a permutation", f, img);
    hit[img] = 1;
  }

  std::vector<int> vertexImage(s.vertexCount(), -1);
  for (int f = 0; f < total; ++f) {
    const int img = cover.deckFace[f];
    if (s.faceLengths(f) != s.faceLengths(img)) {
      std::ostringstream os;
      os << "triangle " << f << " and its deck image " << img << " differ in edge lengths";
      return fail(os.str(), f, img);
    }
    for (int k = 0; k < 3; ++k) {
      const SideRef p = s.partner({f, k});
      const SideRef mapped{cover.deckFace[p.face], p.side};
      if (s.partner({img, k}) != mapped) {
        std::ostringstream os;
        os << "gluing of triangle " << f << " side " << k << " is not conjugated by the deck map";
        return fail(os.str(), f, img);
      }
    }
    for (int c = 0; c < 3; ++c) {
      const int v = s.faceVertices(f)[c];
      const int w = s.faceVertices(img)[c];
      if (vertexImage[v] == -1) vertexImage[v] = w;
      else if (vertexImage[v] != w) return fail("deck map does not induce a vertex map", f, img);
    }
  }

  for (int f = 0; f < total; ++f) {
    int g = f;
    for (int k = 0; k < cover.degree; ++k) g = cover.deckFace[g];
    if (g != f) return fail("deck map raised to the degree is not the identity", f, g);
  }
  return {};
}

TriangulatedSurface quotientByDeck(const CoverSurface& cover) {
  const int F = cover.baseFaceCount;
  std::vector<TriangulatedSurface::Lengths> lengths;
  std::vector<TriangulatedSurface::Gluing> gluing;
  for (int f = 0; f < F; ++f) {
    lengths.push_back(cover.surface.faceLengths(f));
    TriangulatedSurface::Gluing g{};
    for (int k = 0; k < 3; ++k) {
      const SideRef p = cover.surface.partner({f, k});
      g[k] = {p.face % F, p.side};
    }
    gluing.push_back(g);
  }
  return TriangulatedSurface::fromGluing(std::move(lengths), std::move(gluing));
}

HypmeshDocument toDocument(const CoverSurface& cover, std::vector<std::string> comments) {
  HypmeshDocument doc;
  doc.surface = cover.surface;
  doc.comments = std::move(comments);
  doc.deckDegree = cover.degree;
  doc.deckPermutation = cover.deckFace;
  for (int i = 0; i < cover.pieceCount(); ++i) doc.pieces.push_back(cover.facesOfPiece(i));
  doc.lifts = cover.lifts;
  return doc;
}

} // namespace hypcover
