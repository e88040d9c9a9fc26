#pragma once

// Cyclic covers built by cutting the base along a non-separating curve and
// gluing d copies end to end in a cycle.

#include "hypcover/hypmesh_io.h"
#include "hypcover/surface.h"

#include <string>
#include <vector>

namespace hypcover {

struct CoverSurface {
  TriangulatedSurface surface;
  int baseFaceCount = 0;
  int degree = 0;
  // d = (n + 1) * N for covers with designated pieces. The plain degree-d
  // construction uses n = 0, N = d.
  int n = 0;
  int N = 0;

  // Face index k * baseFaceCount + f is copy k of base face f.
  std::vector<int> copyOf;
  std::vector<int> deckFace;
  std::vector<int> deckVertex;

  // lifts[i] (gamma_{i+1}) separates piece i from piece i+1 (cyclically);
  // its faces lie in piece i.
  std::vector<MeshCurve> lifts;
  // Piece index 0..n per face; piece i is copies [i N, (i+1) N).
  std::vector<int> pieceOf;

  int pieceCount() const { return n + 1; }
  double pieceArea(int piece) const;
  std::vector<int> facesOfPiece(int piece) const;
};

// Degree (n+1)N cover with pieces A_1..A_{n+1} and lifts gamma_1..gamma_{n+1}.
CoverSurface cyclicCover(const TriangulatedSurface& base, const MeshCurve& gamma, int n, int N);

// Plain cyclic cover of degree d with a single piece and one lift (the seam
// between copy d-1 and copy 0). Degree 1 returns the base itself.
CoverSurface cyclicCoverOfDegree(const TriangulatedSurface& base, const MeshCurve& gamma, int degree);

struct DeckCertificate {
  bool ok = true;
  std::string diagnostic;
  int offendingFace = -1;
  int imageFace = -1;
};

// Checks that the cyclic shift maps triangles onto triangles with identical
// lengths, conjugates the gluing, induces a well-defined vertex map, and has
// order dividing the degree.
DeckCertificate verifyDeckSymmetry(const CoverSurface& cover);

// Copy 0 with gluing reduced modulo the deck action.
TriangulatedSurface quotientByDeck(const CoverSurface& cover);

HypmeshDocument toDocument(const CoverSurface& cover, std::vector<std::string> comments = {});

} // namespace hypcover
