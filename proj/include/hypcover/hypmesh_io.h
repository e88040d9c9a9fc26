#pragma once

// Plain-text HYPMESH format (version 1):
//
//   HYPMESH 1
//   F <face-count> G <genus>
//   # free-form comment lines (optional, anywhere after line 2)
//   v0 v1 v2 len0 len1 len2          one line per face
//   f1 side1 f2 side2                one line per glued side pair
//   CURVE <name> <edge-count>        followed by `face side` lines
//   DECK <d>                         followed by one line: face images
//   PIECE <i>                        followed by one line: face ids
//   LIFT <i> <edge-count>            followed by `face side` lines
//
// len_k is the length of the edge opposite corner k, written with 17
// significant digits so that files round-trip exactly.

#include "hypcover/surface.h"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hypcover {

struct HypmeshDocument {
  TriangulatedSurface surface;
  std::vector<std::string> comments;
  std::vector<MeshCurve> curves;

  // Cover blocks; empty for plain surfaces.
  int deckDegree = 0;
  std::vector<int> deckPermutation;
  std::vector<std::vector<int>> pieces;
  std::vector<MeshCurve> lifts;
};

void writeHypmesh(std::ostream& out, const HypmeshDocument& doc);
void writeHypmesh(const std::filesystem::path& path, const HypmeshDocument& doc);

HypmeshDocument readHypmesh(std::istream& in);
HypmeshDocument readHypmesh(const std::filesystem::path& path);

} // namespace hypcover
