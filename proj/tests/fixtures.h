#pragma once

#include "hypcover/cover.h"
#include "hypcover/fem.h"
#include "hypcover/surface.h"

#include <map>
#include <utility>

namespace fixtures {

// Default (2,2,2) surface with 8 vertices per cuff, built once per binary.
inline const hypcover::BaseSurface& base() {
  static const hypcover::BaseSurface b = hypcover::buildSurface({});
  return b;
}

inline const hypcover::CoverSurface& coverN(int n, int N) {
  static std::map<std::pair<int, int>, hypcover::CoverSurface> cache;
  auto it = cache.find({n, N});
  if (it == cache.end()) it = cache.emplace(std::pair{n, N}, hypcover::cyclicCover(base().surface, base().gamma, n, N)).first;
  return it->second;
}

} // namespace fixtures
