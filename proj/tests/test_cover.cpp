#include "doctest.h"

#include "fixtures.h"

#include "hypcover/errors.h"

#include <cmath>
#include <numbers>
#include <set>

using namespace hypcover;

TEST_CASE("n = 2, N = 2 cover has degree 6 and genus 7") {
  const auto& c = fixtures::coverN(2, 2);
  const auto& base = fixtures::base().surface;
  CHECK(c.degree == 6);
  CHECK(c.surface.faceCount() == 6 * base.faceCount());
  CHECK(c.surface.eulerCharacteristic() == -12);
  CHECK(c.surface.genus() == 7);
  CHECK(c.surface.isClosed());
  CHECK(c.surface.componentCount() == 1);
  CHECK(c.surface.checkClosedInvariants().empty());
  CHECK(std::abs(c.surface.totalArea() - 24 * std::numbers::pi) < 1e-8);
}

TEST_CASE("pieces are N consecutive copies with area N area(M)") {
  for (int N : {1, 2, 4}) {
    const auto& c = fixtures::coverN(2, N);
    REQUIRE(c.pieceCount() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(c.pieceArea(i) - N * 4 * std::numbers::pi) < 1e-8);
      for (int f : c.facesOfPiece(i)) {
        CHECK(c.pieceOf[f] == i);
        CHECK(c.copyOf[f] / N == i);
      }
    }
  }
}

TEST_CASE("lifts separate consecutive pieces and nothing else touches") {
  const auto& c = fixtures::coverN(2, 2);
  REQUIRE(c.lifts.size() == 3);
  std::set<std::pair<int, int>> liftSides;
  for (int i = 0; i < 3; ++i) {
    const auto& lift = c.lifts[i];
    CHECK(lift.length == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_FALSE(lift.separating);
    for (const SideRef& e : lift.edges) {
      CHECK(c.pieceOf[e.face] == i);
      CHECK(c.pieceOf[c.surface.partner(e).face] == (i + 1) % 3);
      liftSides.insert({e.face, e.side});
      const SideRef p = c.surface.partner(e);
      liftSides.insert({p.face, p.side});
    }
  }
  // every other side is glued within a piece
  for (int f = 0; f < c.surface.faceCount(); ++f) {
    for (int k = 0; k < 3; ++k) {
      if (liftSides.count({f, k})) continue;
      CHECK(c.pieceOf[c.surface.partner({f, k}).face] == c.pieceOf[f]);
    }
  }
  // the lifts together separate the cover
  std::vector<SideRef> all;
  for (const auto& l : c.lifts) all.insert(all.end(), l.edges.begin(), l.edges.end());
  CHECK(isSeparating(c.surface, all));
}

TEST_CASE("degree-1 cover is the base surface itself") {
  const auto& b = fixtures::base();
  const CoverSurface c = cyclicCoverOfDegree(b.surface, b.gamma, 1);
  CHECK(c.degree == 1);
  CHECK(identicalCombinatorics(c.surface, b.surface));
  CHECK(verifyDeckSymmetry(c).ok);
}

TEST_CASE("deck symmetry certificate") {
  const auto& c = fixtures::coverN(2, 2);
  const DeckCertificate cert = verifyDeckSymmetry(c);
  CHECK(cert.ok);
  CHECK(cert.diagnostic.empty());
  for (int f = 0; f < c.surface.faceCount(); ++f) CHECK(c.deckFace[f] == (f + c.baseFaceCount) % c.surface.faceCount());
}

TEST_CASE("mutated deck data fails the certificate") {
  SUBCASE("non-permutation") {
    CoverSurface c = fixtures::coverN(2, 1);
    c.deckFace[1] = c.deckFace[0];
    const auto cert = verifyDeckSymmetry(c);
    CHECK_FALSE(cert.ok);
    CHECK(cert.offendingFace == 1);
  }
  SUBCASE("length perturbation") {
    CoverSurface c = fixtures::coverN(2, 1);
    auto lengths = c.surface.lengths();
    // perturb a whole face consistently so only the deck check can notice
    const int f = 5 + c.baseFaceCount;
    for (int k = 0; k < 3; ++k) lengths[f][k] *= 1 + 1e-15 * (k + 1);
    c.surface = TriangulatedSurface::fromGluing(lengths, c.surface.gluing());
    const auto cert = verifyDeckSymmetry(c);
    CHECK_FALSE(cert.ok);
    CHECK(!cert.diagnostic.empty());
  }
  SUBCASE("wrong shift") {
    CoverSurface c = fixtures::coverN(2, 1);
    const int F = c.baseFaceCount;
    for (int f = 0; f < c.surface.faceCount(); ++f) c.deckFace[f] = (f / F) * F + (f % F + 1) % F;
    CHECK_FALSE(verifyDeckSymmetry(c).ok);
  }
}

TEST_CASE("quotient by the deck group recovers the base") {
  const auto& b = fixtures::base();
  for (int N : {1, 3}) {
    const auto& c = fixtures::coverN(1, N);
    CHECK(identicalCombinatorics(quotientByDeck(c), b.surface));
  }
}

TEST_CASE("Euler characteristic multiplies with the degree") {
  const auto& b = fixtures::base();
  for (int n : {1, 2, 3}) {
    for (int N : {1, 2, 5}) {
      const auto& c = fixtures::coverN(n, N);
      CHECK(c.degree == (n + 1) * N);
      CHECK(c.surface.eulerCharacteristic() == c.degree * b.surface.eulerCharacteristic());
      CHECK(c.surface.componentCount() == 1);
    }
  }
}

TEST_CASE("invalid cover requests") {
  const auto& b = fixtures::base();
  CHECK_THROWS_AS(cyclicCover(b.surface, b.gamma, 0, 1), InvalidInput);
  CHECK_THROWS_AS(cyclicCover(b.surface, b.gamma, 1, 0), InvalidInput);
  CHECK_THROWS_AS(cyclicCoverOfDegree(b.surface, b.gamma, 0), InvalidInput);
  CHECK_THROWS_AS(cyclicCover(b.surface, vertexLinkCurve(b.surface, 3), 1, 1), InvalidInput);
}
