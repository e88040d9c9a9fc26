#include "doctest.h"

#include "fixtures.h"

#include "hypcover/errors.h"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace hypcover;

namespace {

double maxAbs(const SparseMatrix& m) {
  double best = 0;
  for (int c = 0; c < m.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

} // namespace

TEST_CASE("stiffness annihilates constants and mass integrates the area") {
  const auto& s = fixtures::base().surface;
  for (MassKind kind : {MassKind::Consistent, MassKind::Lumped}) {
    const SparsePencil p = assemble(s, kind);
    CHECK(p.dof() == s.vertexCount());
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(p.dof());
    CHECK((p.K * one).cwiseAbs().maxCoeff() <= 1e-12 * maxAbs(p.K));
    CHECK(std::abs(one.dot(p.B * one) - s.totalArea()) < 1e-12);
  }
}

TEST_CASE("matrices are exactly symmetric") {
  const SparsePencil p = assemble(fixtures::coverN(1, 1).surface);
  const SparseMatrix kt = p.K.transpose(), bt = p.B.transpose();
  CHECK(maxAbs(p.K - kt) == 0.0);
  CHECK(maxAbs(p.B - bt) == 0.0);
}

TEST_CASE("lumped mass is diagonal with a third of the adjacent area") {
  const auto& s = fixtures::base().surface;
  const SparsePencil p = assemble(s, MassKind::Lumped);
  std::vector<double> expected(s.vertexCount(), 0.0);
  for (int f = 0; f < s.faceCount(); ++f) {
    for (int v : s.faceVertices(f)) expected[v] += s.faceArea(f) / 3;
  }
  for (int c = 0; c < p.B.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(p.B, c); it; ++it) {
      if (it.row() != it.col()) CHECK(it.value() == 0.0);
      else CHECK(it.value() == doctest::Approx(expected[c]).epsilon(1e-13));
    }
  }
}

TEST_CASE("consistent mass rows split evenly between diagonal and neighbours") {
  // per triangle: T/6 on the diagonal, T/12 to each of the two other corners
  const SparsePencil p = assemble(fixtures::base().surface);
  for (int c = 0; c < p.B.outerSize(); ++c) {
    double diag = 0, off = 0;
    for (SparseMatrix::InnerIterator it(p.B, c); it; ++it) (it.row() == it.col() ? diag : off) += it.value();
    CHECK(diag == doctest::Approx(off).epsilon(1e-12));
  }
}

TEST_CASE("deck permutation commutes exactly with K and B") {
  for (int N : {1, 2}) {
    const auto& cover = fixtures::coverN(2, N);
    const SparsePencil p = assemble(cover.surface);
    const int n = p.dof();
    REQUIRE(static_cast<int>(cover.deckVertex.size()) == n);
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> P(n);
    for (int v = 0; v < n; ++v) P.indices()[v] = cover.deckVertex[v];
    const SparseMatrix K2 = P.transpose() * p.K * P;
    const SparseMatrix B2 = P.transpose() * p.B * P;
    CHECK(maxAbs(K2 - p.K) == 0.0);
    CHECK(maxAbs(B2 - p.B) == 0.0);
  }
}

TEST_CASE("refinement keeps topology, area and curves") {
  const auto& b = fixtures::base();
  RefinedSurface r{b.surface, {b.gamma}};
  double previousDiameter = b.surface.maxEdgeLength();
  for (int level = 1; level <= 3; ++level) {
    r = refine(r.surface, r.curves);
    CHECK(r.surface.faceCount() == b.surface.faceCount() << (2 * level));
    CHECK(r.surface.eulerCharacteristic() == -2);
    CHECK(std::abs(r.surface.totalArea() - 4 * std::numbers::pi) < 1e-8);
    CHECK(r.surface.checkClosedInvariants().empty());
    REQUIRE(r.curves.size() == 1);
    CHECK(r.curves[0].edges.size() == b.gamma.edges.size() << level);
    CHECK(r.curves[0].length == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_FALSE(r.curves[0].separating);
    const double diameter = r.surface.maxEdgeLength();
    const double shrink = previousDiameter / diameter;
    CHECK(shrink >= 1.8);
    CHECK(shrink <= 2.2);
    previousDiameter = diameter;
  }
}

TEST_CASE("refineTimes equals repeated refine") {
  const auto& b = fixtures::base();
  const RefinedSurface twice = refineTimes(b.surface, {b.gamma}, 2);
  const RefinedSurface stepwise = refine(refine(b.surface, {b.gamma}).surface, refine(b.surface, {b.gamma}).curves);
  CHECK(identicalCombinatorics(twice.surface, stepwise.surface));
  CHECK(twice.surface.lengths() == stepwise.surface.lengths());
  CHECK(twice.curves[0].edges == stepwise.curves[0].edges);
  CHECK(identicalCombinatorics(refineTimes(b.surface, {}, 0).surface, b.surface));
  CHECK_THROWS_AS(refineTimes(b.surface, {}, -1), InvalidInput);
}

TEST_CASE("refining a cover commutes with covering the refined base") {
  const auto& b = fixtures::base();
  const RefinedSurface rb = refine(b.surface, {b.gamma});
  const CoverSurface coverOfRefined = cyclicCover(rb.surface, rb.curves[0], 1, 2);
  CHECK(coverOfRefined.surface.genus() == 5);
  CHECK(std::abs(coverOfRefined.surface.totalArea() - 16 * std::numbers::pi) < 1e-8);
  CHECK(verifyDeckSymmetry(coverOfRefined).ok);
}

TEST_CASE("coordinate matrix output") {
  const SparsePencil p = assemble(fixtures::base().surface);
  const auto path = std::filesystem::temp_directory_path() / "hypcover_fem_test.mtx";
  writeCoordinateMatrix(path, p.K);
  std::ifstream in(path);
  int row, col, count = 0;
  double value;
  while (in >> row >> col >> value) {
    CHECK(p.K.coeff(row, col) == value);
    ++count;
  }
  CHECK(count == p.K.nonZeros());
  std::filesystem::remove(path);
}
