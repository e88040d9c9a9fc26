#include "doctest.h"

#include "fixtures.h"

#include "hypcover/errors.h"
#include "hypcover/pipeline.h"
#include "hypcover/spectrum.h"

#include <cmath>

using namespace hypcover;

namespace {

SparseMatrix sparse(const Eigen::MatrixXd& dense) { return dense.sparseView(); }

} // namespace

TEST_CASE("2x2 pencil has eigenvalues 0 and 2") {
  Eigen::MatrixXd K(2, 2), B(2, 2);
  K << 1, -1, -1, 1;
  B << 1, 0, 0, 1;
  const SparsePencil p{sparse(K), sparse(B)};
  const SpectrumResult r = solveSmallest(p, 2);
  CHECK(std::abs(r.eigenvalues[0]) < 1e-12);
  CHECK(r.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  const SpectrumResult d = denseOracle(p, 2);
  CHECK(std::abs(d.eigenvalues[0]) < 1e-12);
  CHECK(d.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("zero stiffness gives zero eigenvalues") {
  const int n = 30;
  SparseMatrix K(n, n), B(n, n);
  B.setIdentity();
  B *= 0.5;
  const SpectrumResult r = solveSmallest({K, B}, 5);
  for (double l : r.eigenvalues) CHECK(std::abs(l) < 1e-12);
}

TEST_CASE("sparse solver agrees with the dense oracle on random pencils") {
  for (int i = 0; i < 10; ++i) {
    const SparsePencil p = randomPencil(100 + i, 20 + 17 * i);
    const SpectrumResult sp = solveSmallest(p, 6);
    const SpectrumResult de = denseOracle(p, 6);
    for (int k = 0; k < 6; ++k) {
      CHECK(std::abs(sp.eigenvalues[k] - de.eigenvalues[k]) <= 1e-9 * std::max(1.0, de.eigenvalues[k]));
    }
    for (double res : sp.residuals) CHECK(res <= 1e-9);
  }
}

TEST_CASE("eigenvectors are B-orthonormal and satisfy the pencil") {
  const SparsePencil p = assemble(fixtures::coverN(1, 1).surface);
  const SpectrumResult r = solveSmallest(p, 5);
  const Eigen::MatrixXd gram = r.eigenvectors.transpose() * (p.B * r.eigenvectors);
  CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
  for (int k = 0; k < 5; ++k) {
    CHECK(relativeResidual(p, r.eigenvalues[k], r.eigenvectors.col(k)) <= 1e-9);
  }
  CHECK(std::abs(r.eigenvalues[0]) < 1e-10);
}

TEST_CASE("clustered eigenvalues of a symmetric cover are not dropped") {
  // The deck symmetry of a degree-4 cover forces degenerate pairs.
  const SparsePencil p = assemble(fixtures::coverN(1, 2).surface);
  const SpectrumResult sp = solveSmallest(p, 8);
  const SpectrumResult de = denseOracle(p, 8);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(sp.eigenvalues[k] - de.eigenvalues[k]) <= 1e-8 * std::max(1.0, de.eigenvalues[k]));
}

TEST_CASE("solver output is deterministic for a fixed seed") {
  const SparsePencil p = assemble(fixtures::base().surface);
  const SpectrumResult a = solveSmallest(p, 4), b = solveSmallest(p, 4);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
  SolverOptions other;
  other.seed = 99;
  const SpectrumResult c = solveSmallest(p, 4, other);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(a.eigenvalues[k] - c.eigenvalues[k]) < 1e-9 * std::max(1.0, a.eigenvalues[k]));
}

TEST_CASE("eigenvalues are invariant under the deck relabeling") {
  const auto& cover = fixtures::coverN(2, 1);
  const SparsePencil p = assemble(cover.surface);
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> P(p.dof());
  for (int v = 0; v < p.dof(); ++v) P.indices()[v] = cover.deckVertex[v];
  const SparsePencil q{SparseMatrix(P.transpose() * p.K * P), SparseMatrix(P.transpose() * p.B * P)};
  const SpectrumResult a = solveSmallest(p, 5), b = solveSmallest(q, 5);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(a.eigenvalues[k] - b.eigenvalues[k]) < 1e-10 * std::max(1.0, a.eigenvalues[k]));
}

TEST_CASE("base surface eigenvalues at level 1") {
  const auto& b = fixtures::base();
  const SparsePencil p = assemble(refine(b.surface).surface);
  const SpectrumResult r = solveSmallest(p, 5);
  // measured values, frozen
  CHECK(r.eigenvalues[1] == doctest::Approx(2.6982005).epsilon(1e-7));
  CHECK(r.eigenvalues[2] == doctest::Approx(2.8986436).epsilon(1e-7));
  CHECK(r.eigenvalues[3] == doctest::Approx(2.8986436).epsilon(1e-7));
  CHECK(r.eigenvalues[4] == doctest::Approx(6.6976581).epsilon(1e-7));
}

TEST_CASE("indefinite shifted operator reports the pivot") {
  Eigen::MatrixXd K(3, 3), B(3, 3);
  K << -5, 0, 0, 0, 1, 0, 0, 0, 1;
  B.setIdentity();
  try {
    solveSmallest({sparse(K), sparse(B)}, 1);
    FAIL("expected FactorizationFailure");
  } catch (const FactorizationFailure& e) {
    CHECK(e.pivot() == 0);
  }
}

TEST_CASE("bad requests") {
  const SparsePencil p = randomPencil(1, 10);
  CHECK_THROWS_AS(solveSmallest(p, 0), InvalidInput);
  CHECK_THROWS_AS(solveSmallest(p, 11), InvalidInput);
  SolverOptions o;
  o.tol = 0;
  CHECK_THROWS_AS(solveSmallest(p, 2, o), InvalidInput);
  CHECK_THROWS_AS(denseOracle(randomPencil(1, kDenseOracleMaxDof + 1), 2), InvalidInput);
}

TEST_CASE("non-convergence reports the best residuals") {
  const SparsePencil p = randomPencil(5, 300);
  SolverOptions o;
  o.tol = 1e-30;
  o.maxRestarts = 2;
  o.basisSize = 12;
  try {
    solveSmallest(p, 3, o);
    FAIL("expected ConvergenceFailure");
  } catch (const ConvergenceFailure& e) {
    CHECK(e.bestResiduals().size() == 3);
  }
}
