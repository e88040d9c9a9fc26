#pragma once

// Smallest eigenpairs of the symmetric pencil K v = lambda B v.

#include "hypcover/fem.h"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace hypcover {

struct SpectrumResult {
  std::vector<double> eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;      // B-orthonormal columns
  std::vector<double> residuals;     // relative backward errors, see relativeResidual
  int restarts = 0;
  int operatorApplications = 0;
  double tolerance = 0;
};

struct SolverOptions {
  double tol = 1e-9;
  std::uint64_t seed = 20240101;
  int maxRestarts = 1000;
  // Zero selects count + 2.
  int blockSize = 0;
  // Krylov basis dimension per restart; zero selects a default.
  int basisSize = 0;
};

// trace(K) / dof
double pencilScale(const SparsePencil& pencil);

// ||K v - lambda B v|| / ((||K||_1 + |lambda| ||B||_1) ||v||)
double relativeResidual(const SparsePencil& pencil, double lambda, const Eigen::VectorXd& v);

// Restarted block Krylov iteration on (K - sigma B)^{-1} B with the fixed
// shift sigma = -1e-2 * scale, sparse LDL^T factorization and Rayleigh-Ritz
// extraction. Deterministic for a given seed.
SpectrumResult solveSmallest(const SparsePencil& pencil, int count, const SolverOptions& options = {});

// Dense reference: eigen-decomposition of B^{-1/2} K B^{-1/2}. dof <= 2000.
SpectrumResult denseOracle(const SparsePencil& pencil, int count);

inline constexpr int kDenseOracleMaxDof = 2000;

} // namespace hypcover
