#include "hypcover/spectrum.h"

#include "hypcover/errors.h"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace hypcover {

namespace {

double oneNorm(const SparseMatrix& m) {
  double best = 0;
  for (int col = 0; col < m.outerSize(); ++col) {
    double sum = 0;
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) sum += std::abs(it.value());
    best = std::max(best, sum);
  }
  return best;
}

void checkRequest(const SparsePencil& pencil, int count) {
  if (pencil.K.rows() != pencil.K.cols() || pencil.B.rows() != pencil.K.rows() || pencil.B.cols() != pencil.K.cols()) {
    throw InvalidInput("pencil matrices must be square and of equal size");
  }
  if (count < 1 || count > pencil.dof()) throw InvalidInput("requested eigenpair count out of range");
}

// Growing B-orthonormal basis with cached B * basis.
class BOrthoBasis {
public:
  BOrthoBasis(const SparseMatrix& B, int rows, int capacity) : B_(B), V_(rows, capacity), BV_(rows, capacity) {}

  int size() const { return size_; }
  int capacity() const { return static_cast<int>(V_.cols()); }
  auto basis() const { return V_.leftCols(size_); }

  // Orthogonalizes w against the basis (two passes) and appends it unless it
  // is numerically dependent. Returns whether it was appended.
  bool append(Eigen::VectorXd w) {
    if (size_ >= capacity()) return false;
    double before = std::sqrt(std::max(0.0, w.dot(B_ * w)));
    if (!(before > 0)) return false;
    for (int pass = 0; pass < 2; ++pass) {
      if (size_ > 0) {
        const Eigen::VectorXd coeff = BV_.leftCols(size_).transpose() * w;
        w.noalias() -= V_.leftCols(size_) * coeff;
      }
    }
    const Eigen::VectorXd Bw = B_ * w;
    const double norm = std::sqrt(std::max(0.0, w.dot(Bw)));
    if (!(norm > 1e-10 * before)) return false;
    V_.col(size_) = w / norm;
    BV_.col(size_) = Bw / norm;
    ++size_;
    return true;
  }

  void clear() { size_ = 0; }

private:
  const SparseMatrix& B_;
  Eigen::MatrixXd V_;
  Eigen::MatrixXd BV_;
  int size_ = 0;
};

} // namespace

double pencilScale(const SparsePencil& pencil) {
  double trace = 0;
  for (int i = 0; i < pencil.dof(); ++i) trace += pencil.K.coeff(i, i);
  return pencil.dof() > 0 ? trace / pencil.dof() : 0.0;
}

double relativeResidual(const SparsePencil& pencil, double lambda, const Eigen::VectorXd& v) {
  const Eigen::VectorXd r = pencil.K * v - lambda * (pencil.B * v);
  const double denom = (oneNorm(pencil.K) + std::abs(lambda) * oneNorm(pencil.B)) * v.norm();
  return denom > 0 ? r.norm() / denom : r.norm();
}

SpectrumResult solveSmallest(const SparsePencil& pencil, int count, const SolverOptions& options) {
  checkRequest(pencil, count);
  if (!(options.tol > 0)) throw InvalidInput("solver tolerance must be positive");
  const int n = pencil.dof();
  const double scale = pencilScale(pencil);
  const double sigma = -1e-2 * (scale > 0 ? scale : 1.0);

  SparseMatrix shifted = pencil.K - sigma * pencil.B;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
  ldlt.compute(shifted);
  if (ldlt.info() != Eigen::Success) throw FactorizationFailure("LDL^T factorization of K - sigma B failed", -1);
  {
    const Eigen::VectorXd D = ldlt.vectorD();
    for (int i = 0; i < D.size(); ++i) {
      if (!(D[i] > 0)) {
        const long pivot = ldlt.permutationPinv().indices()[i];
        std::ostringstream os;
        os << "K - sigma B is not positive definite: pivot " << i << " (dof " << pivot << ") = " << D[i];
        throw FactorizationFailure(os.str(), pivot);
      }
    }
  }

  const int block = std::min(n, std::max(options.blockSize, count + 2));
  const int basisSize = std::min(n, options.basisSize > 0 ? std::max(options.basisSize, block)
                                                          : std::max(6 * block, block + 40));

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(n, block);
  for (int j = 0; j < block; ++j) {
    for (int i = 0; i < n; ++i) X(i, j) = normal(rng);
  }

  const double normK = oneNorm(pencil.K), normB = oneNorm(pencil.B);
  BOrthoBasis basis(pencil.B, n, basisSize);
  SpectrumResult result;
  result.tolerance = options.tol;
  std::vector<double> best(count, std::numeric_limits<double>::infinity());

  for (int restart = 0; restart <= options.maxRestarts; ++restart) {
    basis.clear();
    std::vector<int> lastBlock;
    for (int j = 0; j < X.cols(); ++j) {
      if (basis.append(X.col(j))) lastBlock.push_back(basis.size() - 1);
    }
    while (basis.size() < basisSize && !lastBlock.empty()) {
      Eigen::MatrixXd W(n, lastBlock.size());
      for (std::size_t j = 0; j < lastBlock.size(); ++j) {
        W.col(j) = ldlt.solve(pencil.B * basis.basis().col(lastBlock[j]));
      }
      result.operatorApplications += static_cast<int>(W.cols());
      std::vector<int> added;
      for (int j = 0; j < W.cols() && basis.size() < basisSize; ++j) {
        if (basis.append(W.col(j))) added.push_back(basis.size() - 1);
      }
      lastBlock = std::move(added);
    }

    const auto V = basis.basis();
    Eigen::MatrixXd KV = pencil.K * V;
    Eigen::MatrixXd H = V.transpose() * KV;
    H = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(H);
    const int keep = std::min<int>(block, basis.size());
    X = V * ritz.eigenvectors().leftCols(keep);
    const Eigen::MatrixXd KX = KV * ritz.eigenvectors().leftCols(keep);

    if (keep < count) throw ConvergenceFailure("Krylov basis collapsed below the requested count", best);

    bool converged = true;
    std::vector<double> residuals(count);
    for (int j = 0; j < count; ++j) {
      const double theta = ritz.eigenvalues()[j];
      const Eigen::VectorXd r = KX.col(j) - theta * (pencil.B * X.col(j));
      const double denom = (normK + std::abs(theta) * normB) * X.col(j).norm();
      residuals[j] = denom > 0 ? r.norm() / denom : r.norm();
      best[j] = std::min(best[j], residuals[j]);
      if (!(residuals[j] <= options.tol)) converged = false;
    }
    result.restarts = restart;
    if (converged) {
      result.eigenvalues.assign(ritz.eigenvalues().data(), ritz.eigenvalues().data() + count);
      result.eigenvectors = X.leftCols(count);
      result.residuals = std::move(residuals);
      return result;
    }
  }
  std::ostringstream os;
  os << "shift-invert Krylov iteration did not converge in " << options.maxRestarts << " restarts";
  throw ConvergenceFailure(os.str(), best);
}

SpectrumResult denseOracle(const SparsePencil& pencil, int count) {
  checkRequest(pencil, count);
  const int n = pencil.dof();
  if (n > kDenseOracleMaxDof) throw InvalidInput("dense oracle is limited to 2000 dof");

  const Eigen::MatrixXd K(pencil.K);
  const Eigen::MatrixXd B(pencil.B);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> massEig(B);
  if (massEig.info() != Eigen::Success || massEig.eigenvalues().minCoeff() <= 0) {
    throw InvalidInput("mass matrix is not positive definite");
  }
  const Eigen::VectorXd invSqrt = massEig.eigenvalues().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd whiten = massEig.eigenvectors() * invSqrt.asDiagonal() * massEig.eigenvectors().transpose();
  Eigen::MatrixXd M = whiten * K * whiten;
  M = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  if (eig.info() != Eigen::Success) throw ConvergenceFailure("dense symmetric eigensolver failed", {});

  SpectrumResult result;
  result.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + count);
  result.eigenvectors = whiten * eig.eigenvectors().leftCols(count);
  for (int j = 0; j < count; ++j) {
    result.residuals.push_back(relativeResidual(pencil, result.eigenvalues[j], result.eigenvectors.col(j)));
  }
  return result;
}

} // namespace hypcover
