#pragma once

// Quantitative side of the small-eigenvalue construction: isoperimetric
// ratio h, embedded collar width eta, ramp test functions supported on the
// pieces of a cyclic cover, their Rayleigh quotients, the discrete minimax
// certificate and the bound C(eta) (h + h^2) with C(eta) = 2 / eta.

#include "hypcover/cover.h"
#include "hypcover/fem.h"
#include "hypcover/spectrum.h"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hypcover {

// Largest t with sinh t < 1 margin that the ramp width may take.
inline constexpr double kMaxRampWidth = 0.4;

// Half-width of the embedded collar around a simple closed geodesic of
// length l: arcsinh(1 / sinh(l / 2)).
double collarWidth(double length);

// Multi-source Dijkstra along mesh edges from every vertex of the curves.
// Overestimates the geodesic distance.
std::vector<double> distanceToCurves(const TriangulatedSurface& surface, const std::vector<MeshCurve>& curves);

struct CollarData {
  double eta = 0;
  double collarLemmaWidth = 0;
  // Per lift: mesh distance to the nearest other lift.
  std::vector<double> clearance;
  double t = 0;
  // Set when t had to shrink below min(eta/2, 0.4) to fit inside a piece.
  bool tShrunk = false;
};

// eta = min(collar lemma width, half the minimum inter-lift distance),
// t = min(eta / 2, 0.4).
CollarData collarData(const CoverSurface& cover);

enum class TestFunctionVariant {
  // Ramp from both boundary lifts of the piece; continuous.
  Corrected,
  // Ramp only from gamma_i, the literal reading; jumps at gamma_{i-1}.
  Literal,
};

struct TestFunctions {
  // One vertex vector per piece, f_1 .. f_{n+1}.
  std::vector<Eigen::VectorXd> values;
  // Ramp width actually used (may be smaller than the requested t).
  double t = 0;
  bool tShrunk = false;
};

// f_i = min(1, dist / t) on vertices interior to piece i, zero elsewhere
// (including every vertex on a lift). Shrinks t when some piece has no
// vertex at distance >= t from its boundary.
TestFunctions buildTestFunctions(const CoverSurface& cover, double t,
                                 TestFunctionVariant variant = TestFunctionVariant::Corrected);

// f^T K f / f^T B f. Rejects f^T B f = 0.
double rayleigh(const SparsePencil& pencil, const Eigen::VectorXd& f);

struct MinimaxCertificate {
  double value = 0;                 // max_i rayleigh(f_i)
  std::vector<double> quotients;
  double maxCrossTermK = 0;         // max |f_i^T K f_j|, i != j
  double maxCrossTermB = 0;
};

// Verifies that no triangle carries non-zero values of two different
// functions (and that all cross terms vanish exactly) before returning the
// largest Rayleigh quotient, an upper bound for lambda_k with k + 1 functions.
MinimaxCertificate minimaxCertificate(const SparsePencil& pencil, const TriangulatedSurface& surface,
                                      const std::vector<Eigen::VectorXd>& functions);

// Sum of interface curve lengths over the smallest piece area. With two
// pieces this is the usual two-piece ratio; pieceOf labels every face.
double computeHGeneral(const TriangulatedSurface& surface, const std::vector<int>& pieceOf,
                       const std::vector<MeshCurve>& interfaces);

// Area of { dist <= t } inside the faces selected by `inFace`, with dist
// interpolated linearly over each triangle.
double sublevelArea(const TriangulatedSurface& surface, const std::vector<double>& dist, double t,
                    const std::vector<char>& inFace);

struct HalfCollarArea {
  int lift = 0;          // 1-based
  double insideArea = 0; // side in piece A_i
  double outsideArea = 0;// side in piece A_{i+1}
  double reference = 0;  // l(gamma_i) sinh(t)
};

std::vector<HalfCollarArea> halfCollarAreas(const CoverSurface& cover, double t);

struct ChainStep {
  std::string name;
  bool holds = false;
};

struct BoundReport {
  int n = 0, N = 0, degree = 0, genus = 0;
  double gammaLength = 0;
  double baseArea = 0;
  double pieceArea = 0;
  double h = 0;
  double hGeneral = 0;
  double eta = 0;
  double t = 0;
  double cEta = 0;
  double bound = 0;              // C(eta)(h + h^2)
  double conservativeBound = 0;  // 2 C(eta)(h + h^2)
  std::vector<double> rayleighQuotients;
  double certificate = 0;
  double lambdaN = 0;
  double scale = 0;
  double witnessLength = 0;      // (n+1) l(gamma), an upper bound for l_n
  bool boundHolds = false;
  bool conservativeBoundHolds = false;
  bool certificateHolds = false;
  bool chainAssumptionsHold = false;
  std::vector<ChainStep> chainSteps;
  std::vector<HalfCollarArea> halfCollars;
  TestFunctionVariant variant = TestFunctionVariant::Corrected;
  bool tShrunk = false;
};

inline constexpr double kBoundSlack = 1e-6;
inline constexpr double kCertificateSlackRelative = 1e-7;

BoundReport boundReport(const CoverSurface& cover, const SparsePencil& pencil, const SpectrumResult& spectrum,
                        double baseArea, TestFunctionVariant variant = TestFunctionVariant::Corrected);

} // namespace hypcover
