#pragma once

// Orchestration behind the command-line tool: configuration, the build /
// sweep / converge / corollary / oracle-check commands, and their CSV and
// JSON outputs.

#include "hypcover/bound.h"
#include "hypcover/fem.h"
#include "hypcover/surface.h"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hypcover {

inline constexpr const char* kToolVersion = "hypcover 1.0.0";

struct RunConfig {
  std::array<double, 3> cuffs{2.0, 2.0, 2.0};
  std::array<int, 3> twists{0, 0, 0};
  int m = 8;
  int refine = 2;
  int n = 2;
  std::vector<int> Ns{1, 2, 4, 8};
  double tol = 1e-9;
  std::filesystem::path outDir = "hypcover-out";
  std::uint64_t seed = 20240101;
  MassKind mass = MassKind::Consistent;
  TestFunctionVariant testfn = TestFunctionVariant::Corrected;

  void validate() const;
  FenchelNielsenSpec surfaceSpec() const;
  // key=value lines covering every field except the output directory.
  std::string canonical() const;
  // SHA-256 of canonical().
  std::string hash() const;
};

// Applies one `key = value` setting. Unknown keys and bad values throw
// InvalidInput.
void applySetting(RunConfig& config, const std::string& key, const std::string& value);

// Reads a plain-text config: `key = value` per line, `#` comments.
RunConfig loadConfigFile(const std::filesystem::path& path, RunConfig base = {});

std::string sha256Hex(const std::string& data);

struct BuildOutput {
  std::vector<std::filesystem::path> files;
};

// Base mesh and one cover per N, at the configured refinement level.
BuildOutput cmdBuild(const RunConfig& config);

struct SweepRow {
  std::string configHash;
  int N = 0;
  int degree = 0;
  int dof = 0;
  int genus = 0;
  std::vector<double> eigenvalues;  // lambda_0 .. lambda_{n+1}
  BoundReport report;
  bool failed = false;
  std::string error;
};

struct SweepResult {
  std::string configHash;
  std::vector<SweepRow> rows;
  bool monotone = false;     // lambda_n non-increasing in N within 2%
  bool allBoundsHold = false;
  bool allCertificatesHold = false;
  bool ok() const { return monotone && allBoundsHold && allCertificatesHold; }
};

inline constexpr double kMonotoneSlack = 0.02;

// Runs the sweep without touching the filesystem.
SweepResult runSweep(const RunConfig& config);
// Runs the sweep and writes sweep.csv / sweep.json.
SweepResult cmdSweep(const RunConfig& config);

struct ConvergeResult {
  std::vector<int> levels;
  std::vector<int> dofs;
  std::vector<double> areas;
  std::vector<std::vector<double>> eigenvalues;  // per level, lambda_0..lambda_4
  // ratios[j][k]: (lam_k(j) - lam_k(j+1)) / (lam_k(j+1) - lam_k(j+2)) for k = 1..4
  std::vector<std::vector<double>> ratios;
  bool ratiosInRange = false;
};

inline constexpr double kRatioLow = 2.5;
inline constexpr double kRatioHigh = 6.0;

ConvergeResult runConverge(const RunConfig& config);
ConvergeResult cmdConverge(const RunConfig& config);

struct CorollaryRow {
  int N = 0;
  int degree = 0;
  int genus = 0;
  double witnessLength = 0;
  double lambdaN = 0;
  double ratio = 0;
};

struct CorollaryResult {
  std::vector<CorollaryRow> rows;
  bool witnessConstant = false;
  bool ratioDecreasing = false;
  bool genusLinear = false;
  bool ok() const { return witnessConstant && ratioDecreasing && genusLinear; }
};

CorollaryResult corollaryFromSweep(const SweepResult& sweep, int baseGenus);
// Reuses sweep.json from the output directory when its config hash matches,
// otherwise runs the sweep; writes corollary.csv / corollary.json.
CorollaryResult cmdCorollary(const RunConfig& config);

struct OracleComparison {
  std::string label;
  int dof = 0;
  double maxAbsDiff = 0;
  bool pass = false;
};

struct OracleCheckResult {
  std::vector<OracleComparison> comparisons;
  bool ok() const;
};

inline constexpr int kOracleRandomPencils = 20;
inline constexpr int kOracleEigenCount = 6;

// Random graph-Laplacian pencil with a random SPD mass matrix.
SparsePencil randomPencil(std::uint64_t seed, int dof);

OracleCheckResult runOracleCheck(const RunConfig& config);
OracleCheckResult cmdOracleCheck(const RunConfig& config);

nlohmann::json toJson(const BoundReport& report, const std::string& configHash);
nlohmann::json toJson(const SweepResult& sweep, const RunConfig& config);
SweepResult sweepFromJson(const nlohmann::json& json);

} // namespace hypcover
