#include "hypcover/pipeline.h"

#include "CLI11.hpp"

#include <iomanip>
#include <iostream>
#include <map>

namespace {

const char* kFooter = R"(
Config file: one `key = value` per line, `#` starts a comment. Keys: cuffs
(three lengths), twists (three integers), m, refine, n, N (comma list), tol,
out, seed, mass, testfn. Command-line flags override the file.

CSV columns
  sweep.csv      config_hash,N,d,dof,genus,lambda_0..lambda_{n+1},h,eta,t,C_eta,
                 bound,conservative_bound,certificate,bound_holds,
                 certificate_holds,chain_assumptions_hold,status
  converge.csv   config_hash,level,dof,area,lambda_0..lambda_4,ratio_1..ratio_4
                 (ratio for the three levels ending at this row)
  corollary.csv  config_hash,N,d,genus,witness_length_upper_bound_l_n,lambda_n,
                 lambda_n_over_witness
JSON files carry every CSV column plus the per-row details.

Exit status: 0 when every asserted inequality holds, 1 when one fails,
2 on invalid input or a runtime error.)";

struct Flags {
  std::string config;
  std::map<std::string, std::string> overrides;
};

void addCommonFlags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "Plain-text key = value config file")->check(CLI::ExistingFile);
  auto setting = [&flags, cmd](const std::string& name, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        name, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, help);
  };
  setting("--n", "n", "Number of small eigenvalues to force (n >= 1)");
  setting("--N", "N", "Comma-separated list of copy multiplicities N");
  setting("--refine", "refine", "Midpoint refinement levels");
  setting("--tol", "tol", "Eigensolver relative residual tolerance");
  setting("--out", "out", "Output directory");
  setting("--seed", "seed", "Seed for the eigensolver start block");
  setting("--mass", "mass", "Mass matrix: consistent or lumped");
  setting("--testfn", "testfn", "Test functions: corrected or paper-literal");
}

hypcover::RunConfig resolve(const Flags& flags) {
  hypcover::RunConfig config;
  if (!flags.config.empty()) config = hypcover::loadConfigFile(flags.config);
  for (const auto& [key, value] : flags.overrides) hypcover::applySetting(config, key, value);
  config.validate();
  return config;
}

const char* yesNo(bool b) { return b ? "yes" : "NO"; }

int printBuild(const hypcover::RunConfig& config) {
  const auto out = hypcover::cmdBuild(config);
  for (const auto& f : out.files) std::cout << "wrote " << f.string() << '\n';
  return 0;
}

int printSweep(const hypcover::RunConfig& config) {
  const auto sweep = hypcover::cmdSweep(config);
  std::cout << std::setprecision(6);
  std::cout << "config " << sweep.configHash << '\n';
  std::cout << "     N      d     dof  lambda_n      bound         certificate  status\n";
  for (const auto& row : sweep.rows) {
    std::cout << std::setw(6) << row.N << ' ' << std::setw(6) << row.degree << ' ' << std::setw(7) << row.dof << "  ";
    if (row.failed) {
      std::cout << "failed: " << row.error << '\n';
      continue;
    }
    std::cout << std::setw(12) << row.report.lambdaN << ' ' << std::setw(12) << row.report.bound << ' '
              << std::setw(12) << row.report.certificate << "  "
              << (row.report.boundHolds && row.report.certificateHolds ? "ok" : "VIOLATED") << '\n';
  }
  std::cout << "lambda_n non-increasing: " << yesNo(sweep.monotone) << '\n'
            << "all bounds hold: " << yesNo(sweep.allBoundsHold) << '\n'
            << "all certificates hold: " << yesNo(sweep.allCertificatesHold) << '\n'
            << "wrote " << (config.outDir / "sweep.csv").string() << ", " << (config.outDir / "sweep.json").string()
            << '\n';
  return sweep.ok() ? 0 : 1;
}

int printConverge(const hypcover::RunConfig& config) {
  const auto result = hypcover::cmdConverge(config);
  std::cout << std::setprecision(8);
  for (std::size_t j = 0; j < result.levels.size(); ++j) {
    std::cout << "level " << result.levels[j] << " dof " << result.dofs[j] << " area " << result.areas[j] << " :";
    for (double l : result.eigenvalues[j]) std::cout << ' ' << l;
    std::cout << '\n';
  }
  for (std::size_t j = 0; j < result.ratios.size(); ++j) {
    std::cout << "ratios levels " << j << '-' << j + 2 << " :";
    for (double r : result.ratios[j]) std::cout << ' ' << r;
    std::cout << '\n';
  }
  std::cout << "ratios in [" << hypcover::kRatioLow << ", " << hypcover::kRatioHigh
            << "]: " << yesNo(result.ratiosInRange) << '\n';
  return result.ratiosInRange ? 0 : 1;
}

int printCorollary(const hypcover::RunConfig& config) {
  const auto result = hypcover::cmdCorollary(config);
  std::cout << std::setprecision(8);
  std::cout << "witness length (n+1) l(gamma) is an upper bound for l_n, not l_n itself\n";
  for (const auto& r : result.rows) {
    std::cout << "N " << r.N << " d " << r.degree << " genus " << r.genus << " witness " << r.witnessLength
              << " lambda_n " << r.lambdaN << " ratio " << r.ratio << '\n';
  }
  std::cout << "witness constant: " << yesNo(result.witnessConstant) << '\n'
            << "ratio strictly decreasing: " << yesNo(result.ratioDecreasing) << '\n'
            << "genus linear in N: " << yesNo(result.genusLinear) << '\n';
  return result.ok() ? 0 : 1;
}

int printOracle(const hypcover::RunConfig& config) {
  const auto result = hypcover::cmdOracleCheck(config);
  std::cout << std::setprecision(3);
  for (const auto& c : result.comparisons) {
    std::cout << (c.pass ? "ok   " : "FAIL ") << c.label << " dof " << c.dof << " max |dlambda| " << c.maxAbsDiff
              << '\n';
  }
  std::cout << "oracle agreement: " << yesNo(result.ok()) << '\n';
  return result.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed hyperbolic surfaces, cyclic covers and their small Laplace eigenvalues"};
  app.footer(kFooter);
  app.set_version_flag("--version", hypcover::kToolVersion);
  app.require_subcommand(1);

  Flags flags;
  auto* build = app.add_subcommand("build", "Write HYPMESH files for the base surface and each cover");
  auto* sweep = app.add_subcommand("sweep", "Eigenvalues and bound report for every N");
  auto* converge = app.add_subcommand("converge", "Refinement study of lambda_0..lambda_4 on the base surface");
  auto* corollary = app.add_subcommand("corollary", "Witness-length table built from the sweep");
  auto* oracle = app.add_subcommand("oracle-check", "Compare the sparse solver with the dense oracle");
  for (auto* cmd : {build, sweep, converge, corollary, oracle}) addCommonFlags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const hypcover::RunConfig config = resolve(flags);
    if (*build) return printBuild(config);
    if (*sweep) return printSweep(config);
    if (*converge) return printConverge(config);
    if (*corollary) return printCorollary(config);
    if (*oracle) return printOracle(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
