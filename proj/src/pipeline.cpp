#include "hypcover/pipeline.h"

#include "hypcover/cover.h"
#include "hypcover/errors.h"
#include "hypcover/hypmesh_io.h"
#include "hypcover/spectrum.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace hypcover {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parseDouble(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("setting '" + key + "': '" + s + "' is not a number");
  }
}

long long parseInt(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("setting '" + key + "': '" + s + "' is not an integer");
  }
}

std::string formatDouble(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

template <typename T>
std::string joinList(const T& values) {
  std::ostringstream os;
  os << std::setprecision(17);
  bool first = true;
  for (const auto& v : values) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  return os.str();
}

const char* variantName(TestFunctionVariant v) { return v == TestFunctionVariant::Corrected ? "corrected" : "literal"; }
const char* massName(MassKind m) { return m == MassKind::Consistent ? "consistent" : "lumped"; }

void ensureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
}

void writeText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct PreparedBase {
  BaseSurface base;
  RefinedSurface refined;  // surface at the configured level, curve 0 = gamma
  double area = 0;
};

PreparedBase prepareBase(const RunConfig& config, int levels) {
  PreparedBase p;
  p.base = buildSurface(config.surfaceSpec());
  p.refined = refineTimes(p.base.surface, {p.base.gamma}, levels);
  p.area = p.refined.surface.totalArea();
  return p;
}

} // namespace

void RunConfig::validate() const {
  for (double l : cuffs) {
    if (!(l > 0) || !std::isfinite(l)) throw InvalidInput("cuff lengths must be positive");
  }
  if (m < 4 || m % 2 != 0) throw InvalidInput("m must be even and at least 4");
  if (refine < 0) throw InvalidInput("refine must be non-negative");
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (Ns.empty()) throw InvalidInput("need at least one N");
  for (int N : Ns) {
    if (N < 1) throw InvalidInput("every N must be at least 1");
  }
  if (!(tol > 0)) throw InvalidInput("tol must be positive");
}

FenchelNielsenSpec RunConfig::surfaceSpec() const {
  FenchelNielsenSpec spec;
  spec.cuffLengths = cuffs;
  spec.twists = twists;
  spec.cuffSubdivisions = m;
  return spec;
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "cuffs=" << joinList(cuffs) << '\n'
     << "twists=" << joinList(twists) << '\n'
     << "m=" << m << '\n'
     << "refine=" << refine << '\n'
     << "n=" << n << '\n'
     << "N=" << joinList(Ns) << '\n'
     << "tol=" << formatDouble(tol) << '\n'
     << "seed=" << seed << '\n'
     << "mass=" << massName(mass) << '\n'
     << "testfn=" << variantName(testfn) << '\n';
  return os.str();
}

std::string RunConfig::hash() const { return sha256Hex(canonical()); }

void applySetting(RunConfig& config, const std::string& rawKey, const std::string& rawValue) {
  const std::string key = trim(rawKey), value = trim(rawValue);
  auto threeOf = [&](auto parse) {
    const auto parts = splitList(value);
    if (parts.size() != 3) throw InvalidInput("setting '" + key + "' needs three comma-separated values");
    return std::array{parse(parts[0]), parse(parts[1]), parse(parts[2])};
  };
  if (key == "cuffs") {
    config.cuffs = threeOf([&](const std::string& s) { return parseDouble(key, s); });
  } else if (key == "twists") {
    config.twists = threeOf([&](const std::string& s) { return static_cast<int>(parseInt(key, s)); });
  } else if (key == "m") {
    config.m = static_cast<int>(parseInt(key, value));
  } else if (key == "refine" || key == "r") {
    config.refine = static_cast<int>(parseInt(key, value));
  } else if (key == "n") {
    config.n = static_cast<int>(parseInt(key, value));
  } else if (key == "N") {
    config.Ns.clear();
    for (const auto& part : splitList(value)) config.Ns.push_back(static_cast<int>(parseInt(key, part)));
  } else if (key == "tol") {
    config.tol = parseDouble(key, value);
  } else if (key == "out") {
    config.outDir = value;
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parseInt(key, value));
  } else if (key == "mass") {
    if (value == "consistent") config.mass = MassKind::Consistent;
    else if (value == "lumped") config.mass = MassKind::Lumped;
    else throw InvalidInput("mass must be 'consistent' or 'lumped'");
  } else if (key == "testfn") {
    if (value == "corrected") config.testfn = TestFunctionVariant::Corrected;
    else if (value == "paper-literal" || value == "literal") config.testfn = TestFunctionVariant::Literal;
    else throw InvalidInput("testfn must be 'corrected' or 'paper-literal'");
  } else {
    throw InvalidInput("unknown setting '" + key + "'");
  }
}

RunConfig loadConfigFile(const fs::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput(path.string() + ":" + std::to_string(lineNo) + ": expected `key = value`");
    }
    applySetting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

std::string sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < length; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

// ---------------------------------------------------------------- build

BuildOutput cmdBuild(const RunConfig& config) {
  config.validate();
  ensureDir(config.outDir);
  const PreparedBase prepared = prepareBase(config, config.refine);
  const std::string hash = config.hash();

  BuildOutput out;
  HypmeshDocument baseDoc;
  baseDoc.surface = prepared.refined.surface;
  baseDoc.curves = {prepared.refined.curves.front()};
  for (int i = 1; i < 3; ++i) {
    baseDoc.curves.push_back(refineTimes(prepared.base.surface, {prepared.base.cuffs[i]}, config.refine).curves[0]);
  }
  baseDoc.comments = {
      "area " + formatDouble(prepared.area),
      "cuffs " + joinList(config.cuffs) + " applied-twists " + joinList(prepared.base.appliedTwists),
      "cuff-subdivisions " + std::to_string(config.m) + " refinement " + std::to_string(config.refine),
      "config " + hash,
  };
  const fs::path basePath = config.outDir / "base.hypmesh";
  writeHypmesh(basePath, baseDoc);
  out.files.push_back(basePath);

  for (int N : config.Ns) {
    const CoverSurface cover = cyclicCover(prepared.refined.surface, prepared.refined.curves.front(), config.n, N);
    const auto doc = toDocument(cover, {"area " + formatDouble(cover.surface.totalArea()),
                                        "n " + std::to_string(config.n) + " N " + std::to_string(N) + " degree " +
                                            std::to_string(cover.degree),
                                        "config " + hash});
    const fs::path path = config.outDir / ("cover_n" + std::to_string(config.n) + "_N" + std::to_string(N) + ".hypmesh");
    writeHypmesh(path, doc);
    out.files.push_back(path);
  }
  return out;
}

// ---------------------------------------------------------------- sweep

SweepResult runSweep(const RunConfig& config) {
  config.validate();
  const PreparedBase prepared = prepareBase(config, config.refine);
  SweepResult result;
  result.configHash = config.hash();

  std::vector<int> Ns = config.Ns;
  std::sort(Ns.begin(), Ns.end());
  Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());

  for (int N : Ns) {
    SweepRow row;
    row.configHash = result.configHash;
    row.N = N;
    try {
      const CoverSurface cover = cyclicCover(prepared.refined.surface, prepared.refined.curves.front(), config.n, N);
      row.degree = cover.degree;
      row.genus = cover.surface.genus();
      const SparsePencil pencil = assemble(cover.surface, config.mass);
      row.dof = pencil.dof();
      SolverOptions opts;
      opts.tol = config.tol;
      opts.seed = config.seed;
      const SpectrumResult spectrum = solveSmallest(pencil, std::min(config.n + 2, pencil.dof()), opts);
      row.eigenvalues = spectrum.eigenvalues;
      row.report = boundReport(cover, pencil, spectrum, prepared.area, config.testfn);
    } catch (const Error& e) {
      row.failed = true;
      row.error = e.what();
    }
    result.rows.push_back(std::move(row));
  }

  result.allBoundsHold = true;
  result.allCertificatesHold = true;
  result.monotone = true;
  const SweepRow* previous = nullptr;
  for (const SweepRow& row : result.rows) {
    if (row.failed) {
      result.allBoundsHold = result.allCertificatesHold = result.monotone = false;
      continue;
    }
    result.allBoundsHold = result.allBoundsHold && row.report.boundHolds;
    result.allCertificatesHold = result.allCertificatesHold && row.report.certificateHolds;
    if (previous && row.report.lambdaN > previous->report.lambdaN * (1.0 + kMonotoneSlack)) result.monotone = false;
    previous = &row;
  }
  return result;
}

json toJson(const BoundReport& r, const std::string& configHash) {
  json steps = json::array();
  for (const auto& s : r.chainSteps) steps.push_back({{"step", s.name}, {"holds", s.holds}});
  json collars = json::array();
  for (const auto& c : r.halfCollars) {
    collars.push_back({{"lift", c.lift},
                       {"inside_area", c.insideArea},
                       {"outside_area", c.outsideArea},
                       {"l_sinh_t", c.reference}});
  }
  return {
      {"tool_version", kToolVersion},
      {"input_spec_hash", configHash},
      {"n", r.n},
      {"N", r.N},
      {"d", r.degree},
      {"genus", r.genus},
      {"l_gamma", r.gammaLength},
      {"area_M", r.baseArea},
      {"area_A1", r.pieceArea},
      {"h", r.h},
      {"h_general", r.hGeneral},
      {"eta", r.eta},
      {"t", r.t},
      {"t_shrunk", r.tShrunk},
      {"C_eta", r.cEta},
      {"bound", r.bound},
      {"conservative_bound", r.conservativeBound},
      {"rayleigh_quotients", r.rayleighQuotients},
      {"certificate", r.certificate},
      {"lambda_n", r.lambdaN},
      {"scale", r.scale},
      {"witness_length", r.witnessLength},
      {"test_functions", variantName(r.variant)},
      {"bound_holds", r.boundHolds},
      {"conservative_bound_holds", r.conservativeBoundHolds},
      {"certificate_holds", r.certificateHolds},
      {"chain_assumptions_hold", r.chainAssumptionsHold},
      {"chain_steps", steps},
      {"half_collars", collars},
  };
}

json toJson(const SweepResult& sweep, const RunConfig& config) {
  json rows = json::array();
  for (const auto& row : sweep.rows) {
    json j = {{"config_hash", row.configHash},
              {"N", row.N},
              {"d", row.degree},
              {"dof", row.dof},
              {"genus", row.genus},
              {"eigenvalues", row.eigenvalues},
              {"status", row.failed ? "failed" : "ok"}};
    if (row.failed) j["error"] = row.error;
    else j["report"] = toJson(row.report, row.configHash);
    rows.push_back(std::move(j));
  }
  return {
      {"tool_version", kToolVersion},
      {"config_hash", sweep.configHash},
      {"config", config.canonical()},
      {"generated_at", timestamp()},
      {"rows", rows},
      {"checks",
       {{"lambda_n_non_increasing", sweep.monotone},
        {"all_bounds_hold", sweep.allBoundsHold},
        {"all_certificates_hold", sweep.allCertificatesHold}}},
  };
}

SweepResult sweepFromJson(const json& j) {
  SweepResult sweep;
  sweep.configHash = j.at("config_hash").get<std::string>();
  for (const auto& r : j.at("rows")) {
    SweepRow row;
    row.configHash = r.at("config_hash").get<std::string>();
    if (row.configHash != sweep.configHash) throw InvalidInput("sweep rows come from different configurations");
    row.N = r.at("N").get<int>();
    row.degree = r.at("d").get<int>();
    row.dof = r.at("dof").get<int>();
    row.genus = r.at("genus").get<int>();
    row.eigenvalues = r.at("eigenvalues").get<std::vector<double>>();
    row.failed = r.at("status").get<std::string>() != "ok";
    if (row.failed) {
      row.error = r.value("error", "");
    } else {
      const auto& rep = r.at("report");
      row.report.n = rep.at("n").get<int>();
      row.report.N = rep.at("N").get<int>();
      row.report.degree = rep.at("d").get<int>();
      row.report.genus = rep.at("genus").get<int>();
      row.report.gammaLength = rep.at("l_gamma").get<double>();
      row.report.h = rep.at("h").get<double>();
      row.report.bound = rep.at("bound").get<double>();
      row.report.certificate = rep.at("certificate").get<double>();
      row.report.lambdaN = rep.at("lambda_n").get<double>();
      row.report.witnessLength = rep.at("witness_length").get<double>();
      row.report.boundHolds = rep.at("bound_holds").get<bool>();
      row.report.certificateHolds = rep.at("certificate_holds").get<bool>();
    }
    sweep.rows.push_back(std::move(row));
  }
  const auto& checks = j.at("checks");
  sweep.monotone = checks.at("lambda_n_non_increasing").get<bool>();
  sweep.allBoundsHold = checks.at("all_bounds_hold").get<bool>();
  sweep.allCertificatesHold = checks.at("all_certificates_hold").get<bool>();
  return sweep;
}

SweepResult cmdSweep(const RunConfig& config) {
  SweepResult sweep = runSweep(config);
  ensureDir(config.outDir);

  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "config_hash,N,d,dof,genus";
  for (int k = 0; k <= config.n + 1; ++k) csv << ",lambda_" << k;
  csv << ",h,eta,t,C_eta,bound,conservative_bound,certificate,bound_holds,certificate_holds,chain_assumptions_hold,"
         "status\n";
  for (const auto& row : sweep.rows) {
    csv << row.configHash << ',' << row.N << ',' << row.degree << ',' << row.dof << ',' << row.genus;
    for (int k = 0; k <= config.n + 1; ++k) {
      csv << ',';
      if (k < static_cast<int>(row.eigenvalues.size())) csv << row.eigenvalues[k];
    }
    const auto& r = row.report;
    if (row.failed) {
      csv << ",,,,,,,,,,,failed\n";
      continue;
    }
    csv << ',' << r.h << ',' << r.eta << ',' << r.t << ',' << r.cEta << ',' << r.bound << ',' << r.conservativeBound
        << ',' << r.certificate << ',' << r.boundHolds << ',' << r.certificateHolds << ',' << r.chainAssumptionsHold
        << ",ok\n";
  }
  writeText(config.outDir / "sweep.csv", csv.str());
  writeText(config.outDir / "sweep.json", toJson(sweep, config).dump(2) + "\n");
  return sweep;
}

// ---------------------------------------------------------------- converge

ConvergeResult runConverge(const RunConfig& config) {
  config.validate();
  if (config.refine < 2) throw InvalidInput("converge needs at least two refinement levels (refine >= 2)");
  constexpr int kCount = 5;
  const BaseSurface base = buildSurface(config.surfaceSpec());
  ConvergeResult result;
  TriangulatedSurface current = base.surface;
  SolverOptions opts;
  opts.tol = config.tol;
  opts.seed = config.seed;
  for (int level = 0; level <= config.refine; ++level) {
    if (level > 0) current = refine(current).surface;
    const SparsePencil pencil = assemble(current, config.mass);
    const SpectrumResult spectrum = solveSmallest(pencil, kCount, opts);
    result.levels.push_back(level);
    result.dofs.push_back(pencil.dof());
    result.areas.push_back(current.totalArea());
    result.eigenvalues.push_back(spectrum.eigenvalues);
  }
  result.ratiosInRange = true;
  for (std::size_t j = 0; j + 2 < result.eigenvalues.size(); ++j) {
    std::vector<double> ratios;
    for (int k = 1; k < kCount; ++k) {
      const auto& e = result.eigenvalues;
      const double ratio = (e[j][k] - e[j + 1][k]) / (e[j + 1][k] - e[j + 2][k]);
      ratios.push_back(ratio);
      if (!(ratio >= kRatioLow && ratio <= kRatioHigh)) result.ratiosInRange = false;
    }
    result.ratios.push_back(std::move(ratios));
  }
  return result;
}

ConvergeResult cmdConverge(const RunConfig& config) {
  ConvergeResult result = runConverge(config);
  ensureDir(config.outDir);
  const std::string hash = config.hash();
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "config_hash,level,dof,area,lambda_0,lambda_1,lambda_2,lambda_3,lambda_4,ratio_1,ratio_2,ratio_3,ratio_4\n";
  json levels = json::array();
  for (std::size_t j = 0; j < result.levels.size(); ++j) {
    csv << hash << ',' << result.levels[j] << ',' << result.dofs[j] << ',' << result.areas[j];
    for (double l : result.eigenvalues[j]) csv << ',' << l;
    // Ratio for the triple ending at this level.
    for (int k = 0; k < 4; ++k) {
      csv << ',';
      if (j >= 2) csv << result.ratios[j - 2][k];
    }
    csv << '\n';
    levels.push_back({{"level", result.levels[j]},
                      {"dof", result.dofs[j]},
                      {"area", result.areas[j]},
                      {"eigenvalues", result.eigenvalues[j]}});
  }
  writeText(config.outDir / "converge.csv", csv.str());
  json j = {{"tool_version", kToolVersion},
            {"config_hash", hash},
            {"generated_at", timestamp()},
            {"levels", levels},
            {"ratios", result.ratios},
            {"ratio_range", {kRatioLow, kRatioHigh}},
            {"ratios_in_range", result.ratiosInRange}};
  writeText(config.outDir / "converge.json", j.dump(2) + "\n");
  return result;
}

// ---------------------------------------------------------------- corollary

CorollaryResult corollaryFromSweep(const SweepResult& sweep, int baseGenus) {
  CorollaryResult result;
  for (const auto& row : sweep.rows) {
    if (row.configHash != sweep.configHash) throw InvalidInput("refusing to aggregate rows from mixed configurations");
    if (row.failed) throw InvalidInput("sweep row N=" + std::to_string(row.N) + " failed: " + row.error);
    CorollaryRow c;
    c.N = row.N;
    c.degree = row.degree;
    c.genus = row.genus;
    c.witnessLength = row.report.witnessLength;
    c.lambdaN = row.report.lambdaN;
    c.ratio = c.lambdaN / c.witnessLength;
    result.rows.push_back(c);
  }
  result.witnessConstant = result.ratioDecreasing = result.genusLinear = !result.rows.empty();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    if (r.witnessLength != result.rows.front().witnessLength) result.witnessConstant = false;
    // genus of a degree-d cover: 1 + d (g - 1)
    if (r.genus != 1 + r.degree * (baseGenus - 1)) result.genusLinear = false;
    if (i > 0 && !(r.ratio < result.rows[i - 1].ratio)) result.ratioDecreasing = false;
  }
  return result;
}

CorollaryResult cmdCorollary(const RunConfig& config) {
  config.validate();
  const fs::path sweepPath = config.outDir / "sweep.json";
  SweepResult sweep;
  bool loaded = false;
  if (fs::exists(sweepPath)) {
    std::ifstream in(sweepPath);
    const json j = json::parse(in);
    if (j.value("config_hash", "") == config.hash()) {
      sweep = sweepFromJson(j);
      loaded = true;
    }
  }
  if (!loaded) sweep = cmdSweep(config);

  const int baseGenus = buildSurface(config.surfaceSpec()).surface.genus();
  CorollaryResult result = corollaryFromSweep(sweep, baseGenus);

  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "config_hash,N,d,genus,witness_length_upper_bound_l_n,lambda_n,lambda_n_over_witness\n";
  json rows = json::array();
  for (const auto& r : result.rows) {
    csv << sweep.configHash << ',' << r.N << ',' << r.degree << ',' << r.genus << ',' << r.witnessLength << ','
        << r.lambdaN << ',' << r.ratio << '\n';
    rows.push_back({{"N", r.N},
                    {"d", r.degree},
                    {"genus", r.genus},
                    {"witness_length", r.witnessLength},
                    {"lambda_n", r.lambdaN},
                    {"ratio", r.ratio}});
  }
  ensureDir(config.outDir);
  writeText(config.outDir / "corollary.csv", csv.str());
  json j = {{"tool_version", kToolVersion},
            {"config_hash", sweep.configHash},
            {"generated_at", timestamp()},
            {"note",
             "witness_length is the total length (n+1) l(gamma) of the lifted multicurve cutting the cover into n+1 "
             "pieces; it is an upper bound for l_n, not l_n itself. lambda_n / witness_length tending to 0 while the "
             "genus grows means no genus-independent constant C_1 can satisfy C_1 l_n <= lambda_n."},
            {"rows", rows},
            {"checks",
             {{"witness_constant", result.witnessConstant},
              {"ratio_strictly_decreasing", result.ratioDecreasing},
              {"genus_linear_in_N", result.genusLinear}}}};
  writeText(config.outDir / "corollary.json", j.dump(2) + "\n");
  return result;
}

// ---------------------------------------------------------------- oracle check

SparsePencil randomPencil(std::uint64_t seed, int dof) {
  if (dof < 2) throw InvalidInput("random pencil needs at least two dof");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  std::uniform_int_distribution<int> pick(0, dof - 1);

  std::vector<Eigen::Triplet<double>> k, b;
  auto addEdge = [&](int i, int j) {
    const double w = weight(rng);
    k.emplace_back(i, j, -w);
    k.emplace_back(j, i, -w);
    k.emplace_back(i, i, w);
    k.emplace_back(j, j, w);
    const double m = 0.1 * weight(rng);
    b.emplace_back(i, j, m);
    b.emplace_back(j, i, m);
    b.emplace_back(i, i, m);
    b.emplace_back(j, j, m);
  };
  // Ring keeps the graph connected; chords add irregularity.
  for (int i = 0; i < dof; ++i) addEdge(i, (i + 1) % dof);
  for (int c = 0; c < dof; ++c) {
    const int i = pick(rng), j = pick(rng);
    if (i != j) addEdge(i, j);
  }
  for (int i = 0; i < dof; ++i) b.emplace_back(i, i, weight(rng));

  SparsePencil p;
  p.K.resize(dof, dof);
  p.B.resize(dof, dof);
  p.K.setFromTriplets(k.begin(), k.end());
  p.B.setFromTriplets(b.begin(), b.end());
  return p;
}

bool OracleCheckResult::ok() const {
  return !comparisons.empty() &&
         std::all_of(comparisons.begin(), comparisons.end(), [](const OracleComparison& c) { return c.pass; });
}

OracleCheckResult runOracleCheck(const RunConfig& config) {
  config.validate();
  OracleCheckResult result;
  SolverOptions opts;
  opts.tol = config.tol;
  opts.seed = config.seed;

  auto compare = [&](const std::string& label, const SparsePencil& pencil) {
    const int count = std::min(kOracleEigenCount, pencil.dof());
    const SpectrumResult sparse = solveSmallest(pencil, count, opts);
    const SpectrumResult dense = denseOracle(pencil, count);
    OracleComparison c;
    c.label = label;
    c.dof = pencil.dof();
    c.pass = true;
    for (int i = 0; i < count; ++i) {
      const double diff = std::abs(sparse.eigenvalues[i] - dense.eigenvalues[i]);
      c.maxAbsDiff = std::max(c.maxAbsDiff, diff);
      if (!(diff <= 1e-8 * std::max(1.0, std::abs(dense.eigenvalues[i])))) c.pass = false;
    }
    result.comparisons.push_back(c);
  };

  std::mt19937_64 sizes(config.seed);
  std::uniform_int_distribution<int> dofDist(12, 200);
  for (int i = 0; i < kOracleRandomPencils; ++i) {
    compare("random-" + std::to_string(i + 1), randomPencil(config.seed + 1 + i, dofDist(sizes)));
  }

  const BaseSurface base = buildSurface(config.surfaceSpec());
  std::vector<std::pair<std::string, TriangulatedSurface>> meshes;
  meshes.emplace_back("base-refine1", refine(base.surface).surface);
  meshes.emplace_back("cover-N1", cyclicCover(base.surface, base.gamma, config.n, 1).surface);
  meshes.emplace_back("cover-N2", cyclicCover(base.surface, base.gamma, config.n, 2).surface);
  for (const auto& [label, mesh] : meshes) {
    if (mesh.vertexCount() > 500) continue;
    compare(label, assemble(mesh, config.mass));
  }
  return result;
}

OracleCheckResult cmdOracleCheck(const RunConfig& config) {
  OracleCheckResult result = runOracleCheck(config);
  ensureDir(config.outDir);
  json rows = json::array();
  for (const auto& c : result.comparisons) {
    rows.push_back({{"label", c.label}, {"dof", c.dof}, {"max_abs_diff", c.maxAbsDiff}, {"pass", c.pass}});
  }
  json j = {{"tool_version", kToolVersion},
            {"config_hash", config.hash()},
            {"generated_at", timestamp()},
            {"eigenvalue_count", kOracleEigenCount},
            {"tolerance", "1e-8 * max(1, lambda)"},
            {"comparisons", rows},
            {"ok", result.ok()}};
  writeText(config.outDir / "oracle_check.json", j.dump(2) + "\n");
  return result;
}

} // namespace hypcover
