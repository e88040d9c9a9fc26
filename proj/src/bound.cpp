#include "hypcover/bound.h"

#include "hypcover/errors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace hypcover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Undirected vertex graph weighted by edge length.
class EdgeGraph {
public:
  explicit EdgeGraph(const TriangulatedSurface& surface) : adjacency_(surface.vertexCount()) {
    for (int f = 0; f < surface.faceCount(); ++f) {
      for (int k = 0; k < 3; ++k) {
        const SideRef s{f, k};
        const SideRef p = surface.partner(s);
        // Each interior edge once; boundary edges always.
        if (p.valid() && p < s) continue;
        const int a = surface.sideStart(s), b = surface.sideEnd(s);
        const double len = surface.sideLength(s);
        adjacency_[a].push_back({b, len});
        adjacency_[b].push_back({a, len});
      }
    }
  }

  std::vector<double> distances(const std::vector<int>& sources) const {
    std::vector<double> dist(adjacency_.size(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (int s : sources) {
      dist[s] = 0;
      queue.push({0.0, s});
    }
    while (!queue.empty()) {
      const auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[v]) continue;
      for (const auto& [w, len] : adjacency_[v]) {
        const double nd = d + len;
        if (nd < dist[w]) {
          dist[w] = nd;
          queue.push({nd, w});
        }
      }
    }
    return dist;
  }

private:
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

std::vector<int> curveVertices(const TriangulatedSurface& surface, const std::vector<MeshCurve>& curves) {
  std::vector<int> vertices;
  for (const MeshCurve& c : curves) {
    for (const SideRef& e : c.edges) vertices.push_back(surface.sideStart(e));
  }
  return vertices;
}

// Fraction of a triangle's area where the linear interpolant of the corner
// values is <= t.
double sublevelFraction(std::array<double, 3> v, double t) {
  std::sort(v.begin(), v.end());
  const double a = v[0], b = v[1], c = v[2];
  if (t <= a) return 0.0;
  if (t >= c) return 1.0;
  if (t <= b) return (t - a) * (t - a) / ((b - a) * (c - a));
  return 1.0 - (c - t) * (c - t) / ((c - a) * (c - b));
}

} // namespace

double collarWidth(double length) {
  if (!(length > 0)) throw InvalidInput("collar width needs a positive curve length");
  return std::asinh(1.0 / std::sinh(0.5 * length));
}

std::vector<double> distanceToCurves(const TriangulatedSurface& surface, const std::vector<MeshCurve>& curves) {
  const auto sources = curveVertices(surface, curves);
  if (sources.empty()) throw InvalidInput("distance needs at least one non-empty curve");
  return EdgeGraph(surface).distances(sources);
}

CollarData collarData(const CoverSurface& cover) {
  if (cover.lifts.empty()) throw InvalidInput("cover has no lifts");
  const TriangulatedSurface& s = cover.surface;
  const EdgeGraph graph(s);
  CollarData collar;
  collar.collarLemmaWidth = collarWidth(cover.lifts.front().length);

  double minClearance = kInf;
  for (std::size_t i = 0; i < cover.lifts.size(); ++i) {
    const auto dist = graph.distances(curveVertices(s, {cover.lifts[i]}));
    double clearance = kInf;
    for (std::size_t j = 0; j < cover.lifts.size(); ++j) {
      if (j == i) continue;
      for (int v : curveVertices(s, {cover.lifts[j]})) clearance = std::min(clearance, dist[v]);
    }
    collar.clearance.push_back(clearance);
    minClearance = std::min(minClearance, clearance);
  }
  collar.eta = std::min(collar.collarLemmaWidth, 0.5 * minClearance);
  collar.t = std::min(0.5 * collar.eta, kMaxRampWidth);
  return collar;
}

TestFunctions buildTestFunctions(const CoverSurface& cover, double t, TestFunctionVariant variant) {
  if (!(t > 0)) throw InvalidInput("ramp width must be positive");
  const TriangulatedSurface& s = cover.surface;
  const int pieces = cover.pieceCount();
  if (static_cast<int>(cover.lifts.size()) != pieces) throw InvalidInput("cover needs one lift per piece");

  // Vertex -> piece when every incident face lies in that piece, else -1.
  std::vector<int> home(s.vertexCount(), -2);
  for (int f = 0; f < s.faceCount(); ++f) {
    for (int v : s.faceVertices(f)) {
      if (home[v] == -2) home[v] = cover.pieceOf[f];
      else if (home[v] != cover.pieceOf[f]) home[v] = -1;
    }
  }

  const EdgeGraph graph(s);
  std::vector<std::vector<double>> liftDist;
  for (const MeshCurve& lift : cover.lifts) liftDist.push_back(graph.distances(curveVertices(s, {lift})));

  std::vector<std::vector<double>> rampDist(pieces, std::vector<double>(s.vertexCount()));
  double limit = t;
  for (int i = 0; i < pieces; ++i) {
    const auto& own = liftDist[i];
    const auto& previous = liftDist[(i + pieces - 1) % pieces];
    double deepest = 0;
    for (int v = 0; v < s.vertexCount(); ++v) {
      const double d = variant == TestFunctionVariant::Corrected ? std::min(own[v], previous[v]) : own[v];
      rampDist[i][v] = d;
      if (home[v] == i) deepest = std::max(deepest, d);
    }
    if (deepest < limit) limit = deepest;
  }
  if (!(limit > 0)) throw InvalidInput("a piece has no interior vertex");

  TestFunctions out;
  out.t = limit;
  out.tShrunk = limit < t;
  for (int i = 0; i < pieces; ++i) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(s.vertexCount());
    for (int v = 0; v < s.vertexCount(); ++v) {
      if (home[v] == i) f[v] = std::min(1.0, rampDist[i][v] / limit);
    }
    out.values.push_back(std::move(f));
  }
  return out;
}

double rayleigh(const SparsePencil& pencil, const Eigen::VectorXd& f) {
  if (f.size() != pencil.dof()) throw InvalidInput("function size does not match the pencil");
  const double mass = f.dot(pencil.B * f);
  if (!(mass > 0)) throw InvalidInput("Rayleigh quotient of a function with zero mass");
  return f.dot(pencil.K * f) / mass;
}

MinimaxCertificate minimaxCertificate(const SparsePencil& pencil, const TriangulatedSurface& surface,
                                      const std::vector<Eigen::VectorXd>& functions) {
  if (functions.empty()) throw InvalidInput("minimax certificate needs at least one function");
  for (int f = 0; f < surface.faceCount(); ++f) {
    int owner = -1;
    for (std::size_t i = 0; i < functions.size(); ++i) {
      bool supported = false;
      for (int v : surface.faceVertices(f)) supported = supported || functions[i][v] != 0.0;
      if (!supported) continue;
      if (owner >= 0) {
        std::ostringstream os;
        os << "functions " << owner + 1 << " and " << i + 1 << " overlap on triangle " << f;
        throw InvalidInput(os.str());
      }
      owner = static_cast<int>(i);
    }
  }

  MinimaxCertificate cert;
  std::vector<Eigen::VectorXd> Kf, Bf;
  for (const auto& f : functions) {
    Kf.push_back(pencil.K * f);
    Bf.push_back(pencil.B * f);
  }
  for (std::size_t i = 0; i < functions.size(); ++i) {
    for (std::size_t j = i + 1; j < functions.size(); ++j) {
      cert.maxCrossTermK = std::max(cert.maxCrossTermK, std::abs(functions[i].dot(Kf[j])));
      cert.maxCrossTermB = std::max(cert.maxCrossTermB, std::abs(functions[i].dot(Bf[j])));
    }
  }
  if (cert.maxCrossTermK != 0.0 || cert.maxCrossTermB != 0.0) {
    throw InvalidInput("test functions have non-vanishing cross terms");
  }
  for (const auto& f : functions) cert.quotients.push_back(rayleigh(pencil, f));
  cert.value = *std::max_element(cert.quotients.begin(), cert.quotients.end());
  return cert;
}

double computeHGeneral(const TriangulatedSurface& surface, const std::vector<int>& pieceOf,
                       const std::vector<MeshCurve>& interfaces) {
  if (static_cast<int>(pieceOf.size()) != surface.faceCount()) throw InvalidInput("piece labels must cover every face");
  const int pieces = pieceOf.empty() ? 0 : *std::max_element(pieceOf.begin(), pieceOf.end()) + 1;
  if (pieces < 2) throw InvalidInput("need at least two pieces");
  std::vector<double> area(pieces, 0.0);
  std::vector<int> faceCount(pieces, 0);
  for (int f = 0; f < surface.faceCount(); ++f) {
    if (pieceOf[f] < 0) throw InvalidInput("negative piece label");
    area[pieceOf[f]] += surface.faceArea(f);
    ++faceCount[pieceOf[f]];
  }
  for (int i = 0; i < pieces; ++i) {
    if (faceCount[i] == 0) throw InvalidInput("piece " + std::to_string(i + 1) + " is empty");
  }

  double length = 0;
  for (const MeshCurve& c : interfaces) {
    for (const SideRef& e : c.edges) {
      const SideRef p = surface.partner(e);
      if (!p.valid() || pieceOf[e.face] == pieceOf[p.face]) {
        throw InvalidInput("curve '" + c.name + "' does not run between two pieces");
      }
      length += surface.sideLength(e);
    }
  }
  return length / *std::min_element(area.begin(), area.end());
}

double sublevelArea(const TriangulatedSurface& surface, const std::vector<double>& dist, double t,
                    const std::vector<char>& inFace) {
  double area = 0;
  for (int f = 0; f < surface.faceCount(); ++f) {
    if (!inFace[f]) continue;
    const auto& v = surface.faceVertices(f);
    const double fraction = sublevelFraction({dist[v[0]], dist[v[1]], dist[v[2]]}, t);
    if (fraction > 0) area += fraction * surface.faceArea(f);
  }
  return area;
}

std::vector<HalfCollarArea> halfCollarAreas(const CoverSurface& cover, double t) {
  const TriangulatedSurface& s = cover.surface;
  const EdgeGraph graph(s);
  const int pieces = cover.pieceCount();
  std::vector<HalfCollarArea> out;
  for (int i = 0; i < static_cast<int>(cover.lifts.size()); ++i) {
    const auto dist = graph.distances(curveVertices(s, {cover.lifts[i]}));
    std::vector<char> inside(s.faceCount()), outside(s.faceCount());
    for (int f = 0; f < s.faceCount(); ++f) {
      inside[f] = cover.pieceOf[f] == i;
      outside[f] = cover.pieceOf[f] == (i + 1) % pieces;
    }
    HalfCollarArea h;
    h.lift = i + 1;
    h.insideArea = sublevelArea(s, dist, t, inside);
    h.outsideArea = sublevelArea(s, dist, t, outside);
    h.reference = cover.lifts[i].length * std::sinh(t);
    out.push_back(h);
  }
  return out;
}

BoundReport boundReport(const CoverSurface& cover, const SparsePencil& pencil, const SpectrumResult& spectrum,
                        double baseArea, TestFunctionVariant variant) {
  if (static_cast<int>(spectrum.eigenvalues.size()) <= cover.n) {
    throw InvalidInput("spectrum does not contain lambda_n");
  }
  BoundReport r;
  r.n = cover.n;
  r.N = cover.N;
  r.degree = cover.degree;
  r.genus = cover.surface.genus();
  r.variant = variant;
  r.gammaLength = cover.lifts.front().length;
  r.baseArea = baseArea;
  r.pieceArea = cover.pieceArea(0);
  r.h = (cover.n + 1) * r.gammaLength / r.pieceArea;
  r.hGeneral = computeHGeneral(cover.surface, cover.pieceOf, cover.lifts);
  r.witnessLength = (cover.n + 1) * r.gammaLength;

  const CollarData collar = collarData(cover);
  r.eta = collar.eta;
  const TestFunctions fns = buildTestFunctions(cover, collar.t, variant);
  r.t = fns.t;
  r.tShrunk = fns.tShrunk;

  const MinimaxCertificate cert = minimaxCertificate(pencil, cover.surface, fns.values);
  r.rayleighQuotients = cert.quotients;
  r.certificate = cert.value;
  r.lambdaN = spectrum.eigenvalues[cover.n];
  r.scale = pencilScale(pencil);

  r.cEta = 2.0 / r.eta;
  r.bound = r.cEta * (r.h + r.h * r.h);
  r.conservativeBound = 2.0 * r.bound;
  r.boundHolds = r.lambdaN <= r.bound + kBoundSlack;
  r.conservativeBoundHolds = r.lambdaN <= r.conservativeBound + kBoundSlack;
  r.certificateHolds = r.lambdaN <= r.certificate + kCertificateSlackRelative * r.scale;

  r.halfCollars = halfCollarAreas(cover, r.t);
  const double sh = std::sinh(r.t);
  const double k = 1.0 / (cover.n + 1);
  bool collarsOk = true;
  for (const auto& hc : r.halfCollars) collarsOk = collarsOk && hc.insideArea <= hc.reference;
  r.chainSteps = {
      {"half-collar area <= l(gamma) sinh(t)", collarsOk},
      {"sinh(t) < 1", sh < 1.0},
      {"h sinh(t) / (n+1) < 1", k * r.h * sh < 1.0},
      {"k h sinh(t) / (1 - k h sinh(t)) <= h sinh(t) / (1 - sinh(t)), k = 1/(n+1)",
       sh < 1.0 && k * r.h * sh < 1.0 && k / (1.0 - k * r.h * sh) <= 1.0 / (1.0 - sh)},
      {"sinh(t) / t^2 <= 1 / t", sh <= r.t},
      {"1 / t <= 2 / eta", 1.0 / r.t <= (2.0 / r.eta) * (1.0 + 1e-12)},
      {"1 / (1 - sinh(t)) <= 1 + h", sh < 1.0 && 1.0 / (1.0 - sh) <= 1.0 + r.h},
  };
  r.chainAssumptionsHold =
      std::all_of(r.chainSteps.begin(), r.chainSteps.end(), [](const ChainStep& s) { return s.holds; });
  return r;
}

} // namespace hypcover
