#include "hypcover/hypmesh_io.h"

#include "hypcover/errors.h"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hypcover {

namespace {

void writeCurveBody(std::ostream& out, const MeshCurve& curve) {
  for (const SideRef& e : curve.edges) out << e.face << ' ' << e.side << '\n';
}

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineNo_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line[0] == '#') {
        comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
        continue;
      }
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("HYPMESH line " + std::to_string(lineNo_) + ": " + what);
  }

  std::vector<std::string> comments;

private:
  std::istream& in_;
  int lineNo_ = 0;
};

std::vector<SideRef> readSides(LineReader& reader, int count) {
  std::vector<SideRef> sides;
  std::string line;
  for (int i = 0; i < count; ++i) {
    if (!reader.next(line)) reader.fail("truncated curve block");
    std::istringstream ls(line);
    SideRef s;
    if (!(ls >> s.face >> s.side)) reader.fail("expected `face side`");
    sides.push_back(s);
  }
  return sides;
}

std::vector<int> readIntList(LineReader& reader) {
  std::string line;
  if (!reader.next(line)) reader.fail("missing index list");
  std::istringstream ls(line);
  std::vector<int> values;
  int v = 0;
  while (ls >> v) values.push_back(v);
  return values;
}

} // namespace

void writeHypmesh(std::ostream& out, const HypmeshDocument& doc) {
  const TriangulatedSurface& s = doc.surface;
  if (!s.isClosed()) throw InvalidInput("HYPMESH stores closed surfaces only");
  out << "HYPMESH 1\n";
  out << "F " << s.faceCount() << " G " << s.genus() << '\n';
  for (const auto& c : doc.comments) out << "# " << c << '\n';

  out << std::setprecision(17);
  for (int f = 0; f < s.faceCount(); ++f) {
    const auto& v = s.faceVertices(f);
    const auto& l = s.faceLengths(f);
    out << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << l[0] << ' ' << l[1] << ' ' << l[2] << '\n';
  }
  for (int f = 0; f < s.faceCount(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const SideRef p = s.partner({f, k});
      if (SideRef{f, k} < p) out << f << ' ' << k << ' ' << p.face << ' ' << p.side << '\n';
    }
  }
  for (const auto& curve : doc.curves) {
    out << "CURVE " << curve.name << ' ' << curve.edges.size() << '\n';
    writeCurveBody(out, curve);
  }
  if (doc.deckDegree > 0) {
    out << "DECK " << doc.deckDegree << '\n';
    for (std::size_t i = 0; i < doc.deckPermutation.size(); ++i) {
      out << (i ? " " : "") << doc.deckPermutation[i];
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < doc.pieces.size(); ++i) {
    out << "PIECE " << i + 1 << '\n';
    for (std::size_t j = 0; j < doc.pieces[i].size(); ++j) out << (j ? " " : "") << doc.pieces[i][j];
    out << '\n';
  }
  for (std::size_t i = 0; i < doc.lifts.size(); ++i) {
    out << "LIFT " << i + 1 << ' ' << doc.lifts[i].edges.size() << '\n';
    writeCurveBody(out, doc.lifts[i]);
  }
}

void writeHypmesh(const std::filesystem::path& path, const HypmeshDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  writeHypmesh(out, doc);
  if (!out) throw Error("write failed for " + path.string());
}

HypmeshDocument readHypmesh(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line) || line != "HYPMESH 1") reader.fail("expected header `HYPMESH 1`");
  if (!reader.next(line)) reader.fail("missing face count line");
  int faceCount = 0, genus = 0;
  {
    std::istringstream ls(line);
    std::string fTag, gTag;
    if (!(ls >> fTag >> faceCount >> gTag >> genus) || fTag != "F" || gTag != "G" || faceCount <= 0) {
      reader.fail("expected `F <face-count> G <genus>`");
    }
  }

  std::vector<std::array<int, 3>> vertices(faceCount);
  std::vector<TriangulatedSurface::Lengths> lengths(faceCount);
  for (int f = 0; f < faceCount; ++f) {
    if (!reader.next(line)) reader.fail("truncated face list");
    std::istringstream ls(line);
    auto& v = vertices[f];
    auto& l = lengths[f];
    if (!(ls >> v[0] >> v[1] >> v[2] >> l[0] >> l[1] >> l[2])) reader.fail("malformed face line");
  }

  std::vector<TriangulatedSurface::Gluing> gluing(faceCount);
  HypmeshDocument doc;
  bool pending = reader.next(line);
  while (pending && std::isdigit(static_cast<unsigned char>(line[0]))) {
    std::istringstream ls(line);
    SideRef a, b;
    if (!(ls >> a.face >> a.side >> b.face >> b.side)) reader.fail("malformed gluing line");
    for (const SideRef& s : {a, b}) {
      if (s.face < 0 || s.face >= faceCount || s.side < 0 || s.side > 2) reader.fail("gluing index out of range");
    }
    gluing[a.face][a.side] = b;
    gluing[b.face][b.side] = a;
    pending = reader.next(line);
  }
  doc.surface = TriangulatedSurface::fromGluing(std::move(lengths), std::move(gluing));
  for (int f = 0; f < faceCount; ++f) {
    if (doc.surface.faceVertices(f) != vertices[f]) {
      throw InvalidInput("HYPMESH vertex labels disagree with the gluing at face " + std::to_string(f));
    }
  }
  if (doc.surface.isClosed() && doc.surface.genus() != genus) throw InvalidInput("HYPMESH genus disagrees with mesh");

  while (pending) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "CURVE" || tag == "LIFT") {
      std::string name;
      int count = 0;
      if (!(ls >> name >> count) || count <= 0) reader.fail("malformed " + tag + " header");
      auto sides = readSides(reader, count);
      auto curve = makeCurve(doc.surface, std::move(sides), tag == "LIFT" ? "lift" + name : name);
      (tag == "LIFT" ? doc.lifts : doc.curves).push_back(std::move(curve));
    } else if (tag == "DECK") {
      if (!(ls >> doc.deckDegree) || doc.deckDegree <= 0) reader.fail("malformed DECK header");
      doc.deckPermutation = readIntList(reader);
      if (static_cast<int>(doc.deckPermutation.size()) != faceCount) reader.fail("DECK permutation has wrong size");
    } else if (tag == "PIECE") {
      doc.pieces.push_back(readIntList(reader));
    } else {
      reader.fail("unknown block `" + tag + "`");
    }
    pending = reader.next(line);
  }
  doc.comments = std::move(reader.comments);
  return doc;
}

HypmeshDocument readHypmesh(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return readHypmesh(in);
}

} // namespace hypcover
