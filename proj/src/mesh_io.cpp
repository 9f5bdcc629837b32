#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ptg/error.hpp"
#include "ptg/mesh.hpp"

namespace ptg {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Non-blank, non-comment lines with their 1-based numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      lines_.push_back(text.substr(pos, end - pos));
      pos = end + 1;
    }
  }

  bool next(Line& out) {
    while (cursor_ < lines_.size()) {
      auto tokens = split(lines_[cursor_++]);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      out.number = cursor_;
      out.tokens = std::move(tokens);
      return true;
    }
    return false;
  }

  /// Line number reported for premature end of input.
  std::size_t end_line() const noexcept { return lines_.empty() ? 1 : lines_.size(); }

 private:
  std::vector<std::string_view> lines_;
  std::size_t cursor_ = 0;
};

template <class T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Mesh read_mesh(std::string_view text) {
  LineReader reader(text);
  Line line;
  if (!reader.next(line)) throw ParseError(reader.end_line(), "empty mesh file");
  if (line.tokens.size() != 2 || line.tokens[0] != "ptg-mesh" || line.tokens[1] != "1") {
    throw ParseError(line.number, "malformed header, expected 'ptg-mesh 1'");
  }

  if (!reader.next(line)) throw ParseError(reader.end_line(), "missing counts line");
  if (line.tokens.size() != 2) {
    throw ParseError(line.number, "expected '<num_vertices> <num_triangles>'");
  }
  const auto nv = parse_number<std::size_t>(line.tokens[0], line.number, "vertex count");
  const auto nt = parse_number<std::size_t>(line.tokens[1], line.number, "triangle count");

  std::vector<Point> vertices;
  vertices.reserve(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!reader.next(line)) {
      throw ParseError(reader.end_line(), "count mismatch: expected " + std::to_string(nv) +
                                               " vertices, found " + std::to_string(v));
    }
    if (line.tokens.size() != 2) throw ParseError(line.number, "expected 'x y'");
    vertices.push_back({parse_number<double>(line.tokens[0], line.number, "coordinate"),
                        parse_number<double>(line.tokens[1], line.number, "coordinate")});
  }

  std::vector<std::array<VertexId, 3>> triangles;
  triangles.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    if (!reader.next(line)) {
      throw ParseError(reader.end_line(), "count mismatch: expected " + std::to_string(nt) +
                                               " triangles, found " + std::to_string(t));
    }
    if (line.tokens.size() != 3) throw ParseError(line.number, "expected 'i j k'");
    std::array<VertexId, 3> tri{};
    for (int c = 0; c < 3; ++c) {
      tri[c] = parse_number<VertexId>(line.tokens[c], line.number, "vertex index");
      if (tri[c] >= nv) {
        throw ParseError(line.number, "vertex index " + std::to_string(tri[c]) +
                                          " out of range (" + std::to_string(nv) + " vertices)");
      }
    }
    triangles.push_back(tri);
  }

  if (reader.next(line)) {
    throw ParseError(line.number, "count mismatch: unexpected data after " + std::to_string(nt) +
                                      " triangles");
  }
  return Mesh::build(std::move(vertices), std::move(triangles));
}

std::string write_mesh(const Mesh& mesh) {
  std::string out = "ptg-mesh 1\n";
  out += std::to_string(mesh.num_vertices()) + " " + std::to_string(mesh.num_cells()) + "\n";
  char buf[64];
  for (const Point& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out += buf;
  }
  for (const auto& t : mesh.triangles()) {
    out += std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  }
  return out;
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_mesh(ss.str());
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << write_mesh(mesh);
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace ptg
