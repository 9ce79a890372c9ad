#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashsmooth/mesh.hpp"

namespace nashsmooth::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Yields non-empty lines with '#' comments stripped, tracking line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::istringstream& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.clear();
      out.str(line);
      return true;
    }
    return false;
  }
  std::size_t line() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace detail

/// Reads a triangle-only OFF mesh. Faces with more or fewer than three
/// vertices are rejected.
inline Mesh read_off(std::istream& in) {
  detail::LineReader reader(in);
  std::istringstream ls;
  if (!reader.next(ls)) throw ParseError(reader.line(), "empty OFF file");

  std::string header;
  ls >> header;
  if (header.rfind("OFF", 0) != 0) throw ParseError(reader.line(), "missing OFF header");
  // counts may follow the header on the same line
  std::size_t nv = 0, nf = 0;
  if (!(ls >> nv)) {
    if (!reader.next(ls) || !(ls >> nv)) throw ParseError(reader.line(), "missing vertex count");
  }
  if (!(ls >> nf)) throw ParseError(reader.line(), "missing face count");

  Coords vertices;
  vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!reader.next(ls)) throw ParseError(reader.line(), "unexpected end of file in vertex list");
    Vec3 p;
    if (!(ls >> p.x >> p.y)) throw ParseError(reader.line(), "malformed vertex");
    if (!(ls >> p.z)) p.z = 0.0;
    vertices.push_back(p);
  }

  std::vector<Element> elements;
  elements.reserve(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    if (!reader.next(ls)) throw ParseError(reader.line(), "unexpected end of file in face list");
    std::size_t n = 0;
    if (!(ls >> n)) throw ParseError(reader.line(), "malformed face");
    if (n != 3) {
      throw ParseError(reader.line(),
                       "face has " + std::to_string(n) + " vertices; only triangles are supported");
    }
    Element e{};
    if (!(ls >> e.v[0] >> e.v[1] >> e.v[2])) throw ParseError(reader.line(), "malformed face");
    elements.push_back(e);
  }
  try {
    return build_mesh(std::move(vertices), std::move(elements));
  } catch (const MeshError& err) {
    throw ParseError(reader.line(), err.what());
  }
}

inline Mesh read_off(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_off(in);
}

inline void write_off(std::ostream& out, const Mesh& mesh, std::span<const Vec3> coords) {
  out << "OFF\n" << coords.size() << ' ' << mesh.element_count() << " 0\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const Vec3& p : coords) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& e : mesh.elements()) out << "3 " << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
}

inline void write_off(const std::filesystem::path& path, const Mesh& mesh,
                      std::span<const Vec3> coords) {
  auto out = detail::open_output(path);
  write_off(out, mesh, coords);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline void write_off(const std::filesystem::path& path, const Mesh& mesh) {
  write_off(path, mesh, mesh.positions());
}

}  // namespace nashsmooth::io
