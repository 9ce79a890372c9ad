#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "nashsmooth/io/off.hpp"

namespace nashsmooth::io {

namespace detail {

// "7", "7/1", "7//3", "7/1/3" -> 7; negative indices count from the end.
inline VertexId obj_index(const std::string& token, std::size_t vertex_count, std::size_t line) {
  const std::string head = token.substr(0, token.find('/'));
  long long idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stoll(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
  } catch (const std::exception&) {
    throw ParseError(line, "malformed face index '" + token + "'");
  }
  if (idx < 0) idx += static_cast<long long>(vertex_count) + 1;
  if (idx < 1 || idx > static_cast<long long>(vertex_count)) {
    throw ParseError(line, "face index " + head + " out of range");
  }
  return static_cast<VertexId>(idx - 1);
}

}  // namespace detail

/// Reads vertices and triangular faces from a Wavefront OBJ stream; every
/// other record (normals, texture coordinates, groups) is ignored.
inline Mesh read_obj(std::istream& in) {
  detail::LineReader reader(in);
  std::istringstream ls;
  Coords vertices;
  std::vector<Element> elements;
  while (reader.next(ls)) {
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x >> p.y)) throw ParseError(reader.line(), "malformed vertex");
      if (!(ls >> p.z)) p.z = 0.0;
      vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<std::string> tokens;
      for (std::string t; ls >> t;) tokens.push_back(t);
      if (tokens.size() != 3) {
        throw ParseError(reader.line(), "face has " + std::to_string(tokens.size()) +
                                            " vertices; only triangles are supported");
      }
      Element e{};
      for (int i = 0; i < 3; ++i) e.v[i] = detail::obj_index(tokens[i], vertices.size(), reader.line());
      elements.push_back(e);
    }
  }
  try {
    return build_mesh(std::move(vertices), std::move(elements));
  } catch (const MeshError& err) {
    throw ParseError(reader.line(), err.what());
  }
}

inline Mesh read_obj(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_obj(in);
}

/// Dispatches on the file extension (.off or .obj, case-insensitive).
inline Mesh read_mesh(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".off") return read_off(path);
  if (ext == ".obj") return read_obj(path);
  throw IoError("unsupported mesh format '" + ext + "' (expected .off or .obj)");
}

}  // namespace nashsmooth::io
