#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sltrack/mesh.hpp"

namespace sltrack {

/// Parse failure in a .node/.ele file. line is 1-based; 0 when the problem is
/// not tied to a single line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, std::string detail);
  std::string file;
  std::size_t line;
  std::string detail;
};

/// Reads Triangle-format .node and .ele text. Comments start with '#'. The
/// index base (0 or 1) is taken from the first point index in the .node text
/// and applies to the vertex references in the .ele text. Clockwise elements
/// are reoriented; space_scale is 1/sqrt(N).
Triangulation load_triangle_format(std::string_view node_text, std::string_view ele_text);

/// Loads <prefix>.node and <prefix>.ele. A prefix that already ends in .node
/// or .ele has that extension stripped.
Triangulation load_triangle_files(const std::filesystem::path& prefix);

/// 1-based, header first, no attributes or boundary markers.
std::string write_node(const Triangulation& mesh);
std::string write_ele(const Triangulation& mesh);

void save_triangle_files(const Triangulation& mesh, const std::filesystem::path& prefix);

}  // namespace sltrack
