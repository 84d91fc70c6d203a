#include "sltrack/mesh_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace sltrack {

namespace {

struct Record {
  std::size_t line;
  std::vector<std::string_view> tokens;
};

// Non-empty lines with comments stripped, split on whitespace.
std::vector<Record> tokenize(std::string_view text) {
  std::vector<Record> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Record rec{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) rec.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!rec.tokens.empty()) records.push_back(std::move(rec));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return records;
}

template <typename T>
T parse_number(std::string_view token, const std::string& file, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(file, line, "cannot parse '" + std::string(token) + "' as a number");
  return value;
}

}  // namespace

ParseError::ParseError(std::string file_name, std::size_t line_no, std::string what)
    : std::runtime_error(file_name + (line_no ? ":" + std::to_string(line_no) : std::string()) +
                         ": " + what),
      file(std::move(file_name)),
      line(line_no),
      detail(std::move(what)) {}

Triangulation load_triangle_format(std::string_view node_text, std::string_view ele_text) {
  const std::string node_file = ".node";
  const std::string ele_file = ".ele";

  const auto nodes = tokenize(node_text);
  if (nodes.empty()) throw ParseError(node_file, 0, "missing header");
  const auto& nh = nodes.front();
  if (nh.tokens.size() < 2)
    throw ParseError(node_file, nh.line, "malformed header (expected '<#points> 2 <#attrs> <#markers>')");
  const auto n_points = parse_number<long long>(nh.tokens[0], node_file, nh.line);
  const auto dim = parse_number<int>(nh.tokens[1], node_file, nh.line);
  const int n_attrs = nh.tokens.size() > 2 ? parse_number<int>(nh.tokens[2], node_file, nh.line) : 0;
  const int n_markers = nh.tokens.size() > 3 ? parse_number<int>(nh.tokens[3], node_file, nh.line) : 0;
  if (n_points < 3 || dim != 2 || n_attrs < 0 || n_markers < 0 || n_markers > 1 || nh.tokens.size() > 4)
    throw ParseError(node_file, nh.line, "malformed header (expected '<#points> 2 <#attrs> <#markers>')");
  if (static_cast<long long>(nodes.size()) - 1 < n_points)
    throw ParseError(node_file, nodes.back().line,
                     "expected " + std::to_string(n_points) + " points, found " +
                         std::to_string(nodes.size() - 1));

  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>(n_points));
  long long base = 0;
  const std::size_t min_tokens = 3 + static_cast<std::size_t>(n_attrs + n_markers);
  for (long long i = 0; i < n_points; ++i) {
    const auto& rec = nodes[static_cast<std::size_t>(i) + 1];
    if (rec.tokens.size() < min_tokens)
      throw ParseError(node_file, rec.line,
                       "expected at least " + std::to_string(min_tokens) + " fields");
    const auto idx = parse_number<long long>(rec.tokens[0], node_file, rec.line);
    if (i == 0) {
      if (idx != 0 && idx != 1) throw ParseError(node_file, rec.line, "first point index must be 0 or 1");
      base = idx;
    } else if (idx != base + i) {
      throw ParseError(node_file, rec.line, "point indices must be consecutive");
    }
    const double x = parse_number<double>(rec.tokens[1], node_file, rec.line);
    const double y = parse_number<double>(rec.tokens[2], node_file, rec.line);
    if (!std::isfinite(x) || !std::isfinite(y))
      throw ParseError(node_file, rec.line, "non-finite coordinate");
    vertices.emplace_back(x, y);
  }

  const auto eles = tokenize(ele_text);
  if (eles.empty()) throw ParseError(ele_file, 0, "missing header");
  const auto& eh = eles.front();
  if (eh.tokens.size() < 2 || eh.tokens.size() > 3)
    throw ParseError(ele_file, eh.line, "malformed header (expected '<#triangles> 3 <#attrs>')");
  const auto n_tri = parse_number<long long>(eh.tokens[0], ele_file, eh.line);
  const auto per = parse_number<int>(eh.tokens[1], ele_file, eh.line);
  const int e_attrs = eh.tokens.size() > 2 ? parse_number<int>(eh.tokens[2], ele_file, eh.line) : 0;
  if (n_tri < 1 || per != 3 || e_attrs < 0)
    throw ParseError(ele_file, eh.line, "malformed header (expected '<#triangles> 3 <#attrs>')");
  if (static_cast<long long>(eles.size()) - 1 < n_tri)
    throw ParseError(ele_file, eles.back().line,
                     "expected " + std::to_string(n_tri) + " triangles, found " +
                         std::to_string(eles.size() - 1));

  std::vector<TriangleVertices> triangles;
  std::vector<std::size_t> lines;
  triangles.reserve(static_cast<std::size_t>(n_tri));
  for (long long j = 0; j < n_tri; ++j) {
    const auto& rec = eles[static_cast<std::size_t>(j) + 1];
    if (rec.tokens.size() < 4 + static_cast<std::size_t>(e_attrs))
      throw ParseError(ele_file, rec.line, "expected '<idx> <i1> <i2> <i3>'");
    TriangleVertices t{};
    for (int k = 0; k < 3; ++k) {
      const auto v = parse_number<long long>(rec.tokens[1 + k], ele_file, rec.line) - base;
      if (v < 0 || v >= n_points)
        throw ParseError(ele_file, rec.line,
                         "vertex index " + std::string(rec.tokens[1 + k]) + " out of range (" +
                             std::to_string(n_points) + " points, base " + std::to_string(base) + ")");
      t[k] = static_cast<Index>(v);
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw ParseError(ele_file, rec.line, "triangle repeats a vertex");
    const double o = orient(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
    if (o == 0.0) throw ParseError(ele_file, rec.line, "zero-area triangle");
    if (o < 0.0) std::swap(t[1], t[2]);
    triangles.push_back(t);
    lines.push_back(rec.line);
  }

  Triangulation mesh;
  try {
    mesh.neighbors = compute_neighbors(triangles, static_cast<Index>(vertices.size()));
  } catch (const NonManifoldEdgeError& e) {
    throw ParseError(ele_file, lines[e.triangle], e.what());
  }
  mesh.space_scale = 1.0 / std::sqrt(static_cast<double>(vertices.size()));
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);
  return mesh;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path strip_mesh_extension(std::filesystem::path p) {
  if (p.extension() == ".node" || p.extension() == ".ele") p.replace_extension();
  return p;
}

}  // namespace

Triangulation load_triangle_files(const std::filesystem::path& prefix) {
  const auto base = strip_mesh_extension(prefix);
  auto node_path = base;
  node_path += ".node";
  auto ele_path = base;
  ele_path += ".ele";
  const std::string node_text = read_file(node_path);
  const std::string ele_text = read_file(ele_path);
  try {
    return load_triangle_format(node_text, ele_text);
  } catch (const ParseError& e) {
    const auto& path = e.file == ".node" ? node_path : ele_path;
    throw ParseError(path.string(), e.line, e.detail);
  }
}

std::string write_node(const Triangulation& mesh) {
  std::ostringstream os;
  os.precision(17);
  os << mesh.vertices.size() << " 2 0 0\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    os << i + 1 << ' ' << mesh.vertices[i].x() << ' ' << mesh.vertices[i].y() << '\n';
  return os.str();
}

std::string write_ele(const Triangulation& mesh) {
  std::ostringstream os;
  os << mesh.triangles.size() << " 3 0\n";
  for (std::size_t j = 0; j < mesh.triangles.size(); ++j) {
    const auto& t = mesh.triangles[j];
    os << j + 1 << ' ' << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  return os.str();
}

void save_triangle_files(const Triangulation& mesh, const std::filesystem::path& prefix) {
  const auto base = strip_mesh_extension(prefix);
  for (auto [ext, text] : {std::pair{".node", write_node(mesh)}, std::pair{".ele", write_ele(mesh)}}) {
    auto path = base;
    path += ext;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
  }
}

}  // namespace sltrack
