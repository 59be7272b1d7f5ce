#include "canon/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "canon/errors.hpp"

namespace canon {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

std::uint64_t parse_number(std::string_view field, std::size_t line_no) {
  std::uint64_t value = 0;
  // Leading zeros and signs are rejected so each value has one spelling.
  if (field.empty() || (field.size() > 1 && field[0] == '0')) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  }
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string write_cg(const ColoredGraph& g) {
  std::ostringstream out;
  out << "cg 1\n" << "n " << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  for (Vertex v = 0; v < g.order(); ++v) {
    for (Color c : g.colors(v)) out << "k " << v + 1 << ' ' << c << '\n';
  }
  return out.str();
}

ColoredGraph parse_cg(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.size() < 2 || lines[0] != "cg 1") throw ParseError("cg: missing 'cg 1' header");
  auto header = split_fields(lines[1]);
  if (header.size() != 2 || header[0] != "n") throw ParseError("cg: line 2 must be 'n <N>'");
  std::uint64_t n = parse_number(header[1], 2);
  if (n > std::numeric_limits<Vertex>::max() / 2) throw ParseError("cg: vertex count too large");
  ColoredGraph g(static_cast<std::size_t>(n));

  Edge last_edge{0, 0};
  bool have_edge = false;
  std::pair<std::uint64_t, std::uint64_t> last_color{0, 0};
  bool have_color = false;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto fields = split_fields(lines[i]);
    if (fields.size() != 3) throw ParseError("cg: line " + std::to_string(line_no) + ": expected 3 fields");
    std::uint64_t a = parse_number(fields[1], line_no);
    std::uint64_t b = parse_number(fields[2], line_no);
    if (a < 1 || a > n) throw ParseError("cg: line " + std::to_string(line_no) + ": vertex out of range");
    if (fields[0] == "e") {
      if (have_color) throw ParseError("cg: line " + std::to_string(line_no) + ": edge after color lines");
      if (b < 1 || b > n) throw ParseError("cg: line " + std::to_string(line_no) + ": vertex out of range");
      if (a == b) throw ParseError("cg: line " + std::to_string(line_no) + ": loop");
      if (a > b) throw ParseError("cg: line " + std::to_string(line_no) + ": edge must have u < v");
      Edge e{static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1)};
      if (have_edge && e == last_edge) throw ParseError("cg: line " + std::to_string(line_no) + ": duplicate edge");
      if (have_edge && e < last_edge) throw ParseError("cg: line " + std::to_string(line_no) + ": edges out of order");
      g.add_edge(e.first, e.second);
      last_edge = e;
      have_edge = true;
    } else if (fields[0] == "k") {
      std::pair<std::uint64_t, std::uint64_t> key{a, b};
      if (have_color && key <= last_color) {
        throw ParseError("cg: line " + std::to_string(line_no) + ": colors out of order or duplicated");
      }
      g.add_color(static_cast<Vertex>(a - 1), b);
      last_color = key;
      have_color = true;
    } else {
      throw ParseError("cg: line " + std::to_string(line_no) + ": unknown record '" + std::string(fields[0]) + "'");
    }
  }
  return g;
}

std::string write_graph6(const ColoredGraph& g) {
  if (g.has_colors()) throw UnsupportedInput("graph6 cannot represent vertex colors");
  const std::size_t n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

ColoredGraph parse_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw ParseError("graph6: empty input");
  for (char c : text) {
    if (c < 63 || c > 126) throw ParseError("graph6: byte out of range");
  }
  std::size_t pos = 0;
  auto take6 = [&](int count) {
    std::uint64_t v = 0;
    for (int i = 0; i < count; ++i) {
      if (pos >= text.size()) throw ParseError("graph6: truncated size field");
      v = (v << 6) | static_cast<std::uint64_t>(text[pos++] - 63);
    }
    return v;
  };
  std::uint64_t n = 0;
  if (text[0] != 126) {
    n = take6(1);
  } else if (text.size() > 1 && text[1] != 126) {
    pos = 1;
    n = take6(3);
  } else {
    pos = 2;
    n = take6(6);
  }
  if (n > 100000) throw ParseError("graph6: vertex count too large");
  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t expected = (bits + 5) / 6;
  if (text.size() - pos != expected) throw ParseError("graph6: wrong body length");
  ColoredGraph g(static_cast<std::size_t>(n));
  std::uint64_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  if (k % 6 != 0) {
    int byte = text[pos + k / 6] - 63;
    if ((byte & ((1 << (6 - k % 6)) - 1)) != 0) throw ParseError("graph6: nonzero padding bits");
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace canon
