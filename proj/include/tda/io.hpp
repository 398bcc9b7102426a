#pragma once

// Text formats:
//   point cloud      one point per line, comma- or whitespace-separated floats
//   distance matrix  lower triangle, row i holds d(i,0) .. d(i,i-1); row 0 may be omitted
//   complex          one simplex per line, space-separated vertex ids (face closure is taken)
//   filtration       one simplex per line: `value v0 v1 ... vk`
//   values           one vertex per line: `v value`
//   zigzag           `dims d0 ... dn-1`, then per arrow `fwd|bwd` and the row-major entries
//   cosheaf          complex lines, then `stalk <simplex> <dim>` and
//                    `map <face> <coface> <row-major entries>`; simplices in
//                    these lines are comma-joined ids such as 0,1
//   cover            "lo,hi;lo,hi;..."
// Blank lines and lines starting with '#' are ignored everywhere.

#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tda/cosheaf.hpp"
#include "tda/persistence.hpp"
#include "tda/zigzag.hpp"

namespace tda::io {

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::vector<Line> read_lines(std::istream& in, const std::string& seps = " \t\r", bool skip_first = false) {
  std::vector<Line> out;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (skip_first && number == 1) continue;
    auto tokens = split(text, seps);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    out.push_back({number, std::move(tokens)});
  }
  return out;
}

[[noreturn]] inline void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

inline double to_double(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') fail(line, "expected a number, got '" + s + "'");
  return x;
}

inline std::int64_t to_int(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const long long x = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') fail(line, "expected an integer, got '" + s + "'");
  return x;
}

inline Vertex to_vertex(const std::string& s, std::size_t line) {
  const auto x = to_int(s, line);
  if (x < 0 || x > std::int64_t{0xffffffff}) fail(line, "vertex id out of range: " + s);
  return static_cast<Vertex>(x);
}

inline Simplex to_simplex(const std::vector<std::string>& tokens, std::size_t line) {
  std::vector<Vertex> vs;
  for (const auto& t : tokens) vs.push_back(to_vertex(t, line));
  try {
    return Simplex(vs);
  } catch (const MalformedSimplex& e) {
    fail(line, e.what());
  }
}

inline Simplex to_joined_simplex(const std::string& token, std::size_t line) {
  return to_simplex(split(token, ","), line);
}

}  // namespace detail

inline PointCloud parse_point_cloud(std::istream& in, bool header = false) {
  std::vector<Point> pts;
  for (const auto& line : detail::read_lines(in, " \t\r,", header)) {
    Point p;
    for (const auto& t : line.tokens) p.push_back(detail::to_double(t, line.number));
    if (!pts.empty() && p.size() != pts.front().size()) detail::fail(line.number, "point has a different dimension");
    pts.push_back(std::move(p));
  }
  return PointCloud(std::move(pts));
}

inline DistanceMatrix parse_lower_triangle(std::istream& in) {
  std::vector<std::vector<double>> rows{{}};
  for (const auto& line : detail::read_lines(in, " \t\r,")) {
    std::vector<double> row;
    for (const auto& t : line.tokens) row.push_back(detail::to_double(t, line.number));
    if (row.size() != rows.size()) {
      detail::fail(line.number, "row has " + std::to_string(row.size()) + " entries, expected " +
                                    std::to_string(rows.size()));
    }
    rows.push_back(std::move(row));
  }
  return DistanceMatrix::from_lower_triangle(rows);
}

inline SimplicialComplex parse_complex(std::istream& in) {
  std::vector<Simplex> simplices;
  for (const auto& line : detail::read_lines(in)) simplices.push_back(detail::to_simplex(line.tokens, line.number));
  return build_complex(simplices);
}

inline FilteredComplex parse_filtration(std::istream& in) {
  std::vector<FilteredSimplex> entries;
  for (const auto& line : detail::read_lines(in)) {
    if (line.tokens.size() < 2) detail::fail(line.number, "expected `value v0 ... vk`");
    const double value = detail::to_double(line.tokens[0], line.number);
    std::vector<std::string> ids(line.tokens.begin() + 1, line.tokens.end());
    entries.push_back({detail::to_simplex(ids, line.number), value});
  }
  return FilteredComplex(std::move(entries));
}

inline std::map<Vertex, double> parse_values(std::istream& in) {
  std::map<Vertex, double> values;
  for (const auto& line : detail::read_lines(in)) {
    if (line.tokens.size() != 2) detail::fail(line.number, "expected `vertex value`");
    const auto v = detail::to_vertex(line.tokens[0], line.number);
    if (!values.emplace(v, detail::to_double(line.tokens[1], line.number)).second) {
      detail::fail(line.number, "vertex " + line.tokens[0] + " has two values");
    }
  }
  return values;
}

inline IntervalCover parse_cover(const std::string& text) {
  std::vector<OpenInterval> us;
  for (const auto& item : detail::split(text, ";")) {
    const auto parts = detail::split(item, ", ");
    if (parts.size() != 2) throw ParseError("cover element '" + item + "' is not `lo,hi`");
    us.push_back({detail::to_double(parts[0], 0), detail::to_double(parts[1], 0)});
  }
  return IntervalCover(us);
}

inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& t : detail::split(text, ", ;")) out.push_back(detail::to_double(t, 0));
  return out;
}

inline ZigzagModule parse_zigzag(std::istream& in, const Field& f) {
  const auto lines = detail::read_lines(in);
  if (lines.empty() || lines[0].tokens[0] != "dims") throw ParseError("zigzag file must start with `dims`");
  ZigzagModule z;
  for (std::size_t i = 1; i < lines[0].tokens.size(); ++i) {
    const auto d = detail::to_int(lines[0].tokens[i], lines[0].number);
    if (d < 0) detail::fail(lines[0].number, "negative dimension");
    z.dims.push_back(static_cast<std::size_t>(d));
  }
  if (lines.size() - 1 + 1 != std::max<std::size_t>(z.dims.size(), 1)) {
    throw ParseError("zigzag with " + std::to_string(z.dims.size()) + " slots needs " +
                     std::to_string(z.dims.empty() ? 0 : z.dims.size() - 1) + " arrow lines");
  }
  for (std::size_t a = 1; a < lines.size(); ++a) {
    const auto& line = lines[a];
    const auto i = a - 1;
    Direction dir;
    if (line.tokens[0] == "fwd") {
      dir = Direction::forward;
    } else if (line.tokens[0] == "bwd") {
      dir = Direction::backward;
    } else {
      detail::fail(line.number, "arrow must be `fwd` or `bwd`");
    }
    const auto src = dir == Direction::forward ? z.dims[i] : z.dims[i + 1];
    const auto tgt = dir == Direction::forward ? z.dims[i + 1] : z.dims[i];
    std::vector<std::int64_t> entries;
    for (std::size_t t = 1; t < line.tokens.size(); ++t) entries.push_back(detail::to_int(line.tokens[t], line.number));
    if (entries.size() != src * tgt) {
      detail::fail(line.number, "arrow needs " + std::to_string(src * tgt) + " entries, got " +
                                    std::to_string(entries.size()));
    }
    z.arrows.push_back({dir, Matrix::from_rows(tgt, src, entries, f)});
  }
  return z;
}

inline SimplicialCosheaf parse_cosheaf(std::istream& in, const Field& f) {
  std::vector<Simplex> simplices;
  std::vector<detail::Line> stalks, maps;
  for (auto& line : detail::read_lines(in)) {
    if (line.tokens[0] == "stalk") {
      stalks.push_back(std::move(line));
    } else if (line.tokens[0] == "map") {
      maps.push_back(std::move(line));
    } else {
      if (!stalks.empty() || !maps.empty()) detail::fail(line.number, "simplex lines must come before stalk/map lines");
      simplices.push_back(detail::to_simplex(line.tokens, line.number));
    }
  }
  SimplicialCosheaf c(build_complex(simplices));
  try {
    for (const auto& line : stalks) {
      if (line.tokens.size() != 3) detail::fail(line.number, "expected `stalk <simplex> <dim>`");
      const auto d = detail::to_int(line.tokens[2], line.number);
      if (d < 0) detail::fail(line.number, "negative stalk dimension");
      c.set_stalk(detail::to_joined_simplex(line.tokens[1], line.number), static_cast<std::size_t>(d));
    }
    for (const auto& line : maps) {
      if (line.tokens.size() < 3) detail::fail(line.number, "expected `map <face> <coface> <entries>`");
      const auto face = detail::to_joined_simplex(line.tokens[1], line.number);
      const auto coface = detail::to_joined_simplex(line.tokens[2], line.number);
      std::vector<std::int64_t> entries;
      for (std::size_t t = 3; t < line.tokens.size(); ++t) entries.push_back(detail::to_int(line.tokens[t], line.number));
      const auto rows = c.stalk_dim(face), cols = c.stalk_dim(coface);
      if (entries.size() != rows * cols) {
        detail::fail(line.number, "map needs " + std::to_string(rows * cols) + " entries, got " +
                                      std::to_string(entries.size()));
      }
      c.set_extension(face, coface, Matrix::from_rows(rows, cols, entries, f));
    }
  } catch (const InvalidCosheaf& e) {
    throw ParseError(e.what());
  }
  return c;
}

using Json = nlohmann::ordered_json;

inline Json barcode_json(const Barcode& bc, const Field& f) {
  Json j;
  j["field"] = f.characteristic();
  if (bc.descending()) j["order"] = "superlevel";
  j["bars"] = Json::array();
  for (const auto& b : bc.bars()) {
    Json bar;
    bar["dim"] = b.dim;
    bar["birth"] = b.birth;
    bar["death"] = b.is_infinite() ? Json(nullptr) : Json(b.death);
    j["bars"].push_back(std::move(bar));
  }
  return j;
}

inline std::string write_barcode(const Barcode& bc, const Field& f) { return barcode_json(bc, f).dump(2) + "\n"; }

struct BarcodeFile {
  Barcode barcode;
  Field field;
};

inline BarcodeFile read_barcode(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("barcode JSON: ") + e.what());
  }
  try {
    const Field f(j.at("field").get<std::uint32_t>());
    const bool descending = j.contains("order") && j.at("order").get<std::string>() == "superlevel";
    std::vector<Bar> bars;
    for (const auto& b : j.at("bars")) {
      Bar bar{b.at("dim").get<int>(), b.at("birth").get<double>(), descending ? -kInfinity : kInfinity};
      if (!b.at("death").is_null()) bar.death = b.at("death").get<double>();
      bars.push_back(bar);
    }
    return {Barcode(std::move(bars), descending), f};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("barcode JSON: ") + e.what());
  }
}

inline Json integer_bars_json(const std::vector<IntegerBar>& bars) {
  Json out = Json::array();
  for (const auto& b : bars) out.push_back(Json{{"lo", b.lo}, {"hi", b.hi}, {"multiplicity", b.multiplicity}});
  return out;
}

inline Json simplex_json(const Simplex& s) { return Json(s.vertices()); }

}  // namespace tda::io
