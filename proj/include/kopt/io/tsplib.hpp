#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kopt/error.hpp"
#include "kopt/geometry.hpp"
#include "kopt/instance.hpp"
#include "kopt/lowerbound.hpp"
#include "kopt/tour.hpp"

// Subset of TSPLIB: 2-D node coordinates, EUC_2D or SPECIAL with a
// "PNORM=<p>" comment, and tour files. Distances are the exact p-norm, not the
// rounded integers of the original format.
namespace kopt::tsplib {

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// "KEY : VALUE" or "KEY: VALUE" or a bare "KEY".
inline std::pair<std::string, std::string> split_keyword(const std::string& line) {
  const std::size_t colon = line.find(':');
  if (colon == std::string::npos) {
    std::istringstream is(line);
    std::string key;
    is >> key;
    std::string rest;
    std::getline(is, rest);
    return {upper(key), trim(rest)};
  }
  return {upper(trim(line.substr(0, colon))), trim(line.substr(colon + 1))};
}

// Decimal literal, optionally with exponent, as an exact rational.
inline Rational parse_decimal(const std::string& tok, std::size_t line_no) {
  static const std::regex re(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  std::smatch m;
  if (!std::regex_match(tok, m, re) || (m[2].length() == 0 && m[3].length() == 0)) {
    throw FormatError("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
  const std::string whole = m[2].str();
  const std::string frac = m[3].str();
  BigInt num(whole.empty() && frac.empty() ? "0" : whole + frac, 10);
  BigInt den = big_pow(10, frac.size());
  if (m[4].matched) {
    const long e = std::stol(m[4].str());
    if (e > 400 || e < -400) throw FormatError("line " + std::to_string(line_no) + ": exponent too large");
    if (e >= 0) {
      num *= big_pow(10, static_cast<unsigned long>(e));
    } else {
      den *= big_pow(10, static_cast<unsigned long>(-e));
    }
  }
  if (m[1].str() == "-") num = -num;
  return make_rational(num, den);
}

inline std::string format_p(double p) {
  std::ostringstream os;
  os << std::setprecision(17) << p;
  return os.str();
}

}  // namespace detail

inline Instance read_instance(std::istream& in) {
  std::string name;
  std::optional<std::size_t> dimension;
  std::optional<std::string> weight_type;
  std::optional<double> pnorm;
  bool in_coords = false;
  std::vector<std::optional<Point>> coords;
  std::size_t line_no = 0;
  std::string line;
  bool saw_eof = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (in_coords) {
      std::istringstream is(t);
      std::string id_tok, x_tok, y_tok, extra;
      is >> id_tok;
      if (detail::upper(id_tok) == "EOF") {
        saw_eof = true;
        break;
      }
      if (!(is >> x_tok >> y_tok) || (is >> extra)) {
        throw FormatError("line " + std::to_string(line_no) + ": expected 'id x y'");
      }
      std::size_t id = 0;
      try {
        std::size_t used = 0;
        id = std::stoul(id_tok, &used);
        if (used != id_tok.size()) throw FormatError("");
      } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(line_no) + ": bad node id '" + id_tok + "'");
      }
      if (id < 1 || id > coords.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": node id out of range");
      }
      if (coords[id - 1]) throw FormatError("line " + std::to_string(line_no) + ": repeated node id");
      coords[id - 1] = Point(detail::parse_decimal(x_tok, line_no), detail::parse_decimal(y_tok, line_no));
      continue;
    }

    auto [key, value] = detail::split_keyword(t);
    if (key == "NAME") {
      name = value;
    } else if (key == "TYPE") {
      if (detail::upper(value) != "TSP") throw FormatError("unsupported TYPE '" + value + "'");
    } else if (key == "COMMENT") {
      static const std::regex pre(R"(PNORM\s*=\s*([0-9.eE+-]+))", std::regex::icase);
      std::smatch m;
      if (std::regex_search(value, m, pre)) {
        try {
          pnorm = std::stod(m[1].str());
        } catch (const std::exception&) {
          throw FormatError("line " + std::to_string(line_no) + ": bad PNORM value");
        }
      }
    } else if (key == "DIMENSION") {
      try {
        const long d = std::stol(value);
        if (d < 1) throw FormatError("");
        dimension = static_cast<std::size_t>(d);
      } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(line_no) + ": bad DIMENSION");
      }
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = detail::upper(value);
      if (*weight_type != "EUC_2D" && *weight_type != "SPECIAL") {
        throw FormatError("unsupported EDGE_WEIGHT_TYPE '" + value + "'");
      }
    } else if (key == "DISPLAY_DATA_TYPE") {
      // Irrelevant for coordinate instances.
    } else if (key == "NODE_COORD_SECTION") {
      if (!dimension) throw FormatError("NODE_COORD_SECTION before DIMENSION");
      coords.assign(*dimension, std::nullopt);
      in_coords = true;
    } else if (key == "EOF") {
      saw_eof = true;
      break;
    } else {
      throw FormatError("line " + std::to_string(line_no) + ": unsupported keyword '" + key + "'");
    }
  }
  (void)saw_eof;  // a missing EOF line is tolerated

  if (!dimension) throw FormatError("missing DIMENSION");
  if (!weight_type) throw FormatError("missing EDGE_WEIGHT_TYPE");
  if (!in_coords) throw FormatError("missing NODE_COORD_SECTION");
  PNorm norm = PNorm::euclidean();
  if (*weight_type == "SPECIAL") {
    if (!pnorm) throw FormatError("EDGE_WEIGHT_TYPE SPECIAL needs a 'PNORM=<p>' comment");
    try {
      norm = PNorm(*pnorm);
    } catch (const InvalidArgument& e) {
      throw FormatError(e.what());
    }
  }
  std::vector<Point> pts;
  pts.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i]) throw FormatError("node " + std::to_string(i + 1) + " has no coordinates");
    pts.push_back(std::move(*coords[i]));
  }
  try {
    return Instance::planar(std::move(pts), norm, name);
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

inline Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_instance(in);
}

namespace detail {

inline void write_header(std::ostream& out, const std::string& name, const std::string& n, double p) {
  out << "NAME : " << (name.empty() ? "unnamed" : name) << "\n";
  out << "TYPE : TSP\n";
  if (p == 2.0) {
    out << "DIMENSION : " << n << "\n";
    out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  } else {
    out << "COMMENT : PNORM=" << format_p(p) << "\n";
    out << "DIMENSION : " << n << "\n";
    out << "EDGE_WEIGHT_TYPE : SPECIAL\n";
  }
  out << "NODE_COORD_SECTION\n";
}

}  // namespace detail

inline void write_instance(std::ostream& out, const Instance& inst) {
  if (!inst.is_planar()) throw Unsupported("TSPLIB output supports planar instances only");
  for (const Point& p : inst.points()) {
    if (!p.is_integral()) {
      throw Unsupported("TSPLIB output needs integer coordinates; keep subdivided instances in JSON");
    }
  }
  detail::write_header(out, inst.id(), std::to_string(inst.size()), inst.norm().p());
  std::size_t id = 1;
  for (const Point& p : inst.points()) out << id++ << ' ' << p.x.get_str() << ' ' << p.y.get_str() << '\n';
  out << "EOF\n";
}

// Writes the layered family point by point, without holding it in memory.
// Vertex order matches generate_lb_instance.
inline void write_lb_instance(std::ostream& out, int k, int p, int q) {
  const BigInt n = lb_group_sizes(p, q).total();
  detail::write_header(out,
                       "layered-k" + std::to_string(k) + "-p" + std::to_string(p) + "-q" +
                           std::to_string(q),
                       n.get_str(), static_cast<double>(p));
  std::size_t id = 1;
  for_each_lb_point(p, q, [&](LbGroup, std::int64_t x, std::int64_t y) {
    out << id++ << ' ' << x << ' ' << y << '\n';
  });
  out << "EOF\n";
}

inline Tour read_tour(std::istream& in, std::optional<std::size_t> expected = std::nullopt) {
  std::optional<std::size_t> dimension;
  bool in_section = false;
  std::vector<std::size_t> order;
  std::size_t line_no = 0;
  std::string line;
  bool terminated = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (in_section) {
      std::istringstream is(t);
      std::string tok;
      while (is >> tok) {
        if (tok == "-1") {
          terminated = true;
          break;
        }
        if (detail::upper(tok) == "EOF") {
          terminated = true;
          break;
        }
        long id = 0;
        try {
          std::size_t used = 0;
          id = std::stol(tok, &used);
          if (used != tok.size()) throw FormatError("");
        } catch (const std::exception&) {
          throw FormatError("line " + std::to_string(line_no) + ": bad tour entry '" + tok + "'");
        }
        if (id < 1) throw FormatError("line " + std::to_string(line_no) + ": tour ids start at 1");
        order.push_back(static_cast<std::size_t>(id - 1));
      }
      if (terminated) break;
      continue;
    }
    auto [key, value] = detail::split_keyword(t);
    if (key == "NAME" || key == "COMMENT") continue;
    if (key == "TYPE") {
      if (detail::upper(value) != "TOUR") throw FormatError("tour file TYPE must be TOUR");
    } else if (key == "DIMENSION") {
      try {
        dimension = static_cast<std::size_t>(std::stoul(value));
      } catch (const std::exception&) {
        throw FormatError("bad DIMENSION in tour file");
      }
    } else if (key == "TOUR_SECTION") {
      in_section = true;
    } else if (key == "EOF") {
      break;
    } else {
      throw FormatError("line " + std::to_string(line_no) + ": unsupported keyword '" + key + "'");
    }
  }
  if (!in_section) throw FormatError("missing TOUR_SECTION");
  if (!terminated) throw FormatError("TOUR_SECTION not terminated by -1");
  if (dimension && *dimension != order.size()) throw FormatError("tour length differs from DIMENSION");
  if (expected && *expected != order.size()) {
    throw FormatError("tour visits " + std::to_string(order.size()) + " nodes, instance has " +
                      std::to_string(*expected));
  }
  try {
    return Tour(std::move(order));
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

inline Tour read_tour_file(const std::string& path, std::optional<std::size_t> expected = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_tour(in, expected);
}

inline void write_tour(std::ostream& out, const Tour& t, const std::string& name = "tour") {
  out << "NAME : " << name << "\n";
  out << "TYPE : TOUR\n";
  out << "DIMENSION : " << t.size() << "\n";
  out << "TOUR_SECTION\n";
  for (std::size_t v : t.order()) out << v + 1 << '\n';
  out << "-1\nEOF\n";
}

}  // namespace kopt::tsplib
