#ifndef GNOWEE_TSPLIB_HPP
#define GNOWEE_TSPLIB_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gnowee/errors.hpp"

namespace gnowee {

struct TspInstance {
  std::string name;
  std::vector<std::pair<double, double>> coords;  // 0-based node ids
  std::optional<long> best_known;                 // reporting only

  std::size_t size() const { return coords.size(); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// TSPLIB95 text parser restricted to EUC_2D node-coordinate instances.
// Unknown specification keywords are ignored; the EOF marker is optional.
inline TspInstance parse_tsplib(const std::string& text) {
  TspInstance inst;
  long dimension = -1;
  bool saw_coords = false;
  std::string edge_type;

  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  bool in_coords = false;
  std::vector<bool> seen;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (t == "EOF") break;

    if (in_coords) {
      std::istringstream row(t);
      long id;
      double x, y;
      if (!(row >> id >> x >> y)) {
        // A keyword line ends the section.
        if (t.find(':') != std::string::npos || t == "NODE_COORD_SECTION") {
          in_coords = false;
        } else {
          throw ParseError("tsplib: malformed node row at line " + std::to_string(line_no));
        }
      } else {
        if (!std::isfinite(x) || !std::isfinite(y)) {
          throw ParseError("tsplib: non-finite coordinate at line " + std::to_string(line_no));
        }
        if (dimension <= 0) {
          throw ParseError("tsplib: NODE_COORD_SECTION before DIMENSION at line " +
                           std::to_string(line_no));
        }
        if (id < 1 || id > dimension) {
          throw ParseError("tsplib: node id out of range at line " + std::to_string(line_no));
        }
        if (seen[static_cast<std::size_t>(id - 1)]) {
          throw ParseError("tsplib: duplicate node id at line " + std::to_string(line_no));
        }
        seen[static_cast<std::size_t>(id - 1)] = true;
        inst.coords[static_cast<std::size_t>(id - 1)] = {x, y};
        continue;
      }
    }

    if (t == "NODE_COORD_SECTION") {
      if (dimension <= 0) {
        throw ParseError("tsplib: NODE_COORD_SECTION before DIMENSION at line " +
                         std::to_string(line_no));
      }
      in_coords = true;
      saw_coords = true;
      continue;
    }

    const auto colon = t.find(':');
    if (colon == std::string::npos) continue;  // unknown section keyword: ignore
    const std::string key = detail::trim(t.substr(0, colon));
    const std::string value = detail::trim(t.substr(colon + 1));
    if (key == "NAME") {
      inst.name = value;
    } else if (key == "DIMENSION") {
      try {
        dimension = std::stol(value);
      } catch (const std::exception&) {
        throw ParseError("tsplib: bad DIMENSION at line " + std::to_string(line_no));
      }
      if (dimension < 3) {
        throw ParseError("tsplib: DIMENSION must be >= 3 at line " + std::to_string(line_no));
      }
      inst.coords.assign(static_cast<std::size_t>(dimension), {0.0, 0.0});
      seen.assign(static_cast<std::size_t>(dimension), false);
    } else if (key == "EDGE_WEIGHT_TYPE") {
      edge_type = value;
      if (value != "EUC_2D") {
        throw ParseError("tsplib: unsupported EDGE_WEIGHT_TYPE '" + value + "' (only EUC_2D)");
      }
    }
    // NAME/TYPE/COMMENT and anything else: no action needed.
  }

  if (dimension <= 0) throw ParseError("tsplib: missing DIMENSION");
  if (edge_type.empty()) throw ParseError("tsplib: missing EDGE_WEIGHT_TYPE");
  if (!saw_coords) throw ParseError("tsplib: missing NODE_COORD_SECTION");
  for (long i = 0; i < dimension; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) {
      throw ParseError("tsplib: missing coordinates for node " + std::to_string(i + 1));
    }
  }
  return inst;
}

inline TspInstance load_tsplib(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("tsplib: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tsplib(buf.str());
}

// EUC_2D edge weight: Euclidean distance rounded to the nearest integer.
inline long euc2d_distance(const TspInstance& inst, int a, int b) {
  const double dx = inst.coords[static_cast<std::size_t>(a)].first -
                    inst.coords[static_cast<std::size_t>(b)].first;
  const double dy = inst.coords[static_cast<std::size_t>(a)].second -
                    inst.coords[static_cast<std::size_t>(b)].second;
  return std::llround(std::sqrt(dx * dx + dy * dy));
}

// Closed-tour length under EUC_2D rounding.
inline long tour_length(const TspInstance& inst, const std::vector<int>& perm) {
  const std::size_t n = inst.size();
  if (perm.size() != n) throw InvalidArgument("tour_length: permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("tour_length: not a valid permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  long total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += euc2d_distance(inst, perm[i], perm[(i + 1) % n]);
  }
  return total;
}

// Position (within the tour) of the city nearest to the city at `pos`; used
// by the distance-biased second-cut selection. Ties go to the lowest city id.
inline long tsp_nearest_position(const TspInstance& inst, const std::vector<int>& perm,
                                 std::size_t pos) {
  if (pos >= perm.size()) return -1;
  const int from = perm[pos];
  int best_city = -1;
  double best_d2 = 0.0;
  for (std::size_t c = 0; c < inst.size(); ++c) {
    if (static_cast<int>(c) == from) continue;
    const double dx = inst.coords[c].first - inst.coords[static_cast<std::size_t>(from)].first;
    const double dy = inst.coords[c].second - inst.coords[static_cast<std::size_t>(from)].second;
    const double d2 = dx * dx + dy * dy;
    if (best_city < 0 || d2 < best_d2) {
      best_city = static_cast<int>(c);
      best_d2 = d2;
    }
  }
  if (best_city < 0) return -1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] == best_city) return static_cast<long>(i);
  }
  return -1;
}

}  // namespace gnowee

#endif  // GNOWEE_TSPLIB_HPP
