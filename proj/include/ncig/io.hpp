// Copyright 2026 The ncig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON encodings.
//
//   algebra    {"blocks": [n_1, ...]}
//   matrix     row-major list of [re, im] pairs (nested rows accepted on input)
//   functional {"algebra": algebra, "blocks": [matrix, ...]}
//   lp_vector  {"algebra": algebra, "p": real, "blocks": [matrix, ...]}
//   set        {"variant": "cone", "generators": [lp_vector, ...]}
//              {"variant": "affine", "base": lp_vector, "directions": [lp_vector, ...]}
//              {"variant": "ball", "center": lp_vector, "radius": real}
//   channel    {"in": algebra, "out": algebra, "kraus": [matrix, ...]}  (N_out x N_in)

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ncig/channels.hpp"
#include "ncig/projection.hpp"
#include "ncig/quasientropy.hpp"

namespace ncig {

using Json = nlohmann::ordered_json;  // keys keep insertion order

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

namespace detail {

inline void format_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

inline void write(std::ostream& os, const Json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        write(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      // Numeric leaves ([re, im] pairs, dimension lists) stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      os << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) newline(depth + 1);
        write(os, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      format_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

[[noreturn]] inline void fail(const std::string& what) { throw ParseError(what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

/// Runs a decoder, reporting any structural or shape problem as ParseError.
template <typename F>
auto decoding(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid ") + what + ": " + e.what());
  }
}

}  // namespace detail

/// Serializes with 17 significant digits; indent < 0 gives a single line.
inline std::string dump(const Json& j, int indent = -1) {
  std::ostringstream os;
  detail::write(os, j, indent, 0);
  return os.str();
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

inline Json to_json(const AlgebraShape& shape) { return {{"blocks", shape.block_dims()}}; }

inline AlgebraShape shape_from_json(const Json& j) {
  return detail::decoding("algebra", [&] {
    const Json& b = detail::field(j, "blocks");
    if (!b.is_array()) detail::fail("algebra blocks must be a list");
    std::vector<int> dims;
    for (const auto& n : b) {
      if (!n.is_number_integer()) detail::fail("block dimensions must be integers");
      dims.push_back(n.get<int>());
    }
    return AlgebraShape(std::move(dims));
  });
}

inline Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return out;
}

inline Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  return detail::decoding("matrix", [&] {
    if (!j.is_array()) detail::fail("matrix must be a list");
    std::vector<const Json*> entries;
    for (const auto& e : j) {
      // Nested rows: a list whose elements are [re, im] pairs.
      if (e.is_array() && !e.empty() && e.front().is_array()) {
        for (const auto& x : e) entries.push_back(&x);
      } else {
        entries.push_back(&e);
      }
    }
    if (static_cast<Eigen::Index>(entries.size()) != rows * cols) {
      detail::fail("matrix has " + std::to_string(entries.size()) + " entries, expected " +
                   std::to_string(rows * cols));
    }
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        const Json& e = *entries[static_cast<std::size_t>(r * cols + c)];
        if (!e.is_array() || e.size() != 2) detail::fail("matrix entries must be [re, im] pairs");
        m(r, c) = Complex(detail::number(e[0], "re"), detail::number(e[1], "im"));
      }
    }
    return m;
  });
}

inline Json blocks_to_json(const Blocks& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) out.push_back(to_json(b));
  return out;
}

inline Blocks blocks_from_json(const Json& j, const AlgebraShape& shape) {
  if (!j.is_array()) detail::fail("blocks must be a list");
  if (j.size() != shape.block_count()) detail::fail("number of blocks does not match algebra");
  Blocks out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(matrix_from_json(j[i], shape.block_dim(i), shape.block_dim(i)));
  }
  return out;
}

inline Json to_json(const NormalFunctional& f) {
  return {{"algebra", to_json(f.shape())}, {"blocks", blocks_to_json(f.blocks())}};
}

inline NormalFunctional functional_from_json(const Json& j) {
  return detail::decoding("functional", [&] {
    AlgebraShape shape = shape_from_json(detail::field(j, "algebra"));
    return NormalFunctional(shape, blocks_from_json(detail::field(j, "blocks"), shape));
  });
}

inline Json to_json(const LpVector& x) {
  return {{"algebra", to_json(x.shape())}, {"p", x.order()}, {"blocks", blocks_to_json(x.blocks())}};
}

inline LpVector lp_vector_from_json(const Json& j) {
  return detail::decoding("lp_vector", [&] {
    AlgebraShape shape = shape_from_json(detail::field(j, "algebra"));
    double p = detail::number(detail::field(j, "p"), "p");
    return LpVector(shape, p, blocks_from_json(detail::field(j, "blocks"), shape));
  });
}

inline bool is_lp_vector_json(const Json& j) { return j.is_object() && j.contains("p"); }

inline Json to_json(const ConvexSetSpec& set) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConeHull>) {
          Json g = Json::array();
          for (const auto& x : s.generators) g.push_back(to_json(x));
          return {{"variant", "cone"}, {"generators", g}};
        } else if constexpr (std::is_same_v<T, AffineSlice>) {
          Json d = Json::array();
          for (const auto& x : s.directions) d.push_back(to_json(x));
          return {{"variant", "affine"}, {"base", to_json(s.base)}, {"directions", d}};
        } else {
          return {{"variant", "ball"}, {"center", to_json(s.center)}, {"radius", s.radius}};
        }
      },
      set.variant());
}

inline ConvexSetSpec convex_set_from_json(const Json& j) {
  return detail::decoding("convex set", [&]() -> ConvexSetSpec {
    const Json& v = detail::field(j, "variant");
    if (!v.is_string()) detail::fail("variant must be a string");
    auto list = [&](const char* key) {
      const Json& arr = detail::field(j, key);
      if (!arr.is_array()) detail::fail(std::string(key) + " must be a list");
      std::vector<LpVector> out;
      for (const auto& e : arr) out.push_back(lp_vector_from_json(e));
      return out;
    };
    const std::string kind = v.get<std::string>();
    if (kind == "cone") return ConvexSetSpec(ConeHull{list("generators")});
    if (kind == "affine") {
      return ConvexSetSpec(AffineSlice{lp_vector_from_json(detail::field(j, "base")), list("directions")});
    }
    if (kind == "ball") {
      return ConvexSetSpec(NormBall{lp_vector_from_json(detail::field(j, "center")),
                                    detail::number(detail::field(j, "radius"), "radius")});
    }
    detail::fail("unknown set variant '" + kind + "'");
  });
}

inline Json to_json(const KrausChannel& ch) {
  Json k = Json::array();
  for (const auto& m : ch.kraus()) k.push_back(to_json(m));
  return {{"in", to_json(ch.in_shape())}, {"out", to_json(ch.out_shape())}, {"kraus", k}};
}

inline KrausChannel channel_from_json(const Json& j) {
  return detail::decoding("channel", [&] {
    AlgebraShape in = shape_from_json(detail::field(j, "in"));
    AlgebraShape out = shape_from_json(detail::field(j, "out"));
    const Json& k = detail::field(j, "kraus");
    if (!k.is_array()) detail::fail("kraus must be a list");
    std::vector<Matrix> ops;
    for (const auto& m : k) ops.push_back(matrix_from_json(m, out.total_dim(), in.total_dim()));
    return KrausChannel(in, out, std::move(ops));
  });
}

inline Json to_json(const ProjectionResult& r) {
  Json j = {{"x_m", to_json(r.x_m)},
            {"value", r.value},
            {"kkt_residual", r.kkt_residual},
            {"three_point_worst", r.three_point_worst},
            {"iterations", r.iterations},
            {"converged", r.converged}};
  if (r.coefficients.size() > 0) {
    j["coefficients"] = std::vector<double>(r.coefficients.begin(), r.coefficients.end());
  }
  return j;
}

inline Json to_json(const ModularSpectrum& s) {
  Json pairs = Json::array();
  for (const auto& p : s.pairs) pairs.push_back({{"eigenvalue", p.eigenvalue}, {"weight", p.weight}});
  return {{"pairs", pairs}, {"restricted", s.restricted}};
}

}  // namespace io
}  // namespace ncig
