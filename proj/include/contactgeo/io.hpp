#pragma once

// JSON output with every floating-point number written to 17 significant
// digits, plus converters for points, matrices and tensor fields.

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cmath>
#include <string>

#include "contactgeo/expr.hpp"
#include "contactgeo/phase_space.hpp"
#include "contactgeo/tensor.hpp"

namespace contactgeo {

using Json = nlohmann::json;

namespace detail {

inline void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_into(v, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Compact JSON with %.17g floats. Object keys keep nlohmann's sorted order.
inline std::string dump_json(const Json& j) {
  std::string out;
  detail::dump_into(j, out);
  return out;
}

inline Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Json to_json(const PhasePoint& x) { return Json{{"w", x.w}, {"q", x.q}, {"p", x.p}}; }

/// Components at a point in the fixed (w, q, p) ordering, tagged with valence.
inline Json to_json(const TensorField& t, const Bindings& at) {
  const Eigen::MatrixXd m = t.evaluate(at);
  Json comps = rank_of(t.valence()) == 1 ? vector_to_json(m.col(0)) : to_json(m);
  return Json{{"valence", std::string(valence_tag(t.valence()))}, {"components", std::move(comps)}};
}

/// Symbolic components as printed expressions.
inline Json to_json(const TensorField& t) {
  Json comps = Json::array();
  const std::size_t d = t.dim();
  if (rank_of(t.valence()) == 1) {
    for (std::size_t i = 0; i < d; ++i) comps.push_back(to_string(t[i]));
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < d; ++j) row.push_back(to_string(t(i, j)));
      comps.push_back(std::move(row));
    }
  }
  return Json{{"valence", std::string(valence_tag(t.valence()))}, {"components", std::move(comps)}};
}

}  // namespace contactgeo
