#pragma once

// JSON forms of the library objects. Complex numbers are [re, im] pairs and
// matrices are flattened row-major. Infinite b is written as the string "inf".

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "sepfaces/catalog.hpp"
#include "sepfaces/enumerate.hpp"
#include "sepfaces/faces.hpp"
#include "sepfaces/witness.hpp"

namespace sepfaces {

using json = nlohmann::json;

/// "2x3", "2x2x2"; ',' and '*' also separate.
inline SystemShape parse_shape(const std::string& text) {
  std::vector<int> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of("x,*", pos);
    if (end == std::string::npos) end = text.size();
    const std::string part = text.substr(pos, end - pos);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw std::invalid_argument("bad shape '" + text + "': expected e.g. 2x3");
    }
    dims.push_back(v);
    pos = end + 1;
  }
  return SystemShape(dims);
}

inline json extended_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double parse_extended_real(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

inline json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json vector_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
  return a;
}

inline CVector vector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector must be an array of [re, im]");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

inline json shape_json(const SystemShape& s) { return s.dims(); }

inline SystemShape shape_from_json(const json& j) {
  if (j.is_string()) return parse_shape(j.get<std::string>());
  return SystemShape(j.get<std::vector<int>>());
}

inline json herm_json(const HermOp& op) {
  json entries = json::array();
  for (int r = 0; r < op.dim(); ++r)
    for (int c = 0; c < op.dim(); ++c) entries.push_back(complex_json(op.matrix()(r, c)));
  return {{"shape", shape_json(op.shape())}, {"entries", entries}};
}

inline HermOp herm_from_json(const json& j) {
  const SystemShape shape = shape_from_json(j.at("shape"));
  const json& e = j.at("entries");
  const int d = shape.total();
  if (!e.is_array() || e.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
    throw std::invalid_argument("HermOp JSON: expected d² entries");
  }
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = complex_from_json(e[static_cast<std::size_t>(r * d + c)]);
  return {shape, m};
}

inline json product_vector_json(const ProductVector& pv) {
  json fs = json::array();
  for (const auto& f : pv.factors()) fs.push_back(vector_json(f));
  return {{"shape", shape_json(pv.shape())}, {"factors", fs}};
}

inline ProductVector product_vector_from_json(const json& j) {
  std::vector<CVector> fs;
  for (const auto& f : j.at("factors")) fs.push_back(vector_from_json(f));
  return {shape_from_json(j.at("shape")), fs};
}

/// {"shape": [2, m], "basis": [[[re, im], ...], ...]}
inline SubspaceSpec subspace_from_json(const json& j) {
  std::vector<CVector> basis;
  for (const auto& v : j.at("basis")) basis.push_back(vector_from_json(v));
  return {shape_from_json(j.at("shape")), basis};
}

inline json subspace_json(const SubspaceSpec& s) {
  json basis = json::array();
  for (int c = 0; c < s.dim(); ++c) basis.push_back(vector_json(s.basis().col(c)));
  return {{"shape", shape_json(s.shape())}, {"basis", basis}};
}

inline json face_report_json(const FaceDimReport& r) {
  json j = {{"samples", r.samples}, {"span_rank", r.span_rank}, {"face_dim", r.face_dim}, {"stable", r.stable},
            {"agrees", r.agrees()}};
  j["formula_dim"] = r.formula_dim ? json(*r.formula_dim) : json(nullptr);
  return j;
}

inline json zero_set_json(const ZeroSet& z) {
  json clusters = json::array();
  for (const auto& c : z.clusters) {
    clusters.push_back({{"representative", product_vector_json(c.representative)}, {"value", c.value}, {"hits", c.hits}});
  }
  return {{"clusters", clusters}, {"count", z.clusters.size()}, {"span_rank", z.span_rank},
          {"candidates", z.candidates}, {"notes", z.notes}};
}

inline json witness_report_json(const WitnessReport& r) {
  json spectrum = json::array();
  for (Eigen::Index i = 0; i < r.spectrum.size(); ++i) spectrum.push_back(r.spectrum(i));
  json j = {{"b", extended_real(r.b)},
            {"trace", r.trace},
            {"spectrum", spectrum},
            {"min_eigenvalue", r.min_eigenvalue},
            {"min_product_expectation", r.min_product_expectation},
            {"argmin", product_vector_json(r.argmin)},
            {"seesaw_monotone", r.seesaw_monotone},
            {"listed_zero_residual", r.listed_zero_residual},
            {"zero_set", zero_set_json(r.zero_set)},
            {"barycenter_expectation", r.barycenter_expectation},
            {"is_ew", r.is_ew},
            {"spanning", r.spanning},
            {"boundary_supported", r.boundary_supported}};
  j["charpoly_deviation"] = r.charpoly_deviation ? json(*r.charpoly_deviation) : json(nullptr);
  return j;
}

inline json certificate_json(const BoundaryCertificate& c) {
  return {{"expectation", c.expectation},
          {"witness_min", c.witness_min},
          {"witness_min_eigenvalue", c.witness_min_eigenvalue},
          {"full", c.full},
          {"verdict", to_string(c.verdict)}};
}

inline json named_state_json(const NamedState& s) {
  return {{"name", s.name}, {"shape", shape_json(s.shape)}, {"note", s.note}, {"operator", herm_json(s.op)}};
}

inline json enumeration_json(const EnumerationResult& r) {
  json vs = json::array();
  for (std::size_t i = 0; i < r.vectors.size(); ++i) {
    vs.push_back({{"vector", product_vector_json(r.vectors[i])}, {"residual", r.residuals[i]}});
  }
  return {{"count", r.count()}, {"infinite", r.infinite}, {"roots_at_infinity", r.roots_at_infinity},
          {"max_residual", r.max_residual()}, {"vectors", vs}, {"notes", r.notes}};
}

}  // namespace sepfaces
