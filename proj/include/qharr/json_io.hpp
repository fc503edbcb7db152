#pragma once

// JSON formats: arrangement files, lattice export, and the report payloads
// emitted by the command-line tool.
//
// Arrangement file:
//   { "ambient_dim": n,
//     "hyperplanes": [ [ ["w","x","y","z"], ... n entries ], ... ] }
// Components are rational strings "p/q" or "p". Rows are canonicalized on
// load; unknown top-level keys are ignored.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qharr/arrangement.hpp"
#include "qharr/cohomology.hpp"
#include "qharr/derham.hpp"
#include "qharr/matroid.hpp"
#include "qharr/os_algebra.hpp"

namespace qharr {

using json = nlohmann::json;

inline json quaternion_to_json(Quaternion const& q) {
  auto const s = q.to_strings();
  return json::array({s[0], s[1], s[2], s[3]});
}

inline Quaternion quaternion_from_json(json const& j, std::string const& where) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError(where + ": expected an array of 4 rational strings [w, x, y, z]");
  Rational c[4];
  for (std::size_t i = 0; i < 4; ++i) {
    std::string const field = where + "[" + std::to_string(i) + "]";
    if (j[i].is_string()) {
      try {
        c[i] = parse_rational(j[i].get<std::string>());
      } catch (ParseError const& e) {
        throw ParseError(field + ": " + e.what());
      }
    } else if (j[i].is_number_integer()) {
      c[i] = Rational(BigInt(j[i].dump(), 10));
    } else {
      throw ParseError(field + ": expected a rational string");
    }
  }
  return {c[0], c[1], c[2], c[3]};
}

inline json subset_to_json(Subset s) {
  json a = json::array();
  for (auto e : elements(s)) a.push_back(e);
  return a;
}

inline json arrangement_to_json(Arrangement const& arr) {
  json rows = json::array();
  for (auto const& h : arr.hyperplanes()) {
    json row = json::array();
    for (auto const& q : h.coeffs()) row.push_back(quaternion_to_json(q));
    rows.push_back(std::move(row));
  }
  return {{"ambient_dim", arr.ambient_dim()}, {"hyperplanes", std::move(rows)}};
}

inline Arrangement arrangement_from_json(json const& j) {
  if (!j.is_object()) throw ParseError("top level: expected an object");
  if (!j.contains("ambient_dim")) throw ParseError("ambient_dim: missing");
  if (!j["ambient_dim"].is_number_unsigned())
    throw ParseError("ambient_dim: expected a non-negative integer");
  auto const n = j["ambient_dim"].get<std::size_t>();
  if (!j.contains("hyperplanes")) throw ParseError("hyperplanes: missing");
  json const& rows = j["hyperplanes"];
  if (!rows.is_array()) throw ParseError("hyperplanes: expected an array");

  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string const where = "hyperplanes[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ParseError(where + ": expected " + std::to_string(n) + " quaternions");
    CoefficientRow row;
    for (std::size_t r = 0; r < n; ++r)
      row.push_back(quaternion_from_json(rows[i][r], where + "[" + std::to_string(r) + "]"));
    try {
      hs.emplace_back(std::move(row));
    } catch (ZeroRow const&) {
      throw ParseError(where + ": zero row does not define a hyperplane");
    }
    for (std::size_t k = 0; k + 1 < hs.size(); ++k)
      if (hs[k] == hs.back())
        throw ParseError("hyperplanes[" + std::to_string(k) + "] and " + where +
                         " define the same hyperplane");
  }
  return Arrangement(n, std::move(hs));
}

/// Parses arrangement JSON text; syntax errors report line and column.
inline Arrangement parse_arrangement(std::string const& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (json::parse_error const& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": malformed JSON");
  }
  return arrangement_from_json(j);
}

inline Arrangement load_arrangement(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_arrangement(ss.str());
  } catch (ParseError const& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Flats ordered by (rank, lexicographic elements); covers are flat ids.
inline json lattice_to_json(IntersectionLattice const& lat) {
  json flats = json::array();
  for (std::size_t i = 0; i < lat.flats.size(); ++i) {
    auto const& f = lat.flats[i];
    flats.push_back({{"id", i},
                     {"elements", subset_to_json(f.elements)},
                     {"rank", f.rank},
                     {"mobius", f.mobius},
                     {"covers", f.covers}});
  }
  return {{"rank", lat.rank()}, {"flats", std::move(flats)}};
}

/// {"0": 1, "3": 3, "6": 2}
inline json polynomial_to_json(PoincarePolynomial const& p) {
  json j = json::object();
  for (auto const& [d, c] : p.coeffs()) j[std::to_string(d)] = c;
  return j;
}

inline json dims_to_json(std::vector<std::int64_t> const& dims) {
  json j = json::object();
  for (std::size_t k = 0; k < dims.size(); ++k) j[std::to_string(3 * k)] = dims[k];
  return j;
}

inline json betti_to_json(BettiTable const& t) {
  return {{"betti", t.betti},
          {"total_rank", t.total_rank()},
          {"euler_characteristic", t.euler_characteristic()},
          {"vanishing_window_ok", t.respects_vanishing_window()}};
}

inline json recurrence_to_json(RecurrenceReport const& r) {
  json rows = json::array();
  for (auto const& e : r.entries) {
    rows.push_back({{"index", e.index},
                    {"P", polynomial_to_json(e.total)},
                    {"P_deletion", polynomial_to_json(e.deleted)},
                    {"P_restriction", polynomial_to_json(e.restricted)},
                    {"rhs", polynomial_to_json(e.rhs())},
                    {"pass", e.pass}});
  }
  return {{"entries", std::move(rows)}, {"all_pass", r.all_pass()}};
}

inline json os_to_json(OSAlgebra const& alg, std::vector<std::int64_t> const& brute,
                       std::vector<std::int64_t> const& nbc) {
  json basis = json::object();
  for (std::size_t k = 0; k < alg.nbc_basis.size(); ++k) {
    json mono = json::array();
    for (Subset s : alg.nbc_basis[k]) mono.push_back(subset_to_json(s));
    basis[std::to_string(3 * k)] = std::move(mono);
  }
  return {{"graded_dims",
           {{"bruteforce", dims_to_json(brute)},
            {"nbc", dims_to_json(nbc)},
            {"circuit_ideal", dims_to_json(alg.graded_dims)}}},
          {"engines_agree", brute == nbc && nbc == alg.graded_dims},
          {"nbc_basis", std::move(basis)},
          {"ideal_generator_count", alg.ideal.generators.size()}};
}

inline json pullback_to_json(derham::PullbackReport const& r) {
  return {{"indices", r.indices},
          {"points", r.points},
          {"seed", r.seed},
          {"max_closedness", r.max_closedness},
          {"max_off_bidegree", r.max_off_bidegree},
          {"max_route_mismatch", r.max_route_mismatch},
          {"max_scale_deviation", r.max_scale_deviation},
          {"structurally_zero", r.structurally_zero},
          {"max_component", r.max_real_norm},
          {"pass", r.pass()}};
}

}  // namespace qharr
