#pragma once

// Command dispatch for the qharr tool. Argument parsing lives in
// tools/qharr.cpp; this header turns a parsed Command into a report.
//
// Exit statuses: 0 success / all checks pass, 1 a check failed,
// 2 usage or parse error (including size guards and unknown catalog names).

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "qharr/arrangement.hpp"
#include "qharr/cohomology.hpp"
#include "qharr/derham.hpp"
#include "qharr/json_io.hpp"
#include "qharr/matroid.hpp"
#include "qharr/os_algebra.hpp"

namespace qharr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Format { Text, Json };

struct Command {
  std::string verb;                   // info | lattice | poincare | os | verify-recurrence | validate-form
  std::optional<std::string> file;    // arrangement JSON
  std::optional<std::string> catalog; // or a catalog name
  std::size_t n = 2;
  std::optional<std::size_t> m;       // hyperplane count for the generic catalog
  Format format = Format::Text;
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 100000;       // validate-form quadrature samples
};

inline std::string subset_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (auto e : elements(s)) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

inline std::string row_string(CoefficientRow const& row) {
  std::string out = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ", ";
    out += to_string(row[i]);
  }
  return out + ")";
}

namespace detail {

inline Arrangement resolve_input(Command const& cmd) {
  if (cmd.file && cmd.catalog) throw ParseError("give either an input file or --catalog, not both");
  if (cmd.file) return load_arrangement(*cmd.file);
  if (cmd.catalog) return catalog(*cmd.catalog, cmd.n, cmd.m, cmd.seed);
  throw ParseError("no input: give an arrangement file or --catalog <name>");
}

inline int info(Arrangement const& arr, Command const& cmd, std::ostream& out) {
  Matroid const m(arr);
  auto const circ = circuits(m);
  if (cmd.format == Format::Json) {
    json j = arrangement_to_json(arr);
    j["hyperplane_count"] = arr.size();
    j["rank"] = m.rank();
    json c = json::array();
    for (Subset s : circ) c.push_back(subset_to_json(s));
    j["circuits"] = std::move(c);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "ambient dimension: " << arr.ambient_dim() << "\n";
  out << "hyperplanes: " << arr.size() << "\n";
  for (std::size_t i = 0; i < arr.size(); ++i) out << "  " << i << ": " << row_string(arr[i].coeffs()) << "\n";
  out << "rank: " << m.rank() << "\n";
  out << "circuits:";
  if (circ.empty()) out << " none";
  for (Subset s : circ) out << " " << subset_string(s);
  out << "\n";
  return kExitOk;
}

inline int lattice_cmd(Arrangement const& arr, Command const& cmd, std::ostream& out) {
  auto const lat = lattice(arr);
  if (cmd.format == Format::Json) {
    out << lattice_to_json(lat).dump(2) << "\n";
    return kExitOk;
  }
  out << "flats: " << lat.flats.size() << ", rank " << lat.rank() << "\n";
  for (std::size_t i = 0; i < lat.flats.size(); ++i) {
    auto const& f = lat.flats[i];
    out << "  [" << i << "] rank " << f.rank << "  " << subset_string(f.elements) << "  mu = " << f.mobius;
    if (!f.covers.empty()) {
      out << "  covered by";
      for (auto c : f.covers) out << " " << c;
    }
    out << "\n";
  }
  return kExitOk;
}

inline int poincare_cmd(Arrangement const& arr, Command const& cmd, std::ostream& out, std::ostream& err) {
  auto const p = poincare(arr);
  auto const table = betti_table(p, arr.ambient_dim());
  bool const ok = table.respects_vanishing_window();
  if (cmd.format == Format::Json) {
    out << json{{"poincare", polynomial_to_json(p)}, {"text", to_string(p)}, {"betti", betti_to_json(table)}}.dump(2)
        << "\n";
  } else {
    out << to_string(p) << "\n";
    out << "degree  betti\n";
    for (std::size_t i = 0; i < table.betti.size(); ++i)
      if (table.betti[i] != 0) out << std::setw(6) << i << "  " << table.betti[i] << "\n";
    out << "total rank " << table.total_rank() << ", euler characteristic " << table.euler_characteristic()
        << ", P(-1) = " << p.evaluate(-1) << "\n";
  }
  if (!ok) {
    err << "betti table violates the vanishing window (degrees 3k, 0 <= 3k <= 3n)\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

inline int os_cmd(Arrangement const& arr, Command const& cmd, std::ostream& out) {
  auto const alg = os_algebra(arr);
  auto const brute = graded_dims_bruteforce(arr);
  auto const nbc = graded_dims_nbc(arr);
  bool const agree = brute == nbc && nbc == alg.graded_dims;
  if (cmd.format == Format::Json) {
    out << os_to_json(alg, brute, nbc).dump(2) << "\n";
    return agree ? kExitOk : kExitCheckFailed;
  }
  auto dims = [](std::vector<std::int64_t> const& d) {
    std::string s;
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? ", " : "") + std::to_string(d[k]);
    return "(" + s + ")";
  };
  out << "graded dimensions in degrees 0, 3, 6, ...\n";
  out << "  brute force:   " << dims(brute) << "\n";
  out << "  nbc count:     " << dims(nbc) << "\n";
  out << "  circuit ideal: " << dims(alg.graded_dims) << "\n";
  out << "ideal generators: " << alg.ideal.generators.size() << "\n";
  out << "nbc basis:\n";
  for (std::size_t k = 0; k < alg.nbc_basis.size(); ++k) {
    out << "  degree " << 3 * k << ":";
    for (Subset s : alg.nbc_basis[k]) out << " e" << subset_string(s);
    out << "\n";
  }
  out << (agree ? "engines agree\n" : "ENGINES DISAGREE\n");
  return agree ? kExitOk : kExitCheckFailed;
}

inline int recurrence_cmd(Arrangement const& arr, Command const& cmd, std::ostream& out) {
  if (arr.empty()) throw ParseError("verify-recurrence needs at least one hyperplane");
  auto const report = verify_recurrence(arr);
  if (cmd.format == Format::Json) {
    out << recurrence_to_json(report).dump(2) << "\n";
  } else {
    for (auto const& e : report.entries) {
      out << "index " << e.index << ": P = " << to_string(e.total) << "; P' = " << to_string(e.deleted)
          << "; P'' = " << to_string(e.restricted) << "; P' + t^3 P'' = " << to_string(e.rhs()) << "  "
          << (e.pass ? "PASS" : "FAIL") << "\n";
    }
  }
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

inline int validate_form(std::optional<Arrangement> const& arr, Command const& cmd, std::ostream& out) {
  using namespace derham;
  json report;
  report["seed"] = cmd.seed;
  report["samples"] = cmd.samples;
  bool pass = true;

  try {
    auto const ex = determine_exponent(cmd.seed);
    bool const closed = ex.residuals[static_cast<std::size_t>(ex.exponent - 1)] <= kClosedTolerance;
    pass = pass && closed;
    report["exponent"] = {{"chosen", ex.exponent}, {"residuals", ex.residuals}, {"margin", ex.margin},
                          {"closed", closed}, {"tolerance", kClosedTolerance},
                          {"unsquared_denominator_closed", ex.residuals[0] <= kClosedTolerance}};
  } catch (AmbiguousExponent const& e) {
    pass = false;
    report["exponent"] = {{"error", e.what()}};
  }

  try {
    auto const grid = sphere_normalization({cmd.samples, cmd.seed, QuadratureScheme::ProductGrid});
    auto const qmc = sphere_normalization({cmd.samples, cmd.seed, QuadratureScheme::QuasiRandom});
    double const gap = std::abs(grid.integral.value - qmc.integral.value);
    bool const agree = gap <= grid.integral.error + qmc.integral.error;
    double const roundtrip = grid.constant * qmc.integral.value.real();
    bool const normalized = std::abs(roundtrip - 1) <= 1e-6;
    pass = pass && agree && normalized;
    auto scheme = [](char const* name, Normalization const& n) {
      return json{{"scheme", name},
                  {"integral", n.integral.value.real()},
                  {"integral_imag", n.integral.value.imag()},
                  {"error", n.integral.error},
                  {"C", n.constant}};
    };
    report["normalization"] = {{"schemes", {scheme("product-grid", grid), scheme("quasi-random", qmc)}},
                               {"schemes_agree", agree},
                               {"C", grid.constant},
                               {"C_times_integral", roundtrip},
                               {"normalized", normalized}};
  } catch (NonConvergence const& e) {
    pass = false;
    report["normalization"] = {{"error", e.what()}};
  }

  if (arr) {
    json checks = json::array();
    for (std::size_t i = 0; i < arr->size(); ++i) {
      auto const r = pullback_check(*arr, i, cmd.seed);
      pass = pass && r.pass();
      checks.push_back(pullback_to_json(r));
    }
    report["pullbacks"] = std::move(checks);
  }
  report["pass"] = pass;

  if (cmd.format == Format::Json) {
    out << report.dump(2) << "\n";
  } else {
    auto const& e = report["exponent"];
    if (e.contains("error")) {
      out << "exponent: " << e["error"].get<std::string>() << "\n";
    } else {
      out << "denominator exponent: " << e["chosen"] << " (margin " << e["margin"] << ")\n";
      out << "  max |d omega| for exponents 1,2,3: " << e["residuals"].dump() << "\n";
      if (e["chosen"] != 1) out << "  note: the unsquared denominator |z|^2 + |w|^2 does not give a closed form\n";
    }
    auto const& nrm = report["normalization"];
    if (nrm.contains("error")) {
      out << "normalization: " << nrm["error"].get<std::string>() << "\n";
    } else {
      for (auto const& s : nrm["schemes"])
        out << "  " << s["scheme"].get<std::string>() << ": integral " << std::setprecision(15)
            << s["integral"].get<double>() << " +- " << std::setprecision(3) << s["error"].get<double>() << "\n";
      out << std::setprecision(15) << "C = " << nrm["C"].get<double>() << ", C * integral = "
          << nrm["C_times_integral"].get<double>() << (nrm["schemes_agree"].get<bool>() ? "" : "  SCHEMES DISAGREE")
          << "\n"
          << std::setprecision(6);
    }
    if (report.contains("pullbacks")) {
      for (auto const& p : report["pullbacks"])
        out << "pullback of hyperplane " << p["indices"][0] << ": max |d| " << p["max_closedness"].get<double>()
            << ", off-bidegree " << p["max_off_bidegree"].get<double>() << "  "
            << (p["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    }
    out << (pass ? "all checks pass" : "CHECK FAILED") << "\n";
  }
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace detail

/// Runs one verb. Library errors are mapped onto exit statuses and reported
/// on `err`.
inline int run(Command const& cmd, std::ostream& out, std::ostream& err) {
  try {
    if (cmd.verb == "validate-form") {
      std::optional<Arrangement> arr;
      if (cmd.file || cmd.catalog) arr = detail::resolve_input(cmd);
      return detail::validate_form(arr, cmd, out);
    }
    Arrangement const arr = detail::resolve_input(cmd);
    if (cmd.verb == "info") return detail::info(arr, cmd, out);
    if (cmd.verb == "lattice") return detail::lattice_cmd(arr, cmd, out);
    if (cmd.verb == "poincare") return detail::poincare_cmd(arr, cmd, out, err);
    if (cmd.verb == "os") return detail::os_cmd(arr, cmd, out);
    if (cmd.verb == "verify-recurrence") return detail::recurrence_cmd(arr, cmd, out);
    err << "unknown command '" << cmd.verb << "'\n";
    return kExitUsage;
  } catch (InternalError const& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (Error const& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace qharr::cli
