#pragma once

// Report-producing commands behind the sepfaces CLI. Each command returns a
// table plus details; any failed check is listed in `failures`.

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sepfaces/catalog.hpp"
#include "sepfaces/cyclic.hpp"
#include "sepfaces/enumerate.hpp"
#include "sepfaces/faces.hpp"
#include "sepfaces/io.hpp"
#include "sepfaces/witness.hpp"

namespace sepfaces {

/// Bad flags or inputs; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> shapes;
  std::optional<std::string> b;
  std::optional<std::string> grid;
  std::uint64_t seed = 0;
  int samples = 0;  // 0: module default
  int starts = 64;
  int zero_starts = 2000;
  bool zero_set = true;
  std::optional<double> tol;
  int trials = 0;  // 0: command default
  int threads = 1;
  std::string format = "json";
  std::string input;

  json to_json() const {
    json j = {{"command", command}, {"shapes", shapes},   {"seed", seed},          {"samples", samples},
              {"starts", starts},   {"trials", trials},   {"zero_starts", zero_starts}, {"zero_set", zero_set},
              {"format", format}};
    j["b"] = b ? json(*b) : json(nullptr);
    j["grid"] = grid ? json(*grid) : json(nullptr);
    j["tol"] = tol ? json(*tol) : json(nullptr);
    if (!input.empty()) j["input"] = input;
    return j;
  }
};

struct Report {
  std::string command;
  json config;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json details = json::object();
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

namespace detail {

inline std::string cell_text(const json& v, bool markdown) {
  if (v.is_boolean()) return markdown ? (v.get<bool>() ? "✓" : "✗") : (v.get<bool>() ? "true" : "false");
  if (v.is_null()) return markdown ? "-" : "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(6);
    os << v.get<double>();
    return os.str();
  }
  return v.dump();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string render(const Report& r, const std::string& format) {
  if (format == "json") {
    json rows = json::array();
    for (const auto& row : r.rows) {
      json o = json::object();
      for (std::size_t c = 0; c < r.columns.size(); ++c) o[r.columns[c]] = row[c];
      rows.push_back(o);
    }
    json j = {{"command", r.command}, {"config", r.config},     {"rows", rows},
              {"details", r.details}, {"failures", r.failures}, {"pass", r.pass()}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (format == "csv") {
    for (std::size_t c = 0; c < r.columns.size(); ++c) os << (c ? "," : "") << detail::csv_escape(r.columns[c]);
    os << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << detail::csv_escape(detail::cell_text(row[c], false));
      os << "\n";
    }
    return os.str();
  }
  if (format == "md") {
    os << "## " << r.command << "\n\n|";
    for (const auto& c : r.columns) os << " " << c << " |";
    os << "\n|";
    for (std::size_t c = 0; c < r.columns.size(); ++c) os << "---|";
    os << "\n";
    for (const auto& row : r.rows) {
      os << "|";
      for (const auto& v : row) os << " " << detail::cell_text(v, true) << " |";
      os << "\n";
    }
    os << "\n" << (r.pass() ? "All checks passed." : "Failed checks:") << "\n";
    for (const auto& f : r.failures) os << "- " << f << "\n";
    return os.str();
  }
  throw ConfigError("unknown format '" + format + "' (json, csv, md)");
}

inline SystemShape config_shape(const std::string& s) {
  try {
    return parse_shape(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

/// "--b" alone, or "--grid" as a comma list or "log:N" (N−2 log-spaced points
/// in [1e-2, 1e2] plus 0 and ∞).
inline std::vector<double> config_b_values(const RunConfig& cfg) {
  std::vector<double> out;
  auto parse = [](const std::string& s) {
    try {
      const double v = parse_extended_real(s);
      if (std::isnan(v) || v < 0.0) throw ConfigError("b must lie in [0, inf]: '" + s + "'");
      return v;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  };
  if (cfg.b) out.push_back(parse(*cfg.b));
  if (cfg.grid) {
    const std::string& g = *cfg.grid;
    if (g.rfind("log:", 0) == 0) {
      int n = 0;
      try {
        n = std::stoi(g.substr(4));
      } catch (const std::exception&) {
        throw ConfigError("bad grid '" + g + "'");
      }
      if (n < 3) throw ConfigError("log grid needs at least 3 points");
      out.push_back(0.0);
      for (int i = 0; i < n - 2; ++i) out.push_back(std::pow(10.0, -2.0 + 4.0 * i / (n - 3)));
      out.push_back(std::numeric_limits<double>::infinity());
    } else {
      std::stringstream ss(g);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(parse(item));
    }
  }
  if (out.empty()) out.push_back(0.5);
  return out;
}

inline std::string b_label(double b) {
  if (std::isinf(b)) return "inf";
  std::ostringstream os;
  os.precision(6);
  os << b;
  return os.str();
}

inline Report cmd_faces(const RunConfig& cfg) {
  Report r{"faces", cfg.to_json(), {"shape", "kind", "samples", "sampled_dim", "formula_dim", "match", "stable"}};
  const std::vector<std::string> shapes = cfg.shapes.empty() ? std::vector<std::string>{"2x2", "2x3", "3x3", "2x2x2"} : cfg.shapes;
  Tolerance tol;
  if (cfg.tol) tol.rank_rtol = *cfg.tol;
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const SystemShape shape = config_shape(shapes[si]);
    if (shape.total() > 81) throw ConfigError("faces: shape " + shapes[si] + " exceeds d = 81");
    const std::uint64_t seed = derive_seed(cfg.seed, si);
    auto add = [&](const std::string& kind, const FaceDimReport& f) {
      r.rows.push_back({shape.to_string(), kind, f.samples, f.face_dim,
                        f.formula_dim ? json(*f.formula_dim) : json(nullptr), f.agrees(), f.stable});
      r.check(f.agrees(), shape.to_string() + " " + kind + ": sampled " + std::to_string(f.face_dim) + " vs formula " +
                              (f.formula_dim ? std::to_string(*f.formula_dim) : "-"));
    };
    const auto alpha = HyperplaneSpec::product(sample_product_vector(shape, derive_seed(seed, 1)));
    add("product-hyperplane", face_dim_hyperplane(alpha, cfg.samples, derive_seed(seed, 2), cfg.threads, tol));
    if (shape.parties() == 2) {
      add("rank2-hyperplane",
          face_dim_hyperplane(HyperplaneSpec::schmidt_rank_2(shape), cfg.samples, derive_seed(seed, 3), cfg.threads, tol));
    }
    if (shape.equal_dims()) {
      add("symmetric-face", symmetric_face_dim(shape, 0, derive_seed(seed, 4), tol));
      add("real-symmetric-face", real_symmetric_face_dim(shape, 0, derive_seed(seed, 5), tol));
      const SubspaceDims measured = real_sym_subspace_dims(shape, 0, derive_seed(seed, 6), tol);
      const SubspaceDims expected = subspace_dim_formulas(shape);
      const std::vector<std::tuple<std::string, long long, long long>> dims = {
          {"subspace H", measured.h, expected.h},
          {"subspace H^re", measured.h_re, expected.h_re},
          {"subspace H_s", measured.h_s, expected.h_s},
          {"subspace H^Theta", measured.h_theta, expected.h_theta},
          {"subspace H_s^re", measured.h_s_re, expected.h_s_re},
          {"subspace H_s^Theta", measured.h_s_theta, expected.h_s_theta}};
      for (const auto& [kind, got, want] : dims) {
        r.rows.push_back({shape.to_string(), kind, nullptr, got, want, got == want, true});
        r.check(got == want, shape.to_string() + " " + kind + ": measured " + std::to_string(got) + " vs " + std::to_string(want));
      }
    }
  }
  return r;
}

inline Report cmd_witness(const RunConfig& cfg) {
  Report r{"witness",
           cfg.to_json(),
           {"b", "min_eigenvalue", "seesaw_min", "charpoly_dev", "trace", "is_ew", "clusters", "span_rank", "spanning",
            "delta_dim", "certificate"}};
  const std::vector<double> bs = config_b_values(cfg);
  json points = json::array();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const double b = bs[i];
    const std::string lbl = "b=" + b_label(b);
    WitnessRunOptions opt;
    opt.seesaw.starts = cfg.starts;
    opt.seesaw.seed = derive_seed(cfg.seed, 2 * i);
    opt.seesaw.threads = cfg.threads;
    opt.zeros.starts = cfg.zero_starts;
    opt.zeros.seed = derive_seed(cfg.seed, 2 * i + 1);
    opt.zeros.threads = cfg.threads;
    opt.recover_zero_set = cfg.zero_set;
    if (cfg.tol) opt.ew_tol = *cfg.tol;
    const WitnessFamilyPoint pt = make_wb(b);
    const WitnessReport wr = witness_report(pt, opt);
    const DeltaSimplex delta = delta_simplex(b);
    const BoundaryCertificate cert = boundary_certificate(delta.barycenter, pt.w, opt.seesaw);

    const bool limit = b == 0.0 || std::isinf(b);
    const bool one = b == 1.0;
    json clusters = cfg.zero_set ? json(wr.zero_set.clusters.size()) : json(nullptr);
    json span = cfg.zero_set ? json(wr.zero_set.span_rank) : json(nullptr);
    r.rows.push_back({b_label(b), wr.min_eigenvalue, wr.min_product_expectation, *wr.charpoly_deviation, wr.trace, wr.is_ew,
                      clusters, span, cfg.zero_set ? json(wr.spanning) : json(nullptr), delta.affine_dim(),
                      to_string(cert.verdict)});
    r.check(wr.is_ew, lbl + ": not detected as an entanglement witness");
    r.check(*wr.charpoly_deviation <= 1e-9, lbl + ": spectrum deviates from the characteristic roots");
    r.check(std::abs(wr.trace - 1.0) <= 1e-12, lbl + ": trace is not 1");
    r.check(cert.verdict == Verdict::certified_boundary, lbl + ": barycenter not certified on the boundary");
    json expected = json::object();
    if (!one) {
      expected["delta_dim"] = limit ? 6 : 9;
      r.check(delta.affine_dim() == (limit ? 6 : 9), lbl + ": simplex dimension");
    }
    if (cfg.zero_set) {
      if (one) {
        expected["span_rank"] = 6;
        r.check(wr.zero_set.span_rank == 6, lbl + ": zero-set span rank");
      } else {
        expected["clusters"] = limit ? 7 : 10;
        expected["span_rank"] = limit ? 7 : 9;
        r.check(static_cast<int>(wr.zero_set.clusters.size()) == (limit ? 7 : 10), lbl + ": zero cluster count");
        r.check(wr.zero_set.span_rank == (limit ? 7 : 9), lbl + ": zero-set span rank");
      }
      expected["spanning"] = !limit && !one;
      r.check(wr.spanning == (!limit && !one), lbl + ": spanning flag");
    }
    json point = {{"report", witness_report_json(wr)}, {"expected", expected}, {"certificate", certificate_json(cert)},
                  {"delta", {{"vertices", delta.vertices.size()}, {"span_rank", delta.span_rank}, {"affine_dim", delta.affine_dim()}}}};
    if (one) {
      const NonOptimalityDemo demo = non_closedness_demo(6, opt.seesaw);
      const W1Check w1 = w1_identity_check(cfg.trials > 0 ? cfg.trials : 10000, derive_seed(cfg.seed, 1000 + i), opt.seesaw);
      point["non_optimality"] = {{"p_trace", demo.p_trace},
                                 {"difference_min_eigenvalue", demo.difference_min_eigenvalue},
                                 {"difference_seesaw_min", demo.difference_seesaw_min},
                                 {"b_sequence", demo.b_sequence},
                                 {"zero_span_ranks", demo.zero_span_ranks},
                                 {"demonstrates", demo.demonstrates()}};
      point["w1_identities"] = {{"six_term_deviation", w1.six_term_deviation},
                                {"matrix_identity_deviation", w1.matrix_identity_deviation}};
      r.check(demo.demonstrates(), lbl + ": non-optimality demonstration failed");
      r.check(w1.six_term_deviation <= 1e-10 && w1.matrix_identity_deviation <= 1e-12, lbl + ": W1 identities");
    }
    if (b == 0.0) {
      const OptimalityProbe probe = b0_optimality_probe();
      point["optimality_probe"] = {{"grid_points", probe.grid_points}, {"detected", probe.detected},
                                   {"formula_deviation", probe.formula_deviation}};
      r.check(probe.detected == probe.grid_points && probe.formula_deviation <= 1e-12, lbl + ": optimality probe");
    }
    points.push_back(point);
  }
  r.details["points"] = points;
  return r;
}

inline Report cmd_catalog(const RunConfig& cfg) {
  Report r{"catalog", cfg.to_json(), {"name", "shape", "rank", "transpose_ranks", "min_rank", "expected_min_rank", "ppt", "full", "verdict"}};
  std::vector<std::pair<std::string, SystemShape>> entries;
  if (cfg.shapes.empty()) {
    entries = {{"werner", SystemShape({3, 3})}, {"isotropic", SystemShape({3, 3})}, {"ghz-mixed", SystemShape({2, 2, 2})}};
  } else {
    for (const auto& s : cfg.shapes) {
      const SystemShape shape = config_shape(s);
      for (const auto& name : catalog_names()) {
        try {
          entries.emplace_back(name, make_named(name, shape).shape);
        } catch (const std::invalid_argument&) {
        }
      }
    }
    if (entries.empty()) throw ConfigError("catalog: no named state fits the given shapes");
  }
  const std::map<std::string, std::string> expected = {{"werner/3x3", "8"}, {"isotropic/3x3", "6"}, {"ghz-mixed/2x2x2", "<=7"}};
  json states = json::array();
  for (const auto& [name, shape] : entries) {
    const NamedState st = make_named(name, shape);
    const PptReport pr = ppt_report(st.op);
    std::string ranks;
    for (const auto& m : pr.masks) ranks += (ranks.empty() ? "" : "/") + std::to_string(m.rank);
    const auto it = expected.find(name + "/" + shape.to_string());
    r.rows.push_back({name, shape.to_string(), numerical_rank(st.op), ranks, pr.min_rank(),
                      it == expected.end() ? json(nullptr) : json(it->second), pr.ppt, pr.full, nullptr});
    r.check(pr.ppt && !pr.full, name + " " + shape.to_string() + ": expected PPT and not full");
    if (it != expected.end()) {
      const bool ok = it->second == "<=7" ? pr.min_rank() <= 7 : pr.min_rank() == std::stoi(it->second);
      r.check(ok, name + " " + shape.to_string() + ": deficient rank " + std::to_string(pr.min_rank()) + " vs " + it->second);
    }
    states.push_back(named_state_json(st));
  }

  SeesawOptions so;
  so.starts = cfg.starts;
  so.seed = cfg.seed;
  so.threads = cfg.threads;
  const DeltaSimplex delta = delta_simplex(0.5);
  const WitnessFamilyPoint w = make_wb(0.5);
  const BoundaryCertificate cert = boundary_certificate(delta.barycenter, w.w, so);
  const PptReport bp = ppt_report(delta.barycenter);
  std::string ranks;
  for (const auto& m : bp.masks) ranks += (ranks.empty() ? "" : "/") + std::to_string(m.rank);
  r.rows.push_back({"delta-barycenter b=0.5", "3x3", numerical_rank(delta.barycenter), ranks, bp.min_rank(), "9", bp.ppt,
                    bp.full, to_string(cert.verdict)});
  r.check(bp.full && cert.verdict == Verdict::certified_boundary, "delta barycenter: expected a full certified boundary state");

  // from a PPT state just beyond the barycenter back to the boundary
  const double s = 0.04;
  const HermOp beyond = delta.barycenter * (1.0 + s) - HermOp::identity(delta.barycenter.shape()) * (s / 9.0);
  const auto oracle = [&](const HermOp& x) { return (w.w.matrix() * x.matrix()).trace().real(); };
  const BoundaryPoint bpnt = full_boundary_from_pptes(beyond, oracle);
  r.rows.push_back({"bisection from outside", "3x3", numerical_rank(bpnt.sigma), nullptr, ppt_report(bpnt.sigma).min_rank(),
                    nullptr, is_ppt(bpnt.sigma), bpnt.full, nullptr});
  r.check(std::abs(bpnt.oracle_value) <= 1e-10 && bpnt.full, "bisection: boundary point not found or not full");

  r.details["states"] = states;
  r.details["certificate"] = certificate_json(cert);
  r.details["bisection"] = {{"t", bpnt.t}, {"expected_t", 1.0 / (1.0 + s)}, {"oracle_value", bpnt.oracle_value},
                            {"iterations", bpnt.iterations}};
  return r;
}

inline Report cmd_enumerate(const RunConfig& cfg) {
  Report r{"enumerate", cfg.to_json(), {"shape", "trials", "expected_count", "histogram", "infinite", "max_residual", "match"}};
  const double tol = cfg.tol.value_or(1e-9);
  EnumerateOptions opt;
  opt.seed = cfg.seed;
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw ConfigError("enumerate: cannot read " + cfg.input);
    SubspaceSpec spec;
    try {
      spec = subspace_from_json(json::parse(in));
      require_two_by_m(spec);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("enumerate: bad subspace file: ") + e.what());
    }
    const EnumerationResult res = enumerate_pv(spec, opt);
    const long long n = static_cast<long long>(count_generic_pv(spec.shape()));
    r.rows.push_back({spec.shape().to_string(), 1, n, json{{std::to_string(res.count()), 1}}, res.infinite, res.max_residual(),
                      !res.infinite && res.count() == n});
    r.check(res.max_residual() <= tol, "enumerate: residual above tolerance");
    r.details["result"] = enumeration_json(res);
    return r;
  }
  const std::vector<std::string> shapes = cfg.shapes.empty() ? std::vector<std::string>{"2x3"} : cfg.shapes;
  const int trials = cfg.trials > 0 ? cfg.trials : 50;
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const SystemShape shape = config_shape(shapes[si]);
    if (shape.parties() != 2 || shape.dim(0) != 2) throw ConfigError("enumerate: shape must be 2xm");
    Rng rng(derive_seed(cfg.seed, si));
    std::vector<SubspaceSpec> specs;
    for (int t = 0; t < trials; ++t) specs.push_back(random_subspace(shape, shape.dim(1), rng));
    const auto results = enumerate_many(specs, opt, cfg.threads);
    std::map<int, int> hist;
    int infinite = 0;
    double worst = 0.0;
    for (const auto& res : results) {
      ++hist[res.count()];
      infinite += res.infinite ? 1 : 0;
      worst = std::max(worst, res.max_residual());
    }
    const long long n = static_cast<long long>(count_generic_pv(shape));
    json h = json::object();
    for (const auto& [k, v] : hist) h[std::to_string(k)] = v;
    const bool match = hist.size() == 1 && hist.begin()->first == n && infinite == 0;
    r.rows.push_back({shape.to_string(), trials, n, h, infinite, worst, match});
    r.check(match, shape.to_string() + ": counts differ from " + std::to_string(n));
    r.check(worst <= tol, shape.to_string() + ": residual above tolerance");
  }
  return r;
}

inline Report cmd_cyclic(const RunConfig& cfg) {
  Report r{"cyclic", cfg.to_json(), {"check", "samples", "worst", "bound", "pass"}};
  const double tol = cfg.tol.value_or(1e-12);
  const int trials = cfg.trials > 0 ? cfg.trials : 100000;
  Rng rng(cfg.seed);

  double min_gap = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) min_gap = std::min(min_gap, cyclic_gap(sample_admissible_cyclic(rng)));
  r.rows.push_back({"admissible gap >= 0", trials, min_gap, -tol, min_gap >= -tol});
  r.check(min_gap >= -tol, "cyclic: negative gap on admissible parameters");

  double min_witness = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) min_witness = std::min(min_witness, cyclic_gap(sample_witness_cyclic(rng)));
  r.rows.push_back({"witness-family gap >= 0", trials, min_witness, -tol, min_witness >= -tol});
  r.check(min_witness >= -tol, "cyclic: negative gap on witness parameters");

  json hits = json::array();
  double worst_eq = 0.0;
  for (double beta : {0.25, 0.5, 0.75, 1.5, 1.9}) {
    const CyclicParams p = witness_cyclic_params(beta);
    for (int k = 0; k < 4; ++k) {
      const CyclicParams q = cyclic_equality_point(p, k);
      const double g = cyclic_gap(q);
      worst_eq = std::max(worst_eq, std::abs(g));
      hits.push_back({{"beta", beta}, {"x", q.x}, {"y", q.y}, {"z", q.z}, {"gap", g}});
    }
  }
  r.rows.push_back({"equality locus |gap|", hits.size(), worst_eq, 1e-10, worst_eq <= 1e-10});
  r.check(worst_eq <= 1e-10, "cyclic: equality points do not attain equality");

  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int comparison_trials = std::max(1, trials / 10);
  double min_comparison = std::numeric_limits<double>::infinity();
  for (int t = 0; t < comparison_trials; ++t) {
    double b = 0.0;
    double c = 0.0;
    do {
      b = 0.01 + 3.0 * u(rng);
      c = 0.01 + 3.0 * u(rng);
    } while (b == c);
    min_comparison = std::min(min_comparison, boundary_comparison_gap(b, c));
  }
  r.rows.push_back({"2(b+c)-3sqrt(bc) > (b^2+c^2)/(b+c)", comparison_trials, min_comparison, 0.0, min_comparison > 0.0});
  r.check(min_comparison > 0.0, "cyclic: boundary comparison fails");
  r.details["equality_points"] = hits;
  return r;
}

inline Report run_command(const RunConfig& cfg) {
  if (cfg.tol && !(*cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (cfg.starts < 1 || cfg.zero_starts < 1) throw ConfigError("start counts must be positive");
  if (cfg.trials < 0 || cfg.samples < 0) throw ConfigError("counts must be nonnegative");
  if (cfg.command == "faces") return cmd_faces(cfg);
  if (cfg.command == "witness") return cmd_witness(cfg);
  if (cfg.command == "catalog") return cmd_catalog(cfg);
  if (cfg.command == "enumerate") return cmd_enumerate(cfg);
  if (cfg.command == "cyclic") return cmd_cyclic(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace sepfaces
