// Acceptance gate: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "sepfaces/catalog.hpp"
#include "sepfaces/cyclic.hpp"
#include "sepfaces/enumerate.hpp"
#include "sepfaces/faces.hpp"
#include "sepfaces/witness.hpp"
#include "test_util.hpp"

using namespace sepfaces;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void face_table(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Row {
    SystemShape shape;
    bool product;
    long long expected;
  };
  const std::vector<Row> rows = {{SystemShape({2, 2}), true, 6},  {SystemShape({2, 2}), false, 8},
                                 {SystemShape({2, 3}), true, 20}, {SystemShape({2, 3}), false, 24},
                                 {SystemShape({3, 3}), true, 55}, {SystemShape({3, 3}), false, 63},
                                 {SystemShape({2, 2, 2}), true, 36}};
  std::uint64_t seed = 1;
  for (const auto& r : rows) {
    const HyperplaneSpec spec = r.product ? HyperplaneSpec::product(sample_product_vector(r.shape, seed++))
                                          : HyperplaneSpec::schmidt_rank_2(r.shape);
    const FaceDimReport f = face_dim_hyperplane(spec, 0, seed++);
    o.detail << " " << r.shape.to_string() << (r.product ? "/prod=" : "/rank2=") << f.face_dim;
    o.require(f.face_dim == r.expected && f.formula_dim && *f.formula_dim == r.expected, r.shape.to_string());
  }
  const double s = seconds_since(t0);
  o.detail << " (" << s << " s)";
  o.require(s < 60.0, "runtime");
}

void subspace_dims(Outcome& o) {
  const SubspaceDims m = real_sym_subspace_dims(SystemShape({3, 3}), 0, 7);
  o.detail << " H=" << m.h << " H^re=" << m.h_re << " H_s=" << m.h_s << " H^Theta=" << m.h_theta
           << " H_s^Theta=" << m.h_s_theta << " H_s^re=" << m.h_s_re;
  o.require(m.h == 81 && m.h_re == 45 && m.h_s == 36 && m.h_theta == 36 && m.h_s_theta == 15, "list");
  o.require(m.h_s_re == 21, "H_s^re");
}

void witness_family(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> grid = {0.0};
  for (int i = 0; i < 48; ++i) grid.push_back(std::pow(10.0, -2.0 + 4.0 * i / 47.0));
  grid.push_back(std::numeric_limits<double>::infinity());
  int ew = 0;
  double worst_charpoly = 0.0;
  double worst_trace = 0.0;
  double lowest_seesaw = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    WitnessRunOptions opt;
    opt.seesaw.starts = 64;
    opt.seesaw.seed = derive_seed(3, i);
    opt.recover_zero_set = false;
    const WitnessReport r = witness_report(make_wb(grid[i]), opt);
    const double scale = std::max(1.0, spectral_radius(r.spectrum));
    if (r.min_eigenvalue < -1e-6 * scale && r.min_product_expectation >= -1e-8) ++ew;
    worst_charpoly = std::max(worst_charpoly, *r.charpoly_deviation);
    worst_trace = std::max(worst_trace, std::abs(r.trace - 1.0));
    lowest_seesaw = std::min(lowest_seesaw, r.min_product_expectation);
  }
  const double s = seconds_since(t0);
  o.detail << " grid=" << grid.size() << " is-EW=" << ew << " min see-saw=" << lowest_seesaw
           << " charpoly dev=" << worst_charpoly << " trace dev=" << worst_trace << " (" << s << " s)";
  o.require(ew == static_cast<int>(grid.size()), "is-EW");
  o.require(worst_charpoly <= 1e-9, "spectrum");
  o.require(worst_trace <= 1e-12, "trace");
  o.require(s < 300.0, "runtime");
}

void zero_sets(Outcome& o) {
  struct Case {
    double b;
    std::size_t clusters;
    int span;
    int delta;
  };
  for (const Case c : {Case{0.5, 10, 9, 9}, Case{2.0, 10, 9, 9}, Case{0.0, 7, 7, 6}}) {
    ZeroSetOptions zo;
    zo.seed = 11;
    const ZeroSet z = zero_set_recover(make_wb(c.b).w, zo);
    const DeltaSimplex d = delta_simplex(c.b);
    o.detail << " b=" << c.b << ":" << z.clusters.size() << "/" << z.span_rank << "/" << d.affine_dim();
    o.require(z.clusters.size() == c.clusters && z.span_rank == c.span && d.affine_dim() == c.delta, "b=" + std::to_string(c.b));
  }
}

void boundary_state(Outcome& o) {
  const HermOp rho = delta_simplex(0.5).barycenter;
  const HermOp w = make_wb(0.5).w;
  const PptReport pr = ppt_report(rho);
  const double gamma_dev = (partial_transpose(rho, TransposeMask::of(rho.shape(), {1})).matrix() - rho.matrix()).cwiseAbs().maxCoeff();
  const BoundaryCertificate c = boundary_certificate(rho, w);
  o.detail << " rank=" << numerical_rank(rho) << " min transpose rank=" << pr.min_rank() << " Gamma1 dev=" << gamma_dev
           << " tr(W rho)=" << c.expectation << " verdict=" << to_string(c.verdict);
  o.require(numerical_rank(rho) == 9 && pr.min_rank() == 9 && pr.full, "full");
  o.require(gamma_dev <= 1e-15, "Gamma1-invariant");
  o.require(std::abs(c.expectation) <= 1e-10, "expectation");
  o.require(c.verdict == Verdict::certified_boundary, "certificate");
}

void w1_identities(Outcome& o) {
  const W1Check w = w1_identity_check(10000, 13);
  const NonOptimalityDemo demo = non_closedness_demo();
  o.detail << " six-term dev=" << w.six_term_deviation << " matrix dev=" << w.matrix_identity_deviation
           << " W1-P min eig=" << demo.difference_min_eigenvalue << " W1-P see-saw=" << demo.difference_seesaw_min;
  o.require(w.six_term_deviation <= 1e-10, "six-term identity");
  o.require(w.matrix_identity_deviation <= 1e-12, "matrix identity");
  o.require(demo.demonstrates(), "non-optimality");
}

void cyclic(Outcome& o) {
  Rng rng(17);
  double min_gap = 1.0;
  for (int t = 0; t < 100000; ++t) min_gap = std::min(min_gap, cyclic_gap(sample_admissible_cyclic(rng)));
  double worst_eq = 0.0;
  for (double beta : {0.1, 0.25, 0.5, 0.75, 1.25, 1.5, 1.9}) {
    const CyclicParams p = witness_cyclic_params(beta);
    for (int k = 0; k < 4; ++k) worst_eq = std::max(worst_eq, std::abs(cyclic_gap(cyclic_equality_point(p, k))));
  }
  std::uniform_real_distribution<double> u(0.01, 3.0);
  int comparison_fail = 0;
  for (int t = 0; t < 10000; ++t) {
    const double b = u(rng);
    const double c = u(rng);
    if (b != c && !(boundary_comparison_gap(b, c) > 0.0)) ++comparison_fail;
  }
  o.detail << " min gap=" << min_gap << " equality |gap|=" << worst_eq << " boundary comparison failures=" << comparison_fail;
  o.require(min_gap >= -1e-12, "gap");
  o.require(worst_eq <= 1e-10, "equality");
  o.require(comparison_fail == 0, "boundary comparison");
}

void catalog(Outcome& o) {
  struct Case {
    std::string name;
    SystemShape shape;
    int rank;
    bool at_most;
  };
  for (const auto& c : {Case{"werner", SystemShape({3, 3}), 8, false}, Case{"isotropic", SystemShape({3, 3}), 6, false},
                        Case{"ghz-mixed", SystemShape({2, 2, 2}), 7, true}}) {
    const NamedState st = make_named(c.name, c.shape);
    const PptReport pr = ppt_report(st.op);
    o.detail << " " << c.name << ": ppt=" << pr.ppt << " full=" << pr.full << " min rank=" << pr.min_rank();
    o.require(pr.ppt && !pr.full, c.name);
    o.require(c.at_most ? pr.min_rank() <= c.rank : pr.min_rank() == c.rank, c.name + " rank");
  }
}

void enumeration(Outcome& o) {
  for (int m = 2; m <= 4; ++m) {
    const SystemShape s({2, m});
    Rng rng(derive_seed(19, m));
    std::vector<SubspaceSpec> specs;
    for (int t = 0; t < 200; ++t) specs.push_back(random_subspace(s, m, rng));
    const auto res = enumerate_many(specs, {.seed = 23});
    int wrong = 0;
    double worst = 0.0;
    for (const auto& r : res) {
      wrong += (r.count() != m || r.infinite) ? 1 : 0;
      worst = std::max(worst, r.max_residual());
    }
    o.detail << " 2x" << m << ": wrong=" << wrong << " residual=" << worst;
    o.require(wrong == 0 && worst <= 1e-9, s.to_string());
  }
}

void property_suites(Outcome& o) {
  Rng rng(29);
  // Φ_k from the eigenvalues against explicit minor enumeration
  int minors = 0;
  for (int t = 0; t < 1000; ++t) {
    const int d = 2 + t % 5;
    const CMatrix m = testing::random_hermitian(d, rng);
    const auto fast = principal_minor_sums(HermOp(SystemShape::single(d), m));
    const auto slow = testing::brute_force_minor_sums(m);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff() * d);
    for (int k = 0; k < d; ++k)
      if (std::abs(fast[static_cast<std::size_t>(k)] - slow[static_cast<std::size_t>(k)]) > 1e-8 * std::pow(scale, k + 1)) {
        ++minors;
        break;
      }
  }
  // PSD test against nonnegativity of the brute-force Φ_k
  int psd = 0;
  for (int t = 0; t < 1000; ++t) {
    CMatrix m = t % 2 ? testing::random_psd(6, 6, rng) : testing::random_hermitian(6, rng);
    const HermOp op(SystemShape({2, 3}), m);
    const auto phi = testing::brute_force_minor_sums(m);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff() * 6);
    bool nonneg = true;
    for (std::size_t k = 0; k < phi.size(); ++k) nonneg = nonneg && phi[k] >= -1e-9 * std::pow(scale, static_cast<double>(k + 1));
    if (nonneg != is_psd(op)) ++psd;
  }
  // Γ_S ∘ Γ_S = id and tr Γ_S = tr
  int transpose = 0;
  const std::vector<SystemShape> shapes = {SystemShape({2, 2}), SystemShape({2, 3}), SystemShape({3, 3}), SystemShape({2, 2, 2})};
  for (int t = 0; t < 1000; ++t) {
    const SystemShape& s = shapes[static_cast<std::size_t>(t) % shapes.size()];
    const HermOp rho(s, testing::random_hermitian(s.total(), rng));
    for (const auto& mask : all_masks(s)) {
      const HermOp once = partial_transpose(rho, mask);
      if ((partial_transpose(once, mask).matrix() - rho.matrix()).cwiseAbs().maxCoeff() > 1e-15 ||
          std::abs(once.trace() - rho.trace()) > 1e-12) {
        ++transpose;
        break;
      }
    }
  }
  // rank Γ_S(ρ⊗σ) = rank Γ_S(ρ) · rank Γ_S(σ)
  int compose_fail = 0;
  const SystemShape q({2, 2});
  for (int t = 0; t < 1000; ++t) {
    const HermOp a(q, testing::random_psd(4, 1 + t % 4, rng));
    const HermOp b(q, testing::random_psd(4, 1 + (t / 4) % 4, rng));
    const ComposedState c = compose_boundary(a, b);
    bool ok = c.full == (is_full(a) && is_full(b));
    for (const auto& mask : all_masks(q)) {
      const int lhs = numerical_rank(partial_transpose(c.op, TransposeMask(c.op.shape(), mask.bits())));
      ok = ok && lhs == numerical_rank(partial_transpose(a, mask)) * numerical_rank(partial_transpose(b, mask));
    }
    if (!ok) ++compose_fail;
  }
  o.detail << " minor sums=" << minors << " psd=" << psd << " transpose=" << transpose << " compose=" << compose_fail
           << " failures of 1000 each";
  o.require(minors == 0 && psd == 0 && transpose == 0 && compose_fail == 0, "property suites");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"face-dimension table", face_table},
      {"subspace dimensions 3x3", subspace_dims},
      {"witness family on 50 grid points", witness_family},
      {"zero sets and simplices", zero_sets},
      {"full boundary state", boundary_state},
      {"W1 identities and non-optimality", w1_identities},
      {"cyclic inequality", cyclic},
      {"catalog states", catalog},
      {"product-vector enumeration", enumeration},
      {"property suites", property_suites}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s criterion %zu (%s):%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
