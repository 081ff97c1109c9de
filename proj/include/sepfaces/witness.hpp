#pragma once

// The one-parameter family W_b of 3x3 entanglement witnesses, b in [0, ∞],
// together with see-saw minimization over product states, zero-set recovery
// and the checks that go with the family (spectrum, the W_1 identities, the
// matrix X(b), the b = 0 optimality probe).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sepfaces/herm.hpp"
#include "sepfaces/parallel.hpp"

namespace sepfaces {

inline const SystemShape& qutrit_pair() {
  static const SystemShape s({3, 3});
  return s;
}

/// 6(1 − b + b²); the factor between W_b and the operator whose
/// characteristic polynomial factors over the rationals in b.
inline double wb_scale(double b) { return 6.0 * (1.0 - b + b * b); }

struct WitnessFamilyPoint {
  double b = 0.0;  // +infinity allowed
  HermOp w;
  std::vector<ProductVector> zeros;
  std::vector<int> zero_labels;  // 1..10

  bool infinite() const { return std::isinf(b); }
};

namespace detail {

inline CVector basis3(int i) {
  CVector v = CVector::Zero(3);
  v(i) = 1.0;
  return v;
}

/// z_1..z_10 at finite b, as product vectors (factors not normalized
/// individually; the product has unit norm).
inline std::vector<ProductVector> family_zero_vectors(double b) {
  const double s = std::sqrt(b);
  std::vector<ProductVector> out;
  for (int k = 0; k < 3; ++k) {
    const int i = k;
    const int j = (k + 1) % 3;
    for (double sign : {1.0, -1.0}) {
      const CVector x = (basis3(i) + sign * s * basis3(j)) / (1.0 + b);
      const CVector y = sign * s * basis3(i) + basis3(j);
      out.emplace_back(qutrit_pair(), std::vector<CVector>{x, y});
    }
  }
  const double signs[4][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
  for (const auto& sg : signs) {
    CVector v(3);
    v << sg[0], sg[1], sg[2];
    out.emplace_back(qutrit_pair(), std::vector<CVector>{v / 3.0, v});
  }
  return out;
}

}  // namespace detail

/// W_b = I/4 − (1+b)²/(12(1−b+b²)) Σ_{i≤6} |z_i><z_i| − 3(1−3b+b²)/(16(1−b+b²)) Σ_{i≥7} |z_i><z_i|.
/// b = ∞ is the party swap of W_0. At b ∈ {0, ∞} the zero list drops the
/// coincident z_2, z_4, z_6.
inline WitnessFamilyPoint make_wb(double b) {
  if (std::isnan(b) || b < 0.0) throw std::invalid_argument("make_wb: b must lie in [0, ∞]");
  if (std::isinf(b)) {
    const WitnessFamilyPoint zero = make_wb(0.0);
    WitnessFamilyPoint out{b, swap_parties(zero.w), {}, zero.zero_labels};
    for (const auto& z : zero.zeros) out.zeros.emplace_back(qutrit_pair(), std::vector<CVector>{z.factor(1), z.factor(0)});
    return out;
  }
  const auto z = detail::family_zero_vectors(b);
  const double q = 1.0 - b + b * b;
  const double c1 = (1.0 + b) * (1.0 + b) / (12.0 * q);
  const double c2 = 3.0 * (1.0 - 3.0 * b + b * b) / (16.0 * q);
  CMatrix w = CMatrix::Identity(9, 9) / 4.0;
  for (std::size_t i = 0; i < z.size(); ++i) w -= (i < 6 ? c1 : c2) * projector(expand(z[i]));

  WitnessFamilyPoint out{b, HermOp(qutrit_pair(), w), {}, {}};
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (b == 0.0 && i < 6 && i % 2 == 1) continue;
    out.zeros.push_back(z[i].normalized());
    out.zero_labels.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

/// Roots of the factored characteristic polynomial of 6(1−b+b²)·W_b, sorted
/// ascending, with multiplicities 1, 2, 3, 3.
inline std::vector<double> wb_scaled_roots(double b) {
  std::vector<double> roots;
  roots.push_back(-b);
  const double mid = (3.0 - 5.0 * b + 3.0 * b * b) / 2.0;
  roots.insert(roots.end(), 2, mid);
  const double c0 = -1.0 + 2.0 * b + b * b + 2.0 * b * b * b - b * b * b * b;
  const double h = 1.0 + b * b;
  const double disc = std::sqrt(h * h - c0);
  roots.insert(roots.end(), 3, (h + disc) / 2.0);
  roots.insert(roots.end(), 3, (h - disc) / 2.0);
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Max |eigenvalue − root| between 6(1−b+b²)·W_b and the factored
/// polynomial. At b = ∞ the b = 0 roots apply (the swap is a unitary
/// similarity).
inline double charpoly_check(const WitnessFamilyPoint& point) {
  const double b = point.infinite() ? 0.0 : point.b;
  RVector ev = eigh(point.w).eigenvalues * wb_scale(b);
  std::sort(ev.begin(), ev.end());
  const auto roots = wb_scaled_roots(b);
  double dev = 0.0;
  for (std::size_t i = 0; i < roots.size(); ++i) dev = std::max(dev, std::abs(ev(static_cast<Eigen::Index>(i)) - roots[i]));
  return dev;
}

// ---------------------------------------------------------------------------
// see-saw

struct SeesawOptions {
  int starts = 64;
  int max_rounds = 500;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SeesawStart {
  double value = 0.0;
  ProductVector vector;
  int rounds = 0;
  bool monotone = true;
};

struct SeesawResult {
  double value = std::numeric_limits<double>::infinity();
  ProductVector argmin;
  std::vector<SeesawStart> starts;

  bool monotone() const {
    return std::all_of(starts.begin(), starts.end(), [](const SeesawStart& s) { return s.monotone; });
  }
};

/// Alternating minimization of <x_1..x_n|W|x_1..x_n> over unit factors. The
/// per-party problem is the smallest eigenpair of the contracted matrix A_i.
class Seesaw {
 public:
  explicit Seesaw(const HermOp& w) : w_(w.matrix()), shape_(w.shape()) {
    if (shape_.parties() < 2) throw std::invalid_argument("Seesaw: operator needs a multipartite shape");
    for (int f = 0; f < shape_.total(); ++f) digits_.push_back(shape_.multi_index(f));
    slack_ = 1e-12 * std::max(1.0, w.max_abs());
  }

  /// A_p(a, b) = Σ conj(R_r) W(r, c) R_c over r, c with party-p digits a, b,
  /// where R is the product of the other factors' entries.
  CMatrix effective(const std::vector<CVector>& fs, int party) const {
    const int d = shape_.total();
    std::vector<cplx> rest(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
      cplx v = 1.0;
      for (int i = 0; i < shape_.parties(); ++i)
        if (i != party) v *= fs[static_cast<std::size_t>(i)](digits_[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)]);
      rest[static_cast<std::size_t>(r)] = v;
    }
    const int dp = shape_.dim(party);
    CMatrix a = CMatrix::Zero(dp, dp);
    for (int r = 0; r < d; ++r) {
      const cplx left = std::conj(rest[static_cast<std::size_t>(r)]);
      if (left == 0.0) continue;
      const int ar = digits_[static_cast<std::size_t>(r)][static_cast<std::size_t>(party)];
      for (int c = 0; c < d; ++c) {
        a(ar, digits_[static_cast<std::size_t>(c)][static_cast<std::size_t>(party)]) += left * w_(r, c) * rest[static_cast<std::size_t>(c)];
      }
    }
    return a;
  }

  double expectation(const std::vector<CVector>& fs) const {
    CVector v = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) v = kron(v, fs[i]);
    return v.dot(w_ * v).real();
  }

  /// Descend from the given factors until a full round improves by less than
  /// `tol`, the value reaches `target`, or `max_rounds` is hit.
  SeesawStart descend(std::vector<CVector> fs, int max_rounds, double tol,
                      double target = -std::numeric_limits<double>::infinity()) const {
    for (auto& f : fs) f.normalize();
    SeesawStart out;
    double value = expectation(fs);
    for (int round = 0; round < max_rounds; ++round) {
      const double before = value;
      for (int p = 0; p < shape_.parties(); ++p) {
        const auto ed = eigh(effective(fs, p));
        const Eigen::Index last = ed.eigenvalues.size() - 1;
        fs[static_cast<std::size_t>(p)] = ed.eigenvectors.col(last);
        const double next = ed.eigenvalues(last);
        if (next > value + slack_) out.monotone = false;
        value = next;
      }
      out.rounds = round + 1;
      if (before - value < tol || value <= target) break;
    }
    for (auto& f : fs) f = gauge_fix(f);
    out.value = value;
    out.vector = ProductVector(shape_, std::move(fs));
    return out;
  }

  SeesawStart random_start(Rng& rng, int max_rounds, double tol) const {
    std::vector<CVector> fs;
    for (int i = 0; i < shape_.parties(); ++i) fs.push_back(complex_gaussian(shape_.dim(i), rng));
    return descend(std::move(fs), max_rounds, tol);
  }

  const SystemShape& shape() const { return shape_; }

 private:
  CMatrix w_;
  SystemShape shape_;
  std::vector<std::vector<int>> digits_;
  double slack_ = 0.0;
};

/// Best value over seeded random starts. Start i draws from derive_seed(seed, i),
/// and ties go to the lowest index, so the result does not depend on threads.
inline SeesawResult seesaw_min(const HermOp& w, const SeesawOptions& opt = {}) {
  if (opt.starts < 1 || opt.max_rounds < 1) throw std::invalid_argument("seesaw_min: starts and rounds must be positive");
  const Seesaw engine(w);
  SeesawResult res;
  res.starts.resize(static_cast<std::size_t>(opt.starts));
  parallel_for(res.starts.size(), opt.threads, [&](std::size_t i) {
    Rng rng(derive_seed(opt.seed, i));
    res.starts[i] = engine.random_start(rng, opt.max_rounds, opt.tol);
  });
  for (const auto& s : res.starts) {
    if (s.value < res.value) {
      res.value = s.value;
      res.argmin = s.vector;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// zero set

struct ZeroSetOptions {
  int starts = 2000;
  int rounds = 500;
  int polish_rounds = 20000;
  double candidate_tol = 1e-6;
  double accept_tol = 1e-8;
  double merge_fidelity = 1.0 - 1e-6;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ZeroCluster {
  ProductVector representative;
  double value = 0.0;
  int hits = 0;
};

struct ZeroSet {
  std::vector<ZeroCluster> clusters;
  int span_rank = 0;
  int candidates = 0;
  std::vector<std::string> notes;
};

inline double vector_fidelity(const CVector& a, const CVector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

/// Multi-start see-saw; starts ending below `candidate_tol` are grouped
/// loosely, polished with a long descent, accepted below `accept_tol` and
/// merged at `merge_fidelity`.
inline ZeroSet zero_set_recover(const HermOp& w, const ZeroSetOptions& opt = {}) {
  const Seesaw engine(w);
  SeesawOptions so;
  so.starts = opt.starts;
  so.max_rounds = opt.rounds;
  so.seed = opt.seed;
  so.threads = opt.threads;
  const SeesawResult run = seesaw_min(w, so);

  std::vector<const SeesawStart*> cands;
  for (const auto& s : run.starts)
    if (s.value <= opt.candidate_tol) cands.push_back(&s);
  std::stable_sort(cands.begin(), cands.end(), [](const SeesawStart* a, const SeesawStart* b) { return a->value < b->value; });

  struct Group {
    CVector v;
    const SeesawStart* start;
    int hits;
  };
  std::vector<Group> groups;
  for (const auto* c : cands) {
    const CVector v = expand(c->vector);
    bool merged = false;
    for (auto& g : groups) {
      if (vector_fidelity(g.v, v) > 1.0 - 1e-3) {
        ++g.hits;
        merged = true;
        break;
      }
    }
    if (!merged) groups.push_back({v, c, 1});
  }

  std::vector<SeesawStart> polished(groups.size());
  parallel_for(groups.size(), opt.threads, [&](std::size_t i) {
    polished[i] = engine.descend(groups[i].start->vector.factors(), opt.polish_rounds, 0.0, opt.accept_tol * 1e-4);
  });

  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return polished[a].value < polished[b].value; });

  ZeroSet out;
  out.candidates = static_cast<int>(cands.size());
  std::vector<CVector> reps;
  int valley_merges = 0;
  for (std::size_t i : order) {
    const auto& p = polished[i];
    if (p.value > opt.accept_tol) {
      out.notes.push_back("candidate rejected after polishing at value " + std::to_string(p.value));
      continue;
    }
    const CVector v = expand(p.vector);
    std::optional<std::size_t> target;
    for (std::size_t k = 0; k < reps.size() && !target; ++k) {
      const double f = vector_fidelity(reps[k], v);
      if (f > opt.merge_fidelity) target = k;
      // Degenerate zeros sit in flat valleys where polishing stalls short of
      // the merge radius; nearby points joined by a zero-valued midpoint are
      // the same zero.
      if (!target && f > 1.0 - 1e-3) {
        const auto& r = out.clusters[k].representative;
        std::vector<CVector> mid;
        for (int q = 0; q < r.shape().parties(); ++q) {
          const cplx overlap = r.factor(q).dot(p.vector.factor(q));
          const cplx align = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : cplx(1.0);
          mid.push_back(r.factor(q) + align * p.vector.factor(q));
        }
        for (auto& m : mid) m.normalize();
        if (engine.expectation(mid) <= opt.accept_tol) {
          target = k;
          ++valley_merges;
        }
      }
    }
    if (target) {
      out.clusters[*target].hits += groups[i].hits;
    } else {
      reps.push_back(v);
      out.clusters.push_back({p.vector.normalized(), p.value, groups[i].hits});
    }
  }
  if (valley_merges > 0) {
    out.notes.push_back(std::to_string(valley_merges) + " candidate(s) merged along flat valleys of degenerate zeros");
  }
  out.span_rank = complex_span_rank(reps);
  return out;
}

// ---------------------------------------------------------------------------
// W_1 identities and non-optimality

inline CVector e_ij(int i, int j) {
  CVector v = CVector::Zero(9);
  v(3 * i + j) += 1.0;
  v(3 * j + i) -= 1.0;
  return v;
}

/// Σ_{i,j} |ii><jj|
inline CMatrix diagonal_rank_one() {
  CVector phi = CVector::Zero(9);
  for (int i = 0; i < 3; ++i) phi(4 * i) = 1.0;
  return projector(phi);
}

/// The six-term sum of squared 2x2 minors of (x, y) and of (x, y*).
inline double w1_six_terms(const CVector& x, const CVector& y) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      s += std::norm(x(i) * y(j) - x(j) * y(i));
      s += std::norm(x(i) * std::conj(y(j)) - x(j) * std::conj(y(i)));
    }
  return s;
}

struct W1Check {
  double six_term_deviation = 0.0;   // max |12<x,y|W_1|x,y> − six-term sum|
  double matrix_identity_deviation = 0.0;
  double reduced_min_eigenvalue = 0.0;
  double reduced_seesaw_min = 0.0;
};

/// (1/6)(I − Σ|ii><jj|)
inline HermOp w1_reduced() { return {qutrit_pair(), (CMatrix::Identity(9, 9) - diagonal_rank_one()) / 6.0}; }

inline W1Check w1_identity_check(int samples, std::uint64_t seed = 0, const SeesawOptions& so = {}) {
  const WitnessFamilyPoint w1 = make_wb(1.0);
  const Seesaw engine(w1.w);
  W1Check out;
  Rng rng(seed);
  for (int t = 0; t < samples; ++t) {
    const CVector x = complex_gaussian(3, rng).normalized();
    const CVector y = complex_gaussian(3, rng).normalized();
    const double lhs = 12.0 * engine.expectation({x, y});
    out.six_term_deviation = std::max(out.six_term_deviation, std::abs(lhs - w1_six_terms(x, y)));
  }
  CMatrix lhs = 2.0 * w1.w.matrix();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) lhs -= projector(e_ij(i, j)) / 6.0;
  out.matrix_identity_deviation = (lhs - w1_reduced().matrix()).cwiseAbs().maxCoeff();
  const HermOp reduced = w1_reduced();
  const auto ev = eigh(reduced).eigenvalues;
  out.reduced_min_eigenvalue = ev(ev.size() - 1);
  out.reduced_seesaw_min = seesaw_min(reduced, so).value;
  return out;
}

struct NonOptimalityDemo {
  double p_trace = 0.0;             // tr P for P = (1/12) Σ |e_ij><e_ij|
  double difference_min_eigenvalue = 0.0;  // of W_1 − P
  double difference_seesaw_min = 0.0;
  std::vector<double> b_sequence;   // 1 + 1/m
  std::vector<double> distance_to_w1;   // max-entry distance
  std::vector<int> zero_span_ranks;     // rank of the listed zero vectors
  std::vector<double> zero_residuals;   // max <z_i|W|z_i>
  std::vector<double> seesaw_mins;

  bool demonstrates(double tol = 1e-8) const {
    if (!(difference_min_eigenvalue < -tol && difference_seesaw_min >= -tol && p_trace > 0.0)) return false;
    for (std::size_t i = 0; i < b_sequence.size(); ++i) {
      if (zero_span_ranks[i] != 9 || zero_residuals[i] > 1e-10 || seesaw_mins[i] < -tol) return false;
      if (i > 0 && distance_to_w1[i] >= distance_to_w1[i - 1]) return false;
    }
    return true;
  }
};

/// W_{1+1/m} are spanning witnesses converging to W_1, and W_1 − P is still a
/// witness for a nonzero P ≥ 0.
inline NonOptimalityDemo non_closedness_demo(int terms = 6, const SeesawOptions& so = {}) {
  NonOptimalityDemo out;
  const WitnessFamilyPoint w1 = make_wb(1.0);
  CMatrix p = CMatrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) p += projector(e_ij(i, j)) / 12.0;
  out.p_trace = p.trace().real();
  const HermOp diff(qutrit_pair(), w1.w.matrix() - p);
  const auto ev = eigh(diff).eigenvalues;
  out.difference_min_eigenvalue = ev(ev.size() - 1);
  out.difference_seesaw_min = seesaw_min(diff, so).value;
  for (int m = 1; m <= terms; ++m) {
    const double b = 1.0 + 1.0 / static_cast<double>(m);
    const WitnessFamilyPoint pt = make_wb(b);
    out.b_sequence.push_back(b);
    out.distance_to_w1.push_back((pt.w.matrix() - w1.w.matrix()).cwiseAbs().maxCoeff());
    std::vector<CVector> zs;
    double residual = 0.0;
    for (const auto& z : pt.zeros) {
      const CVector v = expand(z);
      zs.push_back(v);
      residual = std::max(residual, std::abs(v.dot(pt.w.matrix() * v).real()));
    }
    out.zero_span_ranks.push_back(complex_span_rank(zs));
    out.zero_residuals.push_back(residual);
    out.seesaw_mins.push_back(seesaw_min(pt.w, so).value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// X(b)

/// X(b) = diag(p_0, p_1, p_2) − ((1−b+b²)/2)(|x><x| + |x*><x*|) with
/// p_i = (2−3b+2b²)|x_i|² + |x_{i+1}|² + b²|x_{i+2}|², indices mod 3.
inline HermOp xb_matrix(double b, const CVector& x) {
  if (x.size() != 3) throw std::invalid_argument("xb_matrix: x must have three components");
  if (!(x.norm() > 0.0)) throw std::invalid_argument("xb_matrix: x must be nonzero");
  if (!(b >= 0.0) || std::isinf(b)) throw std::invalid_argument("xb_matrix: b must be finite and nonnegative");
  CMatrix m = CMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    m(i, i) = (2.0 - 3.0 * b + 2.0 * b * b) * std::norm(x(i)) + std::norm(x((i + 1) % 3)) + b * b * std::norm(x((i + 2) % 3));
  }
  const CVector xc = x.conjugate();
  m -= (1.0 - b + b * b) / 2.0 * (projector(x) + projector(xc));
  return {SystemShape::single(3), m};
}

/// det X(b) at x = (1, e^{iα}, e^{iβ}).
inline double xb_det_closed_form(double b, double alpha, double beta) {
  const double q = 1.0 - b + b * b;
  return 1.5 * q * q * q * (3.0 - std::cos(2 * alpha) - std::cos(2 * beta) - std::cos(2 * (alpha - beta)));
}

// ---------------------------------------------------------------------------
// b = 0 optimality probe

struct OptimalityProbe {
  int grid_points = 0;
  int detected = 0;                // P for which some probe expectation is negative
  double formula_deviation = 0.0;  // closed forms vs direct evaluation
};

/// For P = |pα+qβ><·| + |rα+sβ><·| with α = |00>−|11>, β = |11>−|22>, checks
/// <z_1(t)|W_0−P|z_1(t)> = −t(|q|²+|s|²−t/6)/(1+t)² and
/// <z_3(t)|W_0−P|z_3(t)> = −t(p²+r²−t/6)/(1+t)², and that one of them is
/// negative at the probe t = 3·max(|q|²+|s|², p²+r²).
inline OptimalityProbe b0_optimality_probe(int steps = 5) {
  const WitnessFamilyPoint w0 = make_wb(0.0);
  CVector alpha = CVector::Zero(9), beta = CVector::Zero(9);
  alpha(0) = 1.0;
  alpha(4) = -1.0;
  beta(4) = 1.0;
  beta(8) = -1.0;
  std::vector<double> reals;
  for (int i = 0; i < steps; ++i) reals.push_back(static_cast<double>(i) / (steps - 1));
  std::vector<cplx> complexes;
  for (double re : reals)
    for (double im : {-0.5, 0.0, 0.5}) complexes.emplace_back(re - 0.5, im);

  OptimalityProbe out;
  auto expect = [&](const CMatrix& op, const CVector& v) { return v.dot(op * v).real(); };
  for (double p : reals)
    for (double r : reals)
      for (const cplx& q : complexes)
        for (const cplx& s : complexes) {
          const CVector u1 = p * alpha + q * beta;
          const CVector u2 = r * alpha + s * beta;
          const double qs = std::norm(q) + std::norm(s);
          const double pr = p * p + r * r;
          if (qs + pr == 0.0) continue;
          ++out.grid_points;
          const CMatrix diff = w0.w.matrix() - projector(u1) - projector(u2);
          const double t = 3.0 * std::max(qs, pr);
          const auto z = detail::family_zero_vectors(t);
          const double v1 = expect(diff, expand(z[0]));
          const double v3 = expect(diff, expand(z[2]));
          const double f1 = -t * (qs - t / 6.0) / ((1 + t) * (1 + t));
          const double f3 = -t * (pr - t / 6.0) / ((1 + t) * (1 + t));
          out.formula_deviation = std::max({out.formula_deviation, std::abs(v1 - f1), std::abs(v3 - f3)});
          if (std::min(v1, v3) < 0.0) ++out.detected;
        }
  return out;
}

// ---------------------------------------------------------------------------
// report

struct WitnessReport {
  double b = 0.0;
  double min_eigenvalue = 0.0;
  RVector spectrum;
  std::optional<double> charpoly_deviation;
  double trace = 0.0;
  double min_product_expectation = 0.0;
  ProductVector argmin;
  bool seesaw_monotone = true;
  double listed_zero_residual = 0.0;  // max |<z_i|W|z_i>| over the analytic list
  ZeroSet zero_set;
  double barycenter_expectation = 0.0;  // tr(W · barycenter of the listed zero states)
  bool is_ew = false;
  bool spanning = false;
  bool boundary_supported = false;
};

struct WitnessRunOptions {
  SeesawOptions seesaw;
  ZeroSetOptions zeros;
  double ew_tol = 1e-8;
  bool recover_zero_set = true;
};

inline WitnessReport witness_report(const WitnessFamilyPoint& pt, const WitnessRunOptions& opt = {}) {
  WitnessReport r;
  r.b = pt.b;
  const auto ed = eigh(pt.w);
  r.spectrum = ed.eigenvalues;
  r.min_eigenvalue = ed.eigenvalues(ed.eigenvalues.size() - 1);
  r.charpoly_deviation = charpoly_check(pt);
  r.trace = pt.w.trace();
  const SeesawResult ss = seesaw_min(pt.w, opt.seesaw);
  r.min_product_expectation = ss.value;
  r.argmin = ss.argmin;
  r.seesaw_monotone = ss.monotone();
  CMatrix bary = CMatrix::Zero(9, 9);
  for (const auto& z : pt.zeros) {
    const CVector v = expand(z);
    r.listed_zero_residual = std::max(r.listed_zero_residual, std::abs(v.dot(pt.w.matrix() * v).real()));
    bary += projector(v);
  }
  bary /= static_cast<double>(pt.zeros.size());
  r.barycenter_expectation = (pt.w.matrix() * bary).trace().real();
  if (opt.recover_zero_set) r.zero_set = zero_set_recover(pt.w, opt.zeros);
  const double scale = std::max(1.0, spectral_radius(ed.eigenvalues));
  r.is_ew = r.min_eigenvalue < -1e-6 * scale && r.min_product_expectation >= -opt.ew_tol;
  r.spanning = opt.recover_zero_set && r.zero_set.span_rank == pt.w.dim();
  r.boundary_supported = r.is_ew && std::abs(r.barycenter_expectation) <= 1e-9;
  return r;
}

}  // namespace sepfaces
