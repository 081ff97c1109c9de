#pragma once

// Named states (Werner, isotropic, GHZ-mixed), the simplex Δ_b spanned by the
// zero states of W_b, boundary certificates through supporting witnesses,
// PPT-based separability for d <= 6, the bisection toward the boundary, and
// tensor composition of boundary states.

#include <functional>
#include <string>
#include <vector>

#include "sepfaces/herm.hpp"
#include "sepfaces/witness.hpp"

namespace sepfaces {

struct NamedState {
  std::string name;
  SystemShape shape;
  HermOp op;    // as displayed, not normalized
  HermOp unit;  // trace one
  std::string note;
};

inline std::vector<std::string> catalog_names() { return {"werner", "isotropic", "ghz-mixed"}; }

/// werner:    I − (1/d₁) Σ |ij><ji|        (d₁ = d₂)
/// isotropic: I + Σ |ii><jj|               (d₁ = d₂)
/// ghz-mixed: I + |GHZ><GHZ|, |GHZ> = |0..0> + |1..1>  (all qubits)
inline NamedState make_named(const std::string& name, const SystemShape& shape) {
  const int d = shape.total();
  CMatrix m = CMatrix::Identity(d, d);
  std::string note;
  if (name == "werner" || name == "isotropic") {
    if (shape.parties() != 2 || shape.dim(0) != shape.dim(1)) {
      throw std::invalid_argument("make_named: " + name + " needs a bipartite shape with equal dimensions");
    }
    const int d1 = shape.dim(0);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j) {
        if (name == "werner") m(i * d1 + j, j * d1 + i) -= 1.0 / d1;
        else m(i * d1 + i, j * d1 + j) += 1.0;
      }
    note = name == "werner" ? "I - (1/d1) sum_ij |ij><ji|" : "I + sum_ij |ii><jj|";
  } else if (name == "ghz-mixed") {
    for (int di : shape.dims())
      if (di != 2) throw std::invalid_argument("make_named: ghz-mixed needs all local dimensions equal to 2");
    m(0, 0) += 1.0;
    m(0, d - 1) += 1.0;
    m(d - 1, 0) += 1.0;
    m(d - 1, d - 1) += 1.0;
    note = "I + |GHZ><GHZ| with |GHZ> = |0..0> + |1..1>";
  } else {
    throw std::invalid_argument("make_named: unknown state '" + name + "'");
  }
  HermOp op(shape, m);
  HermOp unit = op * (1.0 / op.trace());
  return {name, shape, op, unit, note};
}

struct DeltaSimplex {
  double b = 0.0;
  std::vector<HermOp> vertices;
  HermOp barycenter;
  int span_rank = 0;

  int affine_dim() const { return span_rank - 1; }
};

inline DeltaSimplex delta_simplex(double b) {
  const WitnessFamilyPoint pt = make_wb(b);
  DeltaSimplex s;
  s.b = b;
  CMatrix sum = CMatrix::Zero(9, 9);
  for (const auto& z : pt.zeros) {
    s.vertices.push_back(HermOp::projector(z));
    sum += s.vertices.back().matrix();
  }
  s.barycenter = HermOp(qutrit_pair(), sum / static_cast<double>(pt.zeros.size()));
  s.span_rank = real_span_rank(s.vertices);
  return s;
}

enum class Verdict { certified_boundary, not_certified };

inline std::string to_string(Verdict v) {
  return v == Verdict::certified_boundary ? "certified-boundary" : "not-certified";
}

struct BoundaryCertificate {
  double expectation = 0.0;           // tr(Wρ)
  double witness_min = 0.0;           // see-saw minimum over product states
  double witness_min_eigenvalue = 0.0;
  bool full = false;
  Verdict verdict = Verdict::not_certified;
};

/// Certified when W has a negative eigenvalue, is nonnegative on product
/// states (see-saw ≥ −1e-8) and vanishes on ρ (|tr Wρ| ≤ 1e-9).
inline BoundaryCertificate boundary_certificate(const HermOp& state, const HermOp& witness,
                                                const SeesawOptions& so = {}) {
  if (!(state.shape() == witness.shape())) throw std::invalid_argument("boundary_certificate: shape mismatch");
  BoundaryCertificate c;
  c.expectation = (witness.matrix() * state.matrix()).trace().real();
  const auto ev = eigh(witness).eigenvalues;
  c.witness_min_eigenvalue = ev(ev.size() - 1);
  c.witness_min = seesaw_min(witness, so).value;
  c.full = is_full(state);
  const double scale = std::max(1.0, spectral_radius(ev));
  const bool ew = c.witness_min_eigenvalue < -1e-9 * scale && c.witness_min >= -1e-8;
  if (ew && std::abs(c.expectation) <= 1e-9) c.verdict = Verdict::certified_boundary;
  return c;
}

/// PPT decides separability when d <= 6. Refuses larger systems.
inline bool separable_d_le_6(const HermOp& state, const Tolerance& tol = {}) {
  if (state.dim() > 6) throw std::domain_error("separable_d_le_6: PPT is only necessary when d > 6");
  if (state.shape().parties() < 2) throw std::invalid_argument("separable_d_le_6: multipartite shape required");
  if (!is_psd(state, tol) || !(state.trace() > 0.0)) throw std::invalid_argument("separable_d_le_6: state must be PSD and nonzero");
  return is_ppt(state, tol);
}

struct BoundaryPoint {
  HermOp sigma;
  double t = 0.0;             // σ = (1−t)·I/d + t·ρ
  double oracle_value = 0.0;  // membership value at σ
  bool full = false;
  int iterations = 0;
};

/// Bisection along (1−t)·I/d + t·ρ for the sign change of `oracle`
/// (positive inside). The bracket is [0, t_max].
inline BoundaryPoint full_boundary_from_pptes(const HermOp& rho, const std::function<double(const HermOp&)>& oracle,
                                              double tol = 1e-12, double t_max = 1.5) {
  const int d = rho.dim();
  const HermOp mixed = HermOp::identity(rho.shape()) * (1.0 / d);
  auto at = [&](double t) { return mixed * (1.0 - t) + rho * t; };
  double lo = 0.0;
  double hi = t_max;
  if (!(oracle(at(lo)) > 0.0) || !(oracle(at(hi)) < 0.0)) {
    throw std::runtime_error("full_boundary_from_pptes: membership oracle does not change sign on the bracket");
  }
  BoundaryPoint out;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (oracle(at(mid)) > 0.0 ? lo : hi) = mid;
    ++out.iterations;
  }
  out.t = 0.5 * (lo + hi);
  out.sigma = at(out.t);
  out.oracle_value = oracle(out.sigma);
  out.full = is_full(out.sigma);
  return out;
}

struct ComposedState {
  HermOp op;
  bool full = false;
  // boundary membership is inherited from the factor and not re-certified
  bool boundary_inherited = false;
};

/// ρ⊗σ regrouped party-wise. `rho_on_boundary` records whether the caller
/// certified ρ on the boundary.
inline ComposedState compose_boundary(const HermOp& rho, const HermOp& sigma, bool rho_on_boundary = true) {
  if (rho.shape().parties() != sigma.shape().parties()) throw std::invalid_argument("compose_boundary: party-count mismatch");
  const SystemShape merged = merge_shapes(rho.shape(), sigma.shape());
  ComposedState c{HermOp(merged, compose(rho.shape(), sigma.shape(), rho.matrix(), sigma.matrix())), false, rho_on_boundary};
  c.full = is_full(c.op);
  return c;
}

}  // namespace sepfaces
