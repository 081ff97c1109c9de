#pragma once

// Product vectors (x₀,x₁)⊗y in a subspace V of C²⊗C^m with dim V = m.
// Orthogonality against a basis n_j of V^⊥ reads (x₀A₀ + x₁A₁)y = 0, so the
// product vectors sit at the roots of det(x₀A₀ + x₁A₁).

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sepfaces/herm.hpp"
#include "sepfaces/parallel.hpp"

namespace sepfaces {

class SubspaceSpec {
 public:
  SubspaceSpec() = default;

  /// Columns of `basis` span V. They must be linearly independent.
  SubspaceSpec(SystemShape shape, CMatrix basis) : shape_(std::move(shape)), basis_(std::move(basis)) {
    if (basis_.rows() != shape_.total()) throw std::invalid_argument("SubspaceSpec: basis vectors have the wrong length");
    if (basis_.cols() == 0) throw std::invalid_argument("SubspaceSpec: empty basis");
    if (!basis_.allFinite()) throw std::invalid_argument("SubspaceSpec: non-finite basis entry");
    if (matrix_rank(CMatrix(basis_.transpose())) != basis_.cols()) {
      throw std::invalid_argument("SubspaceSpec: basis is linearly dependent");
    }
  }

  SubspaceSpec(SystemShape shape, const std::vector<CVector>& basis)
      : SubspaceSpec(std::move(shape), stack_columns(shape.total(), basis)) {}

  const SystemShape& shape() const { return shape_; }
  const CMatrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }

  /// Orthonormal basis of V^⊥ as columns.
  CMatrix complement() const {
    Eigen::HouseholderQR<CMatrix> qr(basis_);
    const CMatrix q = qr.householderQ();
    return q.rightCols(shape_.total() - dim());
  }

  /// Same subspace, basis multiplied by a random invertible matrix.
  SubspaceSpec rebased(Rng& rng) const {
    CMatrix g(dim(), dim());
    for (int c = 0; c < dim(); ++c) g.col(c) = complex_gaussian(dim(), rng);
    return {shape_, CMatrix(basis_ * g)};
  }

 private:
  static CMatrix stack_columns(int d, const std::vector<CVector>& vs) {
    CMatrix m(d, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i].size() != d) throw std::invalid_argument("SubspaceSpec: basis vectors have the wrong length");
      m.col(static_cast<Eigen::Index>(i)) = vs[i];
    }
    return m;
  }

  SystemShape shape_;
  CMatrix basis_;
};

/// Gaussian basis of a random dim-k subspace.
inline SubspaceSpec random_subspace(const SystemShape& shape, int k, Rng& rng) {
  CMatrix b(shape.total(), k);
  for (int c = 0; c < k; ++c) b.col(c) = complex_gaussian(shape.total(), rng);
  return {shape, b};
}

struct PencilProblem {
  SystemShape shape;
  CMatrix a0;
  CMatrix a1;
  CMatrix normals;  // orthonormal basis of V^⊥ (columns)
  bool regular = false;
  bool degenerate = false;  // A₀ or A₁ rank-deficient

  int m() const { return static_cast<int>(a0.rows()); }
  CMatrix at(cplx x0, cplx x1) const { return x0 * a0 + x1 * a1; }
};

inline void require_two_by_m(const SubspaceSpec& spec) {
  const auto& s = spec.shape();
  if (s.parties() != 2 || s.dim(0) != 2) throw std::invalid_argument("enumerate_pv: shape must be 2⊗m");
  if (spec.dim() != s.dim(1)) throw std::invalid_argument("enumerate_pv: dim V must equal m");
}

inline PencilProblem build_pencil(const SubspaceSpec& spec, std::uint64_t seed = 0) {
  require_two_by_m(spec);
  const int m = spec.shape().dim(1);
  PencilProblem p;
  p.shape = spec.shape();
  p.normals = spec.complement();
  p.a0 = p.normals.topRows(m).adjoint();
  p.a1 = p.normals.bottomRows(m).adjoint();
  p.degenerate = matrix_rank(p.a0) < m || matrix_rank(p.a1) < m;
  // regularity: det at five random points on the projective line
  Rng rng(derive_seed(seed, 0x9e11));
  for (int k = 0; k < 5 && !p.regular; ++k) {
    const CVector x = complex_gaussian(2, rng).normalized();
    if (std::abs(p.at(x(0), x(1)).determinant()) > 1e-10) p.regular = true;
  }
  return p;
}

struct EnumerateOptions {
  std::uint64_t seed = 0;
  bool randomize = true;  // random Möbius change of t so the root at ∞ is generic
  double merge_tol = 1e-7;
  double cluster_tol = 1e-4;  // candidate multiple roots, tested for a degenerate kernel
  double kernel_rtol = 1e-7;
};

struct EnumerationResult {
  std::vector<ProductVector> vectors;
  std::vector<double> residuals;  // max_j |<n_j|pv>|
  bool infinite = false;
  int roots_at_infinity = 0;  // in the working parameter t
  std::vector<std::string> notes;

  int count() const { return static_cast<int>(vectors.size()); }
  double max_residual() const {
    double r = 0.0;
    for (double x : residuals) r = std::max(r, x);
    return r;
  }
};

namespace detail {

inline cplx horner(const std::vector<cplx>& c, cplx t) {
  cplx v = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) v = v * t + c[j];
  return v;
}

inline cplx horner_derivative(const std::vector<cplx>& c, cplx t) {
  cplx v = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) v = v * t + static_cast<double>(j) * c[j];
  return v;
}

/// Roots of Σ c_j t^j (c.back() ≠ 0) from the companion matrix.
inline std::vector<cplx> polynomial_roots(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {};
  CMatrix comp = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  for (auto& r : roots) {
    for (int it = 0; it < 8; ++it) {
      const cplx dp = horner_derivative(c, r);
      if (std::abs(dp) == 0.0) break;
      const cplx step = horner(c, r) / dp;
      if (!std::isfinite(std::abs(step))) break;
      r -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(r))) break;
    }
  }
  return roots;
}

inline CVector smallest_right_singular(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().col(a.cols() - 1);
}

}  // namespace detail

inline EnumerationResult enumerate_pv(const SubspaceSpec& spec, const EnumerateOptions& opt = {}) {
  const PencilProblem p = build_pencil(spec, opt.seed);
  const int m = p.m();
  EnumerationResult out;

  CMatrix u = CMatrix::Identity(2, 2);
  if (opt.randomize) {
    Rng rng(derive_seed(opt.seed, 0x7a11));
    CMatrix g(2, 2);
    g.col(0) = complex_gaussian(2, rng);
    g.col(1) = complex_gaussian(2, rng);
    u = Eigen::HouseholderQR<CMatrix>(g).householderQ();
  }
  // x = U (1, t)ᵀ
  const CMatrix b0 = u(0, 0) * p.a0 + u(1, 0) * p.a1;
  const CMatrix b1 = u(0, 1) * p.a0 + u(1, 1) * p.a1;

  // det(B₀ + tB₁) from its values at the (m+1)-th roots of unity
  const int nodes = m + 1;
  std::vector<cplx> values(static_cast<std::size_t>(nodes));
  double scale = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
    values[static_cast<std::size_t>(k)] = CMatrix(b0 + w * b1).determinant();
    scale = std::max(scale, std::abs(values[static_cast<std::size_t>(k)]));
  }
  if (scale < 1e-10) {
    out.infinite = true;
    out.notes.push_back("singular pencil: det vanishes identically, V contains infinitely many product vectors");
    return out;
  }
  std::vector<cplx> coeffs(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    cplx s = 0.0;
    for (int k = 0; k < nodes; ++k) s += values[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / nodes);
    coeffs[static_cast<std::size_t>(j)] = s / static_cast<double>(nodes);
  }
  double cmax = 0.0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-10 * cmax) coeffs.pop_back();
  out.roots_at_infinity = nodes - static_cast<int>(coeffs.size());

  std::vector<CVector> points;
  for (const cplx t : detail::polynomial_roots(coeffs)) {
    CVector x(2);
    x << u(0, 0) + u(0, 1) * t, u(1, 0) + u(1, 1) * t;
    points.push_back(x.normalized());
  }
  if (out.roots_at_infinity > 0) points.push_back(u.col(1));

  auto distance = [](const CVector& a, const CVector& b) {
    const double overlap = std::min(1.0, std::abs(a.dot(b)));
    return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
  };
  // A k-fold root comes back from the companion matrix split by ~eps^(1/k);
  // the centroid of the split cluster is accurate.
  std::vector<std::vector<CVector>> clusters;
  for (const auto& x : points) {
    bool placed = false;
    for (auto& c : clusters) {
      if (distance(c.front(), x) < opt.cluster_tol) {
        c.push_back(x);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({x});
  }
  auto centroid = [](const std::vector<CVector>& c) {
    CVector sum = CVector::Zero(2);
    for (const auto& x : c) {
      const cplx ov = c.front().dot(x);
      sum += std::abs(ov) > 0.0 ? CVector(x * (std::conj(ov) / std::abs(ov))) : x;
    }
    return CVector(sum.normalized());
  };

  std::vector<CVector> merged;
  std::vector<int> multiplicity;
  for (const auto& c : clusters) {
    if (c.size() > 1) {
      merged.push_back(centroid(c));
      multiplicity.push_back(static_cast<int>(c.size()));
      continue;
    }
    merged.push_back(c.front());
    multiplicity.push_back(1);
  }

  auto residual = [&](const ProductVector& pv) { return (p.normals.adjoint() * expand(pv)).cwiseAbs().maxCoeff(); };
  auto emit = [&](const CVector& x, const CVector& y) {
    ProductVector pv = ProductVector(p.shape, {x, y}).normalized();
    for (const auto& q : out.vectors) {
      if (std::abs(expand(q).dot(expand(pv))) > 1.0 - opt.merge_tol) return;
    }
    out.residuals.push_back(residual(pv));
    out.vectors.push_back(std::move(pv));
  };

  auto kernel_dim = [&](const RVector& sv) {
    const double thr = opt.kernel_rtol * std::max(1.0, sv(0));
    int k = 0;
    for (int i = 0; i < m; ++i) k += sv(i) <= thr ? 1 : 0;
    return k;
  };
  auto solve_simple = [&](CVector x) {
    CVector y = detail::smallest_right_singular(p.at(x(0), x(1)));
    // alternate refinement of the bilinear system
    for (int it = 0; it < 3; ++it) {
      CMatrix cols(m, 2);
      cols.col(0) = p.a0 * y;
      cols.col(1) = p.a1 * y;
      x = detail::smallest_right_singular(cols);
      y = detail::smallest_right_singular(p.at(x(0), x(1)));
    }
    emit(x, y);
  };

  for (std::size_t i = 0; i < merged.size(); ++i) {
    const CVector& x = merged[i];
    Eigen::JacobiSVD<CMatrix> svd(p.at(x(0), x(1)), Eigen::ComputeFullV);
    const int kernel = kernel_dim(svd.singularValues());
    if (kernel > 1) {
      out.infinite = true;
      out.notes.push_back("kernel of dimension " + std::to_string(kernel) +
                          " at a root: every y in it gives a product vector; kernel basis emitted");
      for (int k = m - kernel; k < m; ++k) emit(x, svd.matrixV().col(k));
      continue;
    }
    if (multiplicity[i] == 1) {
      solve_simple(x);
      continue;
    }
    // not degenerate: keep the members farther apart than merge_tol
    std::vector<CVector> kept;
    for (const auto& c : clusters[i]) {
      bool dup = false;
      for (const auto& k : kept) dup = dup || distance(k, c) < opt.merge_tol;
      if (!dup) kept.push_back(c);
    }
    if (kept.size() < clusters[i].size()) out.notes.push_back("coincident roots merged");
    for (const auto& c : kept) solve_simple(c);
  }
  return out;
}

/// Batch enumeration, task i seeded by derive_seed(seed, i).
inline std::vector<EnumerationResult> enumerate_many(const std::vector<SubspaceSpec>& specs, const EnumerateOptions& opt = {},
                                                     int threads = 0) {
  std::vector<EnumerationResult> out(specs.size());
  parallel_for(specs.size(), threads, [&](std::size_t i) {
    EnumerateOptions o = opt;
    o.seed = derive_seed(opt.seed, i);
    out[i] = enumerate_pv(specs[i], o);
  });
  return out;
}

struct PiPolytope {
  int vertices = 0;
  bool infinite = false;
  int span_rank = 0;      // real span of the vertex projectors
  int affine_dim = 0;
  int vector_rank = 0;    // complex span of the vertex vectors
  int stated_bound = 0;   // d − Σ(d_i − 1)
  bool stated_bound_holds = false;
  bool provable_bound_holds = false;  // affine_dim ≥ dim V − 1
  std::vector<ProductVector> vectors;
};

/// Random generic V ⊂ C²⊗C^m of dimension m, its product vectors, and the
/// dimension of their convex hull.
inline PiPolytope example_pi_polytope(const SystemShape& shape, std::uint64_t seed) {
  if (shape.parties() != 2 || shape.dim(0) != 2) throw std::invalid_argument("example_pi_polytope: shape must be 2⊗m");
  Rng rng(seed);
  const int m = shape.dim(1);
  const SubspaceSpec spec = random_subspace(shape, m, rng);
  EnumerateOptions opt;
  opt.seed = derive_seed(seed, 1);
  const EnumerationResult res = enumerate_pv(spec, opt);
  PiPolytope pi;
  pi.infinite = res.infinite;
  pi.vectors = res.vectors;
  pi.vertices = res.count();
  pi.stated_bound = shape.total() - (shape.dim(0) - 1) - (shape.dim(1) - 1);
  if (pi.infinite || pi.vertices == 0) return pi;
  std::vector<HermOp> ops;
  std::vector<CVector> vecs;
  for (const auto& pv : res.vectors) {
    vecs.push_back(expand(pv));
    ops.push_back(HermOp::projector(pv));
  }
  pi.span_rank = real_span_rank(ops);
  pi.affine_dim = pi.span_rank - 1;
  pi.vector_rank = complex_span_rank(vecs);
  pi.stated_bound_holds = pi.affine_dim >= pi.stated_bound;
  pi.provable_bound_holds = pi.affine_dim >= spec.dim() - 1;
  return pi;
}

}  // namespace sepfaces
