#pragma once

// Face dimensions of the separable body: faces cut out by hyperplanes V =
// normal^⊥, the symmetric faces, the Θ-invariant basis ρ[l], and the face
// spanned by a pair of product states.
//
// Every dimension here is a span rank over sampled extreme points. The
// sampled value is reported next to the closed-form value so a mismatch is
// visible rather than absorbed.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sepfaces/herm.hpp"
#include "sepfaces/parallel.hpp"

namespace sepfaces {

enum class NormalKind { product, schmidt_rank_2, general };

inline std::string to_string(NormalKind k) {
  switch (k) {
    case NormalKind::product: return "product";
    case NormalKind::schmidt_rank_2: return "schmidt-rank-2";
    default: return "general";
  }
}

/// Schmidt rank of a bipartite vector (rank of its d1 x d2 reshaping).
inline int schmidt_rank(const SystemShape& shape, const CVector& psi, double rtol = 1e-8) {
  if (shape.parties() != 2) throw std::invalid_argument("schmidt_rank: bipartite shape required");
  if (psi.size() != shape.total()) throw std::invalid_argument("schmidt_rank: vector length does not match shape");
  const int d1 = shape.dim(0);
  const int d2 = shape.dim(1);
  CMatrix m(d1, d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) m(i, j) = psi(i * d2 + j);
  return matrix_rank(m, rtol);
}

class HyperplaneSpec {
 public:
  static HyperplaneSpec product(const ProductVector& alpha) {
    HyperplaneSpec s(alpha.shape(), expand(alpha), NormalKind::product);
    s.alpha_ = alpha;
    return s;
  }

  /// The canonical rank-2 normal |01> - |10>.
  static HyperplaneSpec schmidt_rank_2(const SystemShape& shape) {
    if (shape.parties() != 2) throw std::invalid_argument("HyperplaneSpec: Schmidt-rank normal needs two parties");
    CVector psi = CVector::Zero(shape.total());
    psi(1) = 1.0;
    psi(shape.dim(1)) = -1.0;
    return {shape, psi, NormalKind::schmidt_rank_2};
  }

  /// a1⊗b1 + a2⊗b2 with Gaussian factors; rank 2 with probability 1.
  static HyperplaneSpec random_schmidt_rank_2(const SystemShape& shape, Rng& rng) {
    if (shape.parties() != 2) throw std::invalid_argument("HyperplaneSpec: Schmidt-rank normal needs two parties");
    CVector psi = kron(complex_gaussian(shape.dim(0), rng), complex_gaussian(shape.dim(1), rng)) +
                  kron(complex_gaussian(shape.dim(0), rng), complex_gaussian(shape.dim(1), rng));
    return general(shape, psi);
  }

  /// Classifies bipartite normals by Schmidt rank; other shapes stay general.
  static HyperplaneSpec general(const SystemShape& shape, const CVector& normal) {
    NormalKind kind = NormalKind::general;
    if (shape.parties() == 2 && normal.size() == shape.total()) {
      const int r = schmidt_rank(shape, normal);
      if (r == 2) kind = NormalKind::schmidt_rank_2;
      if (r == 1) {
        const int d2 = shape.dim(1);
        CMatrix m(shape.dim(0), d2);
        for (int i = 0; i < shape.dim(0); ++i)
          for (int j = 0; j < d2; ++j) m(i, j) = normal(i * d2 + j);
        Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double s0 = svd.singularValues()(0);
        return product(ProductVector(shape, {svd.matrixU().col(0) * s0, svd.matrixV().col(0).conjugate()}));
      }
    }
    return {shape, normal, kind};
  }

  const SystemShape& shape() const { return shape_; }
  const CVector& normal() const { return normal_; }
  NormalKind kind() const { return kind_; }
  const std::optional<ProductVector>& alpha() const { return alpha_; }

 private:
  HyperplaneSpec(SystemShape shape, CVector normal, NormalKind kind)
      : shape_(std::move(shape)), normal_(std::move(normal)), kind_(kind) {
    if (normal_.size() != shape_.total()) throw std::invalid_argument("HyperplaneSpec: normal length does not match shape");
    if (!all_finite(normal_) || !(normal_.norm() > 0.0)) throw std::invalid_argument("HyperplaneSpec: normal must be finite and nonzero");
    normal_ /= normal_.norm();
  }

  SystemShape shape_;
  CVector normal_;
  NormalKind kind_;
  std::optional<ProductVector> alpha_;
};

namespace detail {

/// Uniform draw from {x : Σ_j c_j x_j = 0}, normalized.
inline std::optional<CVector> sample_annihilated(const CVector& c, Rng& rng) {
  const double cn = c.norm();
  if (!(cn > 1e-12)) return std::nullopt;
  const CVector u = c.conjugate() / cn;
  CVector x = complex_gaussian(static_cast<int>(c.size()), rng);
  x -= u * u.dot(x);
  const double xn = x.norm();
  if (!(xn > 1e-12)) return std::nullopt;
  return x / xn;
}

}  // namespace detail

/// A random product vector inside V = normal^⊥. For product normals the party
/// carrying the orthogonality is chosen uniformly; otherwise party 1 absorbs
/// the single linear constraint given random factors on the others.
inline ProductVector sample_pv_in_hyperplane(const HyperplaneSpec& spec, Rng& rng) {
  const SystemShape& shape = spec.shape();
  constexpr int kRetries = 100;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::vector<CVector> fs;
    for (int i = 0; i < shape.parties(); ++i) fs.push_back(gauge_fix(complex_gaussian(shape.dim(i), rng)));
    int party = 0;
    CVector c;
    if (spec.kind() == NormalKind::product && spec.alpha()) {
      std::uniform_int_distribution<int> pick(0, shape.parties() - 1);
      party = pick(rng);
      c = spec.alpha()->factor(party).conjugate();
    } else {
      c = embedding_matrix(shape, fs, party).transpose() * spec.normal().conjugate();
    }
    auto x = detail::sample_annihilated(c, rng);
    if (!x) continue;
    fs[static_cast<std::size_t>(party)] = gauge_fix(*x);
    ProductVector pv(shape, std::move(fs));
    if (std::abs(spec.normal().dot(expand(pv))) <= 1e-10) return pv;
  }
  throw std::runtime_error("sample_pv_in_hyperplane: degenerate draws exhausted the retry budget");
}

inline ProductVector sample_pv_in_hyperplane(const HyperplaneSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return sample_pv_in_hyperplane(spec, rng);
}

struct FaceDimReport {
  int samples = 0;
  int span_rank = 0;
  int face_dim = 0;
  std::optional<long long> formula_dim;
  // rank of the first two thirds of the samples already equals the full rank
  bool stable = true;

  bool agrees() const { return !formula_dim || *formula_dim == face_dim; }
};

/// d² − 1 − ∏(2d_i − 1)
inline long long product_hyperplane_face_dim(const SystemShape& shape) {
  long long d = shape.total();
  long long prod = 1;
  for (int di : shape.dims()) prod *= 2LL * di - 1;
  return d * d - 1 - prod;
}

/// d(d − 2), bipartite
inline long long schmidt_rank_2_face_dim(const SystemShape& shape) {
  const long long d = shape.total();
  return d * (d - 2);
}

namespace detail {

inline FaceDimReport rank_report(const RMatrix& rows, std::optional<long long> formula, double rtol) {
  FaceDimReport r;
  r.samples = static_cast<int>(rows.rows());
  r.span_rank = matrix_rank(rows, rtol);
  r.face_dim = r.span_rank - 1;
  r.formula_dim = formula;
  const Eigen::Index head = std::max<Eigen::Index>(1, 2 * rows.rows() / 3);
  r.stable = matrix_rank(RMatrix(rows.topRows(head)), rtol) == r.span_rank;
  return r;
}

/// Flattened projectors of `count` sampled vectors; sample i uses its own
/// derived seed.
template <class Sampler>
RMatrix sampled_rows(int count, int width, std::uint64_t seed, int threads, Sampler&& sample) {
  RMatrix rows(count, width);
  parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    rows.row(static_cast<Eigen::Index>(i)) = flatten_real(projector(sample(rng))).transpose();
  });
  return rows;
}

}  // namespace detail

inline FaceDimReport face_dim_hyperplane(const HyperplaneSpec& spec, int samples = 0, std::uint64_t seed = 0,
                                         int threads = 1, const Tolerance& tol = {}) {
  const int d = spec.shape().total();
  if (samples == 0) samples = 3 * d * d;
  if (samples < 3 * d * d) throw std::invalid_argument("face_dim_hyperplane: need at least 3·d² samples");
  std::optional<long long> formula;
  if (spec.kind() == NormalKind::product) formula = product_hyperplane_face_dim(spec.shape());
  if (spec.kind() == NormalKind::schmidt_rank_2) formula = schmidt_rank_2_face_dim(spec.shape());
  const RMatrix rows = detail::sampled_rows(samples, d * d, seed, threads,
                                            [&](Rng& rng) { return expand(sample_pv_in_hyperplane(spec, rng)); });
  return detail::rank_report(rows, formula, tol.rank_rtol);
}

/// binom(n + d_1 − 1, n), the dimension of the symmetric subspace.
inline long long symmetric_subspace_dim(const SystemShape& shape) {
  return binomial(shape.parties() + shape.dim(0) - 1, shape.parties());
}

/// binom(2n + d_1 − 1, 2n) = |Λ_{2n}|
inline long long theta_symmetric_dim(const SystemShape& shape) {
  return binomial(2 * shape.parties() + shape.dim(0) - 1, 2 * shape.parties());
}

inline void require_equal_dims(const SystemShape& shape, const char* who) {
  if (!shape.equal_dims()) throw std::invalid_argument(std::string(who) + ": local dimensions must be equal");
}

/// Span of |x,...,x><x,...,x| over complex unit x.
inline FaceDimReport symmetric_face_dim(const SystemShape& shape, int samples = 0, std::uint64_t seed = 0,
                                        const Tolerance& tol = {}) {
  require_equal_dims(shape, "symmetric_face_dim");
  const long long b = symmetric_subspace_dim(shape);
  if (samples == 0) samples = static_cast<int>(3 * b * b);
  const int d = shape.total();
  const RMatrix rows = detail::sampled_rows(samples, d * d, seed, 1, [&](Rng& rng) {
    return expand(diagonal_product(shape, gauge_fix(complex_gaussian(shape.dim(0), rng))));
  });
  return detail::rank_report(rows, b * b - 1, tol.rank_rtol);
}

/// Span of |x,...,x><x,...,x| over real unit x.
inline FaceDimReport real_symmetric_face_dim(const SystemShape& shape, int samples = 0, std::uint64_t seed = 0,
                                             const Tolerance& tol = {}) {
  require_equal_dims(shape, "real_symmetric_face_dim");
  const long long k = theta_symmetric_dim(shape);
  if (samples == 0) samples = static_cast<int>(3 * k);
  const int d = shape.total();
  const RMatrix rows = detail::sampled_rows(samples, d * d, seed, 1, [&](Rng& rng) {
    return expand(diagonal_product(shape, gauge_fix(real_gaussian(shape.dim(0), rng))));
  });
  return detail::rank_report(rows, k - 1, tol.rank_rtol);
}

/// Sorted index tuple l_1 <= ... <= l_m with entries below d1.
struct IndexMultiset {
  std::vector<int> entries;
  auto operator<=>(const IndexMultiset&) const = default;
};

inline std::vector<IndexMultiset> index_multisets(int m, int d1) {
  std::vector<IndexMultiset> out;
  std::vector<int> cur(static_cast<std::size_t>(m), 0);
  while (true) {
    out.push_back({cur});
    int pos = m - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == d1 - 1) --pos;
    if (pos < 0) break;
    const int v = cur[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < m; ++i) cur[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

/// ρ[l] = Σ |j_1..j_n><k_1..k_n| over all (j, k) whose 2n digits sort to l,
/// one operator per l in Λ_{2n}.
inline std::vector<HermOp> theta_basis(const SystemShape& shape) {
  require_equal_dims(shape, "theta_basis");
  const int n = shape.parties();
  const int d = shape.total();
  const auto labels = index_multisets(2 * n, shape.dim(0));
  std::map<std::vector<int>, std::size_t> position;
  for (std::size_t i = 0; i < labels.size(); ++i) position[labels[i].entries] = i;

  std::vector<CMatrix> mats(labels.size(), CMatrix::Zero(d, d));
  std::vector<int> key(static_cast<std::size_t>(2 * n));
  for (int r = 0; r < d; ++r) {
    const auto jr = shape.multi_index(r);
    for (int c = 0; c < d; ++c) {
      const auto kc = shape.multi_index(c);
      std::copy(jr.begin(), jr.end(), key.begin());
      std::copy(kc.begin(), kc.end(), key.begin() + n);
      std::sort(key.begin(), key.end());
      mats[position.at(key)](r, c) = 1.0;
    }
  }
  std::vector<HermOp> out;
  out.reserve(mats.size());
  for (auto& m : mats) out.emplace_back(shape, m);
  return out;
}

/// Distance from op to the span of an orthogonal family.
inline double orthogonal_span_residual(const HermOp& op, const std::vector<HermOp>& basis) {
  CMatrix r = op.matrix();
  for (const auto& b : basis) r -= (b.hs_inner(op) / b.hs_inner(b)) * b.matrix();
  return r.norm();
}

/// Dimensions of H, H^re, H_s, H^Θ, H_s^re and H_s^Θ.
struct SubspaceDims {
  long long h = 0;
  long long h_re = 0;
  long long h_s = 0;
  long long h_theta = 0;
  long long h_s_re = 0;
  long long h_s_theta = 0;
  bool operator==(const SubspaceDims&) const = default;
};

inline SubspaceDims subspace_dim_formulas(const SystemShape& shape) {
  require_equal_dims(shape, "subspace_dim_formulas");
  const long long d = shape.total();
  const long long b = symmetric_subspace_dim(shape);
  long long theta = 1;
  for (int di : shape.dims()) theta *= binomial(di + 1, 2);
  return {d * d, d * (d + 1) / 2, b * b, theta, b * (b + 1) / 2, theta_symmetric_dim(shape)};
}

/// Measured from sampled spanning sets: product projectors for H, their images
/// under the projections onto H^re, H_s and H^Θ, and the two intersections
/// from dim(A ∩ B) = dim A + dim B − dim(A + B).
inline SubspaceDims real_sym_subspace_dims(const SystemShape& shape, int samples = 0, std::uint64_t seed = 0,
                                           const Tolerance& tol = {}) {
  require_equal_dims(shape, "real_sym_subspace_dims");
  const int d = shape.total();
  if (samples == 0) samples = 3 * d * d;
  const CMatrix ps = symmetric_projector(shape);
  const auto masks = all_masks(shape);
  RMatrix all(samples, d * d), re(samples, d * d), sym(samples, d * d), theta(samples, d * d);
  for (int i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const CMatrix rho = projector(expand(sample_product_vector(shape, rng)));
    CMatrix avg = CMatrix::Zero(d, d);
    for (const auto& m : masks) avg += partial_transpose(shape, rho, m);
    avg /= static_cast<double>(masks.size());
    all.row(i) = flatten_real(rho).transpose();
    re.row(i) = flatten_real(CMatrix((rho + rho.transpose()) / 2.0)).transpose();
    sym.row(i) = flatten_real(CMatrix(ps * rho * ps)).transpose();
    theta.row(i) = flatten_real(avg).transpose();
  }
  auto rank = [&](const RMatrix& m) { return static_cast<long long>(matrix_rank(m, tol.rank_rtol)); };
  auto joint = [&](const RMatrix& a, const RMatrix& b) {
    RMatrix s(a.rows() + b.rows(), a.cols());
    s << a, b;
    return rank(s);
  };
  SubspaceDims out;
  out.h = rank(all);
  out.h_re = rank(re);
  out.h_s = rank(sym);
  out.h_theta = rank(theta);
  out.h_s_re = out.h_s + out.h_re - joint(sym, re);
  out.h_s_theta = out.h_s + out.h_theta - joint(sym, theta);
  return out;
}

struct PairFace {
  enum class Kind { segment, bloch_family };
  Kind kind = Kind::segment;
  int party = 0;  // one-based; 0 for a segment

  std::string label() const {
    return kind == Kind::segment ? "Segment" : "BlochFamily(" + std::to_string(party) + ")";
  }
  bool operator==(const PairFace&) const = default;
};

inline double fidelity(const CVector& a, const CVector& b) {
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  return std::norm(a.dot(b)) / (na * nb);
}

/// The smallest face containing |a><a| and |b><b|: a segment when the pair
/// differs on at least two parties, otherwise the two-parameter family over
/// lin{a_i, b_i} on the single differing party.
inline PairFace face_of_pair(const ProductVector& a, const ProductVector& b) {
  if (!(a.shape() == b.shape())) throw std::invalid_argument("face_of_pair: shape mismatch");
  constexpr double kParallel = 1.0 - 1e-10;
  if (fidelity(expand(a), expand(b)) >= kParallel) throw std::invalid_argument("face_of_pair: parallel inputs");
  int differing = 0;
  int last = -1;
  for (int i = 0; i < a.shape().parties(); ++i) {
    if (fidelity(a.factor(i), b.factor(i)) < kParallel) {
      ++differing;
      last = i;
    }
  }
  if (differing >= 2) return {};
  return {PairFace::Kind::bloch_family, last + 1};
}

/// (Σ(d_i − 1))! / ∏(d_i − 1)!
inline boost::multiprecision::cpp_int count_generic_pv(const SystemShape& shape) {
  using boost::multiprecision::cpp_int;
  auto factorial = [](int k) {
    cpp_int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  int total = 0;
  cpp_int denom = 1;
  for (int di : shape.dims()) {
    total += di - 1;
    denom *= factorial(di - 1);
  }
  return factorial(total) / denom;
}

}  // namespace sepfaces
