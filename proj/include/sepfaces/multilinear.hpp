#pragma once

// Multipartite index arithmetic, product vectors, tensor composition and the
// symmetric-subspace projector.
//
// Multi-indices are row-major with party 1 slowest: the flat index of
// (j_1, ..., j_n) is ((j_1 * d_2 + j_2) * d_3 + ...) + j_n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sepfaces {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent per-task seeds from a
/// root seed so results do not depend on how tasks are scheduled.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SystemShape {
 public:
  SystemShape() = default;

  /// Multipartite shape. Requires n >= 2 and every d_i >= 2.
  explicit SystemShape(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.size() < 2) {
      throw std::invalid_argument("SystemShape: need at least two parties");
    }
    validate_factors();
  }

  /// Single-factor helper shape (e.g. for 3x3 operators on one qutrit).
  static SystemShape single(int dim) {
    SystemShape s;
    s.dims_ = {dim};
    s.validate_factors();
    return s;
  }

  /// Parses "2x3", "2x2x2" (also accepts '*' and ',' as separators).
  static SystemShape parse(const std::string& text) {
    std::vector<int> dims;
    std::string token;
    auto flush = [&] {
      if (token.empty()) throw std::invalid_argument("SystemShape: bad shape '" + text + "'");
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(token, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("SystemShape: bad shape '" + text + "'");
      }
      if (used != token.size()) throw std::invalid_argument("SystemShape: bad shape '" + text + "'");
      dims.push_back(v);
      token.clear();
    };
    for (char ch : text) {
      if (ch == 'x' || ch == 'X' || ch == '*' || ch == ',') {
        flush();
      } else {
        token.push_back(ch);
      }
    }
    flush();
    return SystemShape(std::move(dims));
  }

  int parties() const { return static_cast<int>(dims_.size()); }
  int dim(int party) const { return dims_.at(static_cast<std::size_t>(party)); }
  const std::vector<int>& dims() const { return dims_; }
  int total() const {
    return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
  }
  bool equal_dims() const {
    return std::all_of(dims_.begin(), dims_.end(), [&](int v) { return v == dims_.front(); });
  }
  bool is_single() const { return dims_.size() == 1; }

  std::vector<int> multi_index(int flat) const {
    std::vector<int> digits(dims_.size());
    for (int i = parties() - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = flat % dims_[static_cast<std::size_t>(i)];
      flat /= dims_[static_cast<std::size_t>(i)];
    }
    return digits;
  }

  int flat_index(std::span<const int> digits) const {
    int flat = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) flat = flat * dims_[i] + digits[i];
    return flat;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "x" : "") << dims_[i];
    return os.str();
  }

  friend bool operator==(const SystemShape&, const SystemShape&) = default;

 private:
  void validate_factors() const {
    for (int v : dims_) {
      if (v < 2) throw std::invalid_argument("SystemShape: every local dimension must be >= 2");
    }
  }

  std::vector<int> dims_;
};

inline CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline bool all_finite(const CVector& v) {
  return std::all_of(v.data(), v.data() + v.size(),
                     [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

/// Unit norm, first nonzero component real and nonnegative. Components with
/// modulus below 1e-12 of the norm count as zero when locating the pivot.
inline CVector gauge_fix(const CVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("gauge_fix: zero vector");
  CVector out = v / norm;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double mag = std::abs(out(i));
    if (mag > 1e-12) {
      out *= std::conj(out(i)) / mag;
      out(i) = cplx(mag, 0.0);
      break;
    }
  }
  return out;
}

inline CVector complex_gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

inline CVector real_gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(normal(rng), 0.0);
  return v;
}

class ProductVector {
 public:
  ProductVector() = default;

  ProductVector(SystemShape shape, std::vector<CVector> factors)
      : shape_(std::move(shape)), factors_(std::move(factors)) {
    if (static_cast<int>(factors_.size()) != shape_.parties()) {
      throw std::invalid_argument("ProductVector: factor count does not match shape");
    }
    for (int i = 0; i < shape_.parties(); ++i) {
      const CVector& f = factors_[static_cast<std::size_t>(i)];
      if (f.size() != shape_.dim(i)) {
        throw std::invalid_argument("ProductVector: factor length does not match shape");
      }
      if (!all_finite(f)) throw std::invalid_argument("ProductVector: non-finite factor entry");
      if (!(f.norm() > 0.0)) throw std::invalid_argument("ProductVector: zero factor");
    }
  }

  const SystemShape& shape() const { return shape_; }
  const std::vector<CVector>& factors() const { return factors_; }
  const CVector& factor(int party) const { return factors_.at(static_cast<std::size_t>(party)); }

  double norm() const {
    double n = 1.0;
    for (const auto& f : factors_) n *= f.norm();
    return n;
  }

  ProductVector normalized() const {
    std::vector<CVector> fs;
    fs.reserve(factors_.size());
    for (const auto& f : factors_) fs.push_back(gauge_fix(f));
    return {shape_, std::move(fs)};
  }

  /// Entrywise conjugation of the factors on the parties in `parties_mask`
  /// (bit i set = party i). This is how a partial transpose acts on |a><a|.
  ProductVector conjugated(unsigned parties_mask) const {
    std::vector<CVector> fs = factors_;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (parties_mask & (1U << i)) fs[i] = fs[i].conjugate();
    }
    return {shape_, std::move(fs)};
  }

 private:
  SystemShape shape_;
  std::vector<CVector> factors_;
};

/// Kronecker expansion of a product vector into C^d.
inline CVector expand(const ProductVector& pv) {
  CVector out = pv.factor(0);
  for (int i = 1; i < pv.shape().parties(); ++i) out = kron(out, pv.factor(i));
  return out;
}

/// |v><v| for a vector v.
inline CMatrix projector(const CVector& v) { return v * v.adjoint(); }

/// Each factor complex-Gaussian, then normalized and gauge-fixed.
inline ProductVector sample_product_vector(const SystemShape& shape, Rng& rng) {
  std::vector<CVector> fs;
  fs.reserve(static_cast<std::size_t>(shape.parties()));
  for (int i = 0; i < shape.parties(); ++i) fs.push_back(gauge_fix(complex_gaussian(shape.dim(i), rng)));
  return {shape, std::move(fs)};
}

inline ProductVector sample_product_vector(const SystemShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  return sample_product_vector(shape, rng);
}

/// Real factors (standard Gaussian), normalized.
inline ProductVector sample_real_product_vector(const SystemShape& shape, Rng& rng) {
  std::vector<CVector> fs;
  for (int i = 0; i < shape.parties(); ++i) fs.push_back(gauge_fix(real_gaussian(shape.dim(i), rng)));
  return {shape, std::move(fs)};
}

/// Product vector |x, x, ..., x> on an equal-dimension shape.
inline ProductVector diagonal_product(const SystemShape& shape, const CVector& x) {
  if (!shape.equal_dims() || x.size() != shape.dim(0)) {
    throw std::invalid_argument("diagonal_product: shape must have equal local dimensions matching x");
  }
  return {shape, std::vector<CVector>(static_cast<std::size_t>(shape.parties()), x)};
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// The d x d_p matrix T with T x = f_1 ⊗ ... ⊗ x ⊗ ... ⊗ f_n (x in slot p).
/// The entry in slot p of `factors` is ignored.
inline CMatrix embedding_matrix(const SystemShape& shape, const std::vector<CVector>& factors, int party) {
  const int d = shape.total();
  CMatrix t = CMatrix::Zero(d, shape.dim(party));
  for (int f = 0; f < d; ++f) {
    const auto digits = shape.multi_index(f);
    cplx w = 1.0;
    for (int i = 0; i < shape.parties(); ++i) {
      if (i != party) w *= factors[static_cast<std::size_t>(i)](digits[static_cast<std::size_t>(i)]);
    }
    t(f, digits[static_cast<std::size_t>(party)]) = w;
  }
  return t;
}

/// Orthogonal projector onto the symmetric subspace of (C^{d_1})^{⊗n}.
inline CMatrix symmetric_projector(const SystemShape& shape) {
  if (!shape.equal_dims()) throw std::invalid_argument("symmetric_projector: local dimensions differ");
  const int n = shape.parties();
  const int d = shape.total();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double weight = 1.0 / static_cast<double>(perms.size());

  CMatrix p = CMatrix::Zero(d, d);
  std::vector<int> permuted(static_cast<std::size_t>(n));
  for (int col = 0; col < d; ++col) {
    const auto digits = shape.multi_index(col);
    for (const auto& pi : perms) {
      for (int i = 0; i < n; ++i) permuted[static_cast<std::size_t>(i)] = digits[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])];
      p(shape.flat_index(permuted), col) += weight;
    }
  }
  return p;
}

/// Merged shape with C_i = A_i ⊗ B_i.
inline SystemShape merge_shapes(const SystemShape& a, const SystemShape& b) {
  if (a.parties() != b.parties()) throw std::invalid_argument("merge_shapes: party-count mismatch");
  std::vector<int> dims;
  for (int i = 0; i < a.parties(); ++i) dims.push_back(a.dim(i) * b.dim(i));
  if (a.is_single()) return SystemShape::single(dims.front());
  return SystemShape(std::move(dims));
}

namespace detail {

/// Flat index in the merged shape for (flat index in A, flat index in B).
/// Within each C_i the A_i digit is the slower one.
inline std::vector<int> merged_index_table(const SystemShape& a, const SystemShape& b) {
  const SystemShape c = merge_shapes(a, b);
  std::vector<int> table(static_cast<std::size_t>(a.total() * b.total()));
  std::vector<int> digits(static_cast<std::size_t>(a.parties()));
  for (int fa = 0; fa < a.total(); ++fa) {
    const auto da = a.multi_index(fa);
    for (int fb = 0; fb < b.total(); ++fb) {
      const auto db = b.multi_index(fb);
      for (int i = 0; i < a.parties(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        digits[k] = da[k] * b.dim(i) + db[k];
      }
      table[static_cast<std::size_t>(fa * b.total() + fb)] = c.flat_index(digits);
    }
  }
  return table;
}

}  // namespace detail

/// ρ⊗σ regrouped as ((A_1 B_1), ..., (A_n B_n)).
inline CMatrix compose(const SystemShape& shape_a, const SystemShape& shape_b, const CMatrix& rho,
                       const CMatrix& sigma) {
  if (shape_a.parties() != shape_b.parties()) throw std::invalid_argument("compose: party-count mismatch");
  if (rho.rows() != shape_a.total() || sigma.rows() != shape_b.total()) {
    throw std::invalid_argument("compose: operator size does not match shape");
  }
  const auto table = detail::merged_index_table(shape_a, shape_b);
  const int da = shape_a.total();
  const int db = shape_b.total();
  CMatrix out(da * db, da * db);
  for (int ra = 0; ra < da; ++ra)
    for (int rb = 0; rb < db; ++rb) {
      const int r = table[static_cast<std::size_t>(ra * db + rb)];
      for (int ca = 0; ca < da; ++ca) {
        const cplx x = rho(ra, ca);
        for (int cb = 0; cb < db; ++cb) out(r, table[static_cast<std::size_t>(ca * db + cb)]) = x * sigma(rb, cb);
      }
    }
  return out;
}

inline ProductVector compose(const ProductVector& a, const ProductVector& b) {
  const SystemShape c = merge_shapes(a.shape(), b.shape());
  std::vector<CVector> fs;
  for (int i = 0; i < a.shape().parties(); ++i) fs.push_back(kron(a.factor(i), b.factor(i)));
  return {c, std::move(fs)};
}

}  // namespace sepfaces
