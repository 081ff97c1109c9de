#pragma once

// The real vector space H of Hermitian operators on a multipartite space:
// spectral decomposition, rank and PSD decisions, principal-minor sums,
// partial transposes and real-span ranks of operator families.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "sepfaces/multilinear.hpp"

namespace sepfaces {

/// Thresholds for every rank/PSD decision. Rank counts |λ| > rank_rtol·max(1, max|λ|);
/// PSD means λ_min >= -psd_tol·max(1, max|λ|).
struct Tolerance {
  double rank_rtol = 1e-8;
  double psd_tol = 1e-9;
};

inline double rank_threshold(double largest_magnitude, double rtol) {
  return rtol * std::max(1.0, largest_magnitude);
}

/// d x d Hermitian operator tagged with its shape. The stored matrix is the
/// exact symmetrization (M + M†)/2 of the input.
class HermOp {
 public:
  HermOp() = default;

  HermOp(SystemShape shape, const CMatrix& m) : shape_(std::move(shape)) {
    const int d = shape_.total();
    if (m.rows() != d || m.cols() != d) throw std::invalid_argument("HermOp: matrix size does not match shape");
    if (!m.allFinite()) throw std::invalid_argument("HermOp: non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (skew > 1e-12 * scale) {
      throw std::invalid_argument("HermOp: matrix is not Hermitian (deviation " + std::to_string(skew) + ")");
    }
    m_ = (m + m.adjoint()) / 2.0;
  }

  static HermOp identity(const SystemShape& shape) {
    return {shape, CMatrix::Identity(shape.total(), shape.total())};
  }

  static HermOp projector(const ProductVector& pv) { return {pv.shape(), sepfaces::projector(expand(pv))}; }

  const SystemShape& shape() const { return shape_; }
  const CMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double trace() const { return m_.trace().real(); }
  double max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

  HermOp operator+(const HermOp& o) const { return {shape_, m_ + o.m_}; }
  HermOp operator-(const HermOp& o) const { return {shape_, m_ - o.m_}; }
  HermOp operator*(double s) const { return {shape_, m_ * s}; }
  friend HermOp operator*(double s, const HermOp& h) { return h * s; }

  /// Hilbert-Schmidt inner product tr(A B), real for Hermitian A, B.
  double hs_inner(const HermOp& o) const { return (m_.adjoint().cwiseProduct(o.m_)).sum().real(); }

 private:
  SystemShape shape_;
  CMatrix m_;
};

struct EigenData {
  RVector eigenvalues;  // descending
  CMatrix eigenvectors;  // columns, orthonormal
  int sweeps = 0;
};

/// Cyclic Jacobi for a Hermitian matrix. Each rotation first removes the phase
/// of the pivot entry, then applies the real symmetric Schur rotation.
inline EigenData eigh(const CMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("eigh: matrix must be square");
  if (!input.allFinite()) throw std::invalid_argument("eigh: non-finite entries");
  const Eigen::Index n = input.rows();
  CMatrix a = (input + input.adjoint()) / 2.0;
  CMatrix v = CMatrix::Identity(n, n);

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };
  const double total = a.norm();
  const double stop = std::numeric_limits<double>::epsilon() * std::max(total, std::numeric_limits<double>::min());

  EigenData out;
  constexpr int kMaxSweeps = 100;
  double previous = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_norm();
    if (off <= stop || (sweep > 3 && off >= previous)) break;
    previous = off;
    out.sweeps = sweep + 1;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= std::numeric_limits<double>::min()) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / mag;  // e^{iφ}
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G on the (p, q) plane: [[c, s], [-s e^{-iφ}, c e^{-iφ}]].
        const cplx g00 = c;
        const cplx g01 = s;
        const cplx g10 = -s * std::conj(phase);
        const cplx g11 = c * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- A G
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * g00 + akq * g10;
          a(k, q) = akp * g01 + akq * g11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- G† A
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
          a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {  // V <- V G
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * g00 + vkq * g10;
          v(k, q) = vkp * g01 + vkq * g11;
        }
      }
    }
  }
  if (off_norm() > 1e-10 * std::max(1.0, total)) throw std::runtime_error("eigh: Jacobi iteration did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() > a(y, y).real(); });
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.eigenvalues(i) = a(src, src).real();
    out.eigenvectors.col(i) = v.col(src);
  }
  return out;
}

inline EigenData eigh(const HermOp& op) { return eigh(op.matrix()); }

inline double spectral_radius(const RVector& eigenvalues) {
  return eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
}

inline int numerical_rank(const RVector& eigenvalues, const Tolerance& tol = {}) {
  const double thr = rank_threshold(spectral_radius(eigenvalues), tol.rank_rtol);
  return static_cast<int>((eigenvalues.array().abs() > thr).count());
}

inline int numerical_rank(const HermOp& op, const Tolerance& tol = {}) {
  return numerical_rank(eigh(op).eigenvalues, tol);
}

inline bool is_psd(const RVector& eigenvalues, const Tolerance& tol = {}) {
  if (eigenvalues.size() == 0) return true;
  return eigenvalues.minCoeff() >= -tol.psd_tol * std::max(1.0, spectral_radius(eigenvalues));
}

inline bool is_psd(const HermOp& op, const Tolerance& tol = {}) { return is_psd(eigh(op).eigenvalues, tol); }

/// Subset S of parties, stored as a bitmask (bit i = party i, zero-based).
class TransposeMask {
 public:
  TransposeMask() = default;
  TransposeMask(const SystemShape& shape, unsigned bits) : parties_(shape.parties()), bits_(bits) {
    if (parties_ >= 32 || bits >= (1U << parties_)) throw std::invalid_argument("TransposeMask: party index out of range");
  }
  /// From one-based party indices, as written Γ_1, Γ_2, ...
  static TransposeMask of(const SystemShape& shape, const std::vector<int>& parties_one_based) {
    unsigned bits = 0;
    for (int p : parties_one_based) {
      if (p < 1 || p > shape.parties()) throw std::invalid_argument("TransposeMask: party index out of range");
      const unsigned bit = 1U << static_cast<unsigned>(p - 1);
      if (bits & bit) throw std::invalid_argument("TransposeMask: duplicate party index");
      bits |= bit;
    }
    return {shape, bits};
  }
  unsigned bits() const { return bits_; }
  bool contains(int party) const { return (bits_ >> static_cast<unsigned>(party)) & 1U; }
  std::string label() const {
    if (bits_ == 0) return "id";
    std::string s = "G";
    for (int i = 0; i < parties_; ++i)
      if (contains(i)) s += std::to_string(i + 1);
    return s;
  }

 private:
  int parties_ = 0;
  unsigned bits_ = 0;
};

/// All 2^n elements of the partial-transpose group.
inline std::vector<TransposeMask> all_masks(const SystemShape& shape) {
  std::vector<TransposeMask> out;
  for (unsigned bits = 0; bits < (1U << shape.parties()); ++bits) out.emplace_back(shape, bits);
  return out;
}

/// Entry (j, k) moves to the position with j_i and k_i exchanged for i in S.
inline CMatrix partial_transpose(const SystemShape& shape, const CMatrix& m, const TransposeMask& mask) {
  const int d = shape.total();
  if (m.rows() != d || m.cols() != d) throw std::invalid_argument("partial_transpose: size mismatch");
  if (mask.bits() == 0) return m;
  std::vector<std::vector<int>> digits(static_cast<std::size_t>(d));
  for (int f = 0; f < d; ++f) digits[static_cast<std::size_t>(f)] = shape.multi_index(f);
  CMatrix out(d, d);
  std::vector<int> rj(static_cast<std::size_t>(shape.parties()));
  std::vector<int> rk(static_cast<std::size_t>(shape.parties()));
  for (int r = 0; r < d; ++r) {
    const auto& j = digits[static_cast<std::size_t>(r)];
    for (int c = 0; c < d; ++c) {
      const auto& k = digits[static_cast<std::size_t>(c)];
      for (int i = 0; i < shape.parties(); ++i) {
        const auto u = static_cast<std::size_t>(i);
        const bool swap = mask.contains(i);
        rj[u] = swap ? k[u] : j[u];
        rk[u] = swap ? j[u] : k[u];
      }
      out(shape.flat_index(rj), shape.flat_index(rk)) = m(r, c);
    }
  }
  return out;
}

inline HermOp partial_transpose(const HermOp& op, const TransposeMask& mask) {
  return {op.shape(), partial_transpose(op.shape(), op.matrix(), mask)};
}

/// Elementary symmetric polynomials e_1..e_d of the eigenvalues, i.e. the
/// sums of all k x k principal minors.
inline std::vector<double> elementary_symmetric(const RVector& eigenvalues) {
  const auto d = static_cast<std::size_t>(eigenvalues.size());
  std::vector<double> e(d + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double lam = eigenvalues(static_cast<Eigen::Index>(i));
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += lam * e[k - 1];
  }
  return {e.begin() + 1, e.end()};
}

inline std::vector<double> principal_minor_sums(const HermOp& op) {
  return elementary_symmetric(eigh(op).eigenvalues);
}

struct MaskSpectrum {
  TransposeMask mask;
  double min_eigenvalue = 0.0;
  int rank = 0;
};

struct PptReport {
  bool ppt = true;
  bool full = true;
  std::vector<MaskSpectrum> masks;

  int min_rank() const {
    int r = std::numeric_limits<int>::max();
    for (const auto& m : masks) r = std::min(r, m.rank);
    return r;
  }
};

/// Spectrum summary of every partial transpose Γ_S(op), S over all 2^n masks.
inline PptReport ppt_report(const HermOp& op, const Tolerance& tol = {}) {
  PptReport report;
  for (const auto& mask : all_masks(op.shape())) {
    const EigenData ed = eigh(partial_transpose(op, mask));
    MaskSpectrum entry{mask, ed.eigenvalues.minCoeff(), numerical_rank(ed.eigenvalues, tol)};
    report.ppt = report.ppt && is_psd(ed.eigenvalues, tol);
    report.full = report.full && entry.rank == op.dim();
    report.masks.push_back(entry);
  }
  return report;
}

inline bool is_ppt(const HermOp& op, const Tolerance& tol = {}) { return ppt_report(op, tol).ppt; }

/// Every partial transpose (including the identity) has rank d.
inline bool is_full(const HermOp& op, const Tolerance& tol = {}) { return ppt_report(op, tol).full; }

/// The fixed isomorphism H ≅ R^{d²}: diagonal entries, then the real parts and
/// the imaginary parts of the strictly upper triangle (row-major).
inline RVector flatten_real(const CMatrix& m) {
  const Eigen::Index d = m.rows();
  RVector out(d * d);
  Eigen::Index pos = 0;
  for (Eigen::Index i = 0; i < d; ++i) out(pos++) = m(i, i).real();
  const Eigen::Index upper = d * (d - 1) / 2;
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j, ++k) {
      out(d + k) = m(i, j).real();
      out(d + upper + k) = m(i, j).imag();
    }
  return out;
}

inline RVector flatten_real(const HermOp& op) { return flatten_real(op.matrix()); }

/// Numerical rank of the rows of a real matrix from its singular values.
inline int matrix_rank(const RMatrix& rows, double rtol = 1e-8) {
  if (rows.size() == 0) return 0;
  Eigen::BDCSVD<RMatrix> svd(rows);
  const RVector& s = svd.singularValues();
  const double thr = rank_threshold(s.size() ? s(0) : 0.0, rtol);
  return static_cast<int>((s.array() > thr).count());
}

inline int matrix_rank(const CMatrix& rows, double rtol = 1e-8) {
  if (rows.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(rows);
  const RVector& s = svd.singularValues();
  const double thr = rank_threshold(s.size() ? s(0) : 0.0, rtol);
  return static_cast<int>((s.array() > thr).count());
}

/// Stack flattened operators as rows.
inline RMatrix stack_flattened(const std::vector<HermOp>& ops) {
  if (ops.empty()) throw std::invalid_argument("real_span_rank: empty operator list");
  const int d = ops.front().dim();
  RMatrix rows(static_cast<Eigen::Index>(ops.size()), d * d);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!(ops[i].shape() == ops.front().shape())) throw std::invalid_argument("real_span_rank: shape mismatch");
    rows.row(static_cast<Eigen::Index>(i)) = flatten_real(ops[i]).transpose();
  }
  return rows;
}

/// Dimension of the real span of a family of Hermitian operators inside H.
inline int real_span_rank(const std::vector<HermOp>& ops, const Tolerance& tol = {}) {
  return matrix_rank(stack_flattened(ops), tol.rank_rtol);
}

/// Rank of the complex span of vectors in C^d.
inline int complex_span_rank(const std::vector<CVector>& vectors, double rtol = 1e-8) {
  if (vectors.empty()) return 0;
  CMatrix rows(static_cast<Eigen::Index>(vectors.size()), vectors.front().size());
  for (std::size_t i = 0; i < vectors.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  return matrix_rank(rows, rtol);
}

/// Exchange the two parties of a bipartite operator: SWAP · M · SWAP.
inline HermOp swap_parties(const HermOp& op) {
  const auto& s = op.shape();
  if (s.parties() != 2) throw std::invalid_argument("swap_parties: operator must be bipartite");
  const int d1 = s.dim(0);
  const int d2 = s.dim(1);
  const SystemShape swapped({d2, d1});
  CMatrix out(op.dim(), op.dim());
  auto map = [&](int f) { return (f % d2) * d1 + f / d2; };
  for (int r = 0; r < op.dim(); ++r)
    for (int c = 0; c < op.dim(); ++c) out(map(r), map(c)) = op.matrix()(r, c);
  return {swapped, out};
}

}  // namespace sepfaces
