#pragma once

// Generators and brute-force oracles shared by the test suites. Nothing here
// calls into the code paths it is used to check.

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sepfaces/herm.hpp"

namespace sepfaces::testing {

inline CMatrix random_hermitian(int d, Rng& rng) {
  const CMatrix g = [&] {
    CMatrix m(d, d);
    for (int c = 0; c < d; ++c) m.col(c) = complex_gaussian(d, rng);
    return m;
  }();
  return (g + g.adjoint()) / 2.0;
}

inline CMatrix random_psd(int d, int rank, Rng& rng) {
  CMatrix g(d, rank);
  for (int c = 0; c < rank; ++c) g.col(c) = complex_gaussian(d, rng);
  return g * g.adjoint();
}

/// Random convex mixture of product projectors, unit trace.
inline HermOp random_separable(const SystemShape& shape, int terms, Rng& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  CMatrix acc = CMatrix::Zero(shape.total(), shape.total());
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const double w = u(rng);
    acc += w * projector(expand(sample_product_vector(shape, rng)));
    total += w;
  }
  return {shape, acc / total};
}

/// Sum of all k x k principal minors by explicit subset enumeration.
inline std::vector<double> brute_force_minor_sums(const CMatrix& m) {
  const int d = static_cast<int>(m.rows());
  std::vector<double> sums(static_cast<std::size_t>(d), 0.0);
  for (unsigned subset = 1; subset < (1U << d); ++subset) {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
      if (subset & (1U << i)) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    CMatrix sub(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = m(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    sums[static_cast<std::size_t>(k - 1)] += sub.determinant().real();
  }
  return sums;
}

/// Partial transpose by explicit index loops over the tensor legs of a
/// bipartite d1 x d2 operator (transpose of party 1 and/or party 2).
inline CMatrix bipartite_partial_transpose(const CMatrix& m, int d1, int d2, bool first, bool second) {
  CMatrix out(d1 * d2, d1 * d2);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2)
      for (int k1 = 0; k1 < d1; ++k1)
        for (int k2 = 0; k2 < d2; ++k2) {
          const int r1 = first ? k1 : i1, c1 = first ? i1 : k1;
          const int r2 = second ? k2 : i2, c2 = second ? i2 : k2;
          out(r1 * d2 + r2, c1 * d2 + c2) = m(i1 * d2 + i2, k1 * d2 + k2);
        }
  return out;
}

inline CVector basis(int d, int i) {
  CVector v = CVector::Zero(d);
  v(i) = 1.0;
  return v;
}

}  // namespace sepfaces::testing
