#pragma once

// The homogeneous cyclic inequality
//   x/(ax+by+cz) + y/(ay+bz+cx) + z/(az+bx+cy) <= 3/(a+b+c)
// on the closed first orthant, for admissible (a, b, c).

#include <cmath>
#include <random>
#include <stdexcept>

#include "sepfaces/multilinear.hpp"

namespace sepfaces {

struct CyclicParams {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double x = 1.0;
  double y = 1.0;
  double z = 1.0;
};

/// 2(b+c) − 3√(bc)
inline double cyclic_boundary(double b, double c) { return 2.0 * (b + c) - 3.0 * std::sqrt(b * c); }

/// The boundary comparison allows 1e-12 relative slack so that parameters
/// lying on the boundary in exact arithmetic pass.
inline bool cyclic_admissible(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c >= 0.0)) return false;
  return a >= cyclic_boundary(b, c) - 1e-12 * std::max(1.0, a) && (a * b - c * c) * (a * c - b * b) < 0.0;
}

inline bool cyclic_admissible(const CyclicParams& p) { return cyclic_admissible(p.a, p.b, p.c); }

/// (a, b, c) = (2 − 3β + 2β², 1, β²); these sit on the admissibility boundary.
inline CyclicParams witness_cyclic_params(double beta) {
  CyclicParams p;
  p.a = 2.0 - 3.0 * beta + 2.0 * beta * beta;
  p.b = 1.0;
  p.c = beta * beta;
  return p;
}

/// 3/(a+b+c) − f(x, y, z)
inline double cyclic_gap(const CyclicParams& p) {
  if (!(p.x >= 0.0 && p.y >= 0.0 && p.z >= 0.0)) throw std::invalid_argument("cyclic_gap: point must be nonnegative");
  if (!(p.x + p.y + p.z > 0.0)) throw std::invalid_argument("cyclic_gap: point is zero");
  const double d1 = p.a * p.x + p.b * p.y + p.c * p.z;
  const double d2 = p.a * p.y + p.b * p.z + p.c * p.x;
  const double d3 = p.a * p.z + p.b * p.x + p.c * p.y;
  if (!(d1 > 0.0 && d2 > 0.0 && d3 > 0.0)) throw std::domain_error("cyclic_gap: zero denominator");
  return 3.0 / (p.a + p.b + p.c) - (p.x / d1 + p.y / d2 + p.z / d3);
}

/// 2(b+c) − 3√(bc) − (b²+c²)/(b+c); positive whenever b ≠ c.
inline double boundary_comparison_gap(double b, double c) { return cyclic_boundary(b, c) - (b * b + c * c) / (b + c); }

/// The three boundary equality points, scaled so the nonzero pair is
/// (1, √(c/b)) or its analogue. Requires c > 0.
inline CyclicParams cyclic_equality_point(CyclicParams p, int which) {
  const double r = std::sqrt(p.c / p.b);
  switch (which) {
    case 0: p.x = p.y = p.z = 1.0; break;
    case 1: p.x = 0.0; p.y = 1.0; p.z = r; break;  // b z² = c y²
    case 2: p.y = 0.0; p.z = 1.0; p.x = r; break;  // b x² = c z²
    case 3: p.z = 0.0; p.x = 1.0; p.y = r; break;  // b y² = c x²
    default: throw std::invalid_argument("cyclic_equality_point: index out of range");
  }
  return p;
}

/// β uniform on (0, 2) away from 1, then a uniform point in [0,1]³.
inline CyclicParams sample_witness_cyclic(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double beta = 1.0;
  while (std::abs(beta - 1.0) < 1e-6 || beta <= 0.0) beta = 2.0 * u(rng);
  CyclicParams p = witness_cyclic_params(beta);
  do {
    p.x = u(rng);
    p.y = u(rng);
    p.z = u(rng);
  } while (!(p.x + p.y + p.z > 0.0));
  return p;
}

/// Random admissible (a, b, c) with a at or above the boundary, by rejection.
inline CyclicParams sample_admissible_cyclic(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CyclicParams p;
  do {
    p.b = 0.05 + 2.0 * u(rng);
    p.c = 2.0 * u(rng);
    p.a = cyclic_boundary(p.b, p.c) + (u(rng) < 0.5 ? 0.0 : u(rng));
  } while (!cyclic_admissible(p));
  p.x = u(rng);
  p.y = u(rng);
  p.z = u(rng);
  if (p.x + p.y + p.z == 0.0) p.x = 1.0;
  return p;
}

}  // namespace sepfaces
