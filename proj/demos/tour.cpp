// A short tour: a face dimension, a witness and its zero set, a full
// boundary state, and the product vectors of a random 2x3 subspace.

#include <cstdio>

#include "sepfaces/catalog.hpp"
#include "sepfaces/enumerate.hpp"
#include "sepfaces/faces.hpp"
#include "sepfaces/witness.hpp"

using namespace sepfaces;

int main() {
  const SystemShape qubit_qutrit({2, 3});
  const auto face = face_dim_hyperplane(HyperplaneSpec::schmidt_rank_2(qubit_qutrit));
  std::printf("2x3, normal |01>-|10>: face dimension %d (formula %lld)\n", face.face_dim, *face.formula_dim);

  const WitnessFamilyPoint w = make_wb(0.5);
  const SeesawResult ss = seesaw_min(w.w);
  const ZeroSet zeros = zero_set_recover(w.w);
  std::printf("W_1/2: min eigenvalue %.4f, min over product states %.2e, %zu zero clusters spanning rank %d\n",
              eigh(w.w).eigenvalues(8), ss.value, zeros.clusters.size(), zeros.span_rank);

  const DeltaSimplex delta = delta_simplex(0.5);
  const BoundaryCertificate cert = boundary_certificate(delta.barycenter, w.w);
  std::printf("barycenter of the %zu zero states: full=%d, tr(W rho)=%.1e, %s\n", delta.vertices.size(), cert.full,
              cert.expectation, to_string(cert.verdict).c_str());

  Rng rng(7);
  const SubspaceSpec v = random_subspace(qubit_qutrit, 3, rng);
  const EnumerationResult pvs = enumerate_pv(v);
  std::printf("random 3-dim subspace of 2x3 holds %d product vectors (max residual %.1e)\n", pvs.count(), pvs.max_residual());
  return 0;
}
