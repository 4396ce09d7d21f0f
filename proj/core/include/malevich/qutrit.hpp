#pragma once

#include "malevich/qubit.hpp"

namespace malevich {

/// The four 2x2 reductions of a qutrit density matrix, each encoded as a
/// probability triple via the qubit entry map:
///   A from (1 - rho33, rho13),  B from (1 - rho22, rho12),
///   C from (rho11,     rho13),  D from (rho22,     rho23).
/// Exact linkage: p3D = 1 - p3B and p3C = p3A + p3B - 1; C shares its
/// off-diagonal (and hence p1, p2) with A.
struct ComponentQubits {
  ProbabilityTriple a, b, c, d;
};

/// Extraction; throws not_density for invalid 3x3 input.
ComponentQubits component_qubits(const ComplexMatrix& qutrit);

/// Reconstruction from the A, B, D triples:
///   diag = (p3A + p3B - 1, 1 - p3B, 1 - p3A),
///   off-diagonals (1,2) = B, (1,3) = A, (2,3) = D with
///   X = (p1X - 1/2) - i (p2X - 1/2).
/// Hermitian and unit trace by construction; `psd` reports the eigenvalue
/// check (floor -1e-10).  Throws bad_diagonal when p3A + p3B < 1.
struct QutritBuild {
  ComplexMatrix matrix{3};
  bool psd = false;
  double min_eigenvalue = 0.0;
};

QutritBuild qutrit_from_probabilities(const ProbabilityTriple& a, const ProbabilityTriple& b,
                                      const ProbabilityTriple& d);

/// S_L = 2 (sum_{j in A,B,D} sum_k p_k(j)(1 - p_k(j))
///          + p3A (1 - p3B) + p3B^2) - 5.
/// Equals 1 - Tr(rho^2) of the reconstructed qutrit.
/// Throws inconsistent_triples when |p3D - (1 - p3B)| > 1e-12.
double qutrit_linear_entropy(const ComponentQubits& c);

/// Same value written through the component entropies:
///   sum_j S_L(j) - 2 (1 - p3B)(1 + p3B - p3A).
double qutrit_linear_entropy_decomposed(const ComponentQubits& c);

/// Square-area sum over the B, C, D representation:
///   S = S(pB) + S(pC) + S(p1D, p2D, 1 - p3B).
double qutrit_area_sum(const ComponentQubits& c);

/// Pure-state chart
///   psi = (sqrt(1 - pb^2 - pg^2), pb e^{i beta}, pg e^{i gamma}).
/// Throws out_of_simplex when pb^2 + pg^2 > 1 (tolerance 1e-12) and
/// out_of_range for negative amplitudes.
struct PureQutritParams {
  double p_beta = 0.0;
  double p_gamma = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

ComplexMatrix pure_qutrit(const PureQutritParams& q);

}  // namespace malevich
