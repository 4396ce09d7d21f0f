#pragma once

#include <array>
#include <string>

#include "malevich/complex_matrix.hpp"

namespace malevich {

/// Probabilities of the +1/2 outcome for spin projections along x, y, z.
/// A triple describes a quantum state when it lies inside the ball
/// (p1-1/2)^2 + (p2-1/2)^2 + (p3-1/2)^2 <= 1/4.
struct ProbabilityTriple {
  double p1 = 0.5;
  double p2 = 0.5;
  double p3 = 0.5;
};

/// Signed distance-squared to the quantumness ball: <= 0 means physical.
double quantumness_residual(const ProbabilityTriple& p);
bool is_quantum(const ProbabilityTriple& p, double tol = 1e-12);
bool in_unit_box(const ProbabilityTriple& p);

struct BlochVector {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// 2x2 density matrix assembled from a probability triple:
///   rho11 = p3,  rho12 = (p1 - 1/2) - i (p2 - 1/2).
/// `positive` records whether the triple passed the quantumness test;
/// the matrix is returned either way.
struct QubitDensity {
  ComplexMatrix matrix{2};
  bool positive = false;
};

/// Throws out_of_range when a component leaves [0, 1].
QubitDensity qubit_from_probabilities(const ProbabilityTriple& p);

/// Inverse entry map; throws not_density for invalid 2x2 input.
ProbabilityTriple probabilities_from_qubit(const ComplexMatrix& rho);

/// (2p1-1, 2p2-1, 2p3-1); unit norm iff the state is pure.
BlochVector bloch_vector(const ProbabilityTriple& p);

/// Triangle side lengths together with the square areas l_k^2 built on them
/// and their sum S = l1^2 + l2^2 + l3^2.
struct TriangleGeometry {
  std::array<double, 3> sides{};
  std::array<double, 3> areas{};
  double area_sum = 0.0;
};

/// Side lengths with the cyclic closure p4 = p1:
///   l_k^2 = 2p_k^2 + 2p_{k+1}^2 + 2 p_k p_{k+1} - 4 p_k - 2 p_{k+1} + 2.
TriangleGeometry triangle_geometry(const ProbabilityTriple& p);

/// S = l1^2 + l2^2 + l3^2 evaluated in closed form,
///   S = 2 (2p1^2 + 3(1 - p1 - p2 - p3) + p1 p2 + p1 p3 + 2p2^2 + p2 p3 + 2p3^2).
double area_sum(const ProbabilityTriple& p);

/// S_L = 2 sum_k p_k (1 - p_k) - 1 = 1 - Tr(rho^2).
double linear_entropy(const ProbabilityTriple& p);

enum class MaximaClass { global_max, great_circle_local_max, other_pure, mixed };
std::string to_string(MaximaClass c);

/// Classification of a (near-)pure triple against the known extrema of S:
/// the two symmetric points p_k = (3 +- sqrt(3))/6 (S = 3) and the great
/// circle cut by the plane p1 + p2 + p3 = 3/2 (S = 9/4 everywhere on it).
MaximaClass classify_pure_maxima(const ProbabilityTriple& p, double tol = 1e-9);

/// Great-circle parametrization: given p1 in [(3-sqrt6)/6, (3+sqrt6)/6],
///   p2,3 = (3 - 2 p1 +- sqrt(-1 + 12 p1 - 12 p1^2)) / 4.
/// Throws out_of_range outside the p1 interval.
ProbabilityTriple great_circle_point(double p1);

}  // namespace malevich
