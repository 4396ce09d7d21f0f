#pragma once

#include <vector>

#include "malevich/qutrit.hpp"

namespace malevich {

/// Mean spin vector (Jx, Jy, Jz) of a spin-1 state in the (+1, 0, -1) basis.
struct SpinMeanVector {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double norm() const;
};

/// Density matrix of the spin-1 coherent state
///   |zeta> = (zeta^2, sqrt(2) zeta, 1) / (1 + |zeta|^2).
ComplexMatrix coherent_state(Complex zeta);

/// Means of the spin operators; the matrix must be 3x3 and Hermitian.
SpinMeanVector spin_means(const ComplexMatrix& rho);

/// Mean spin of |zeta>: (2 Re zeta, -2 Im zeta, |zeta|^2 - 1) / (1 + |zeta|^2).
/// Always a unit vector.
SpinMeanVector coherent_means(Complex zeta);

/// Component-qubit probabilities of a coherent state with the given unit
/// mean-spin vector.  Throws not_unit_norm when | |j| - 1 | > 1e-8.
///
///   p1A = 1/2 + (jx^2 - jy^2)/4        p2A = 1/2 + jx jy / 2
///   p3A = 1 - (1 - jz)^2 / 4
///   p1B = 1/2 + sqrt(2) jx (1 + jz)/4  p2B = 1/2 + sqrt(2) jy (1 + jz)/4
///   p3B = (1 + jz^2)/2
///   p1D = 1/2 + sqrt(2) jx (1 - jz)/4  p2D = 1/2 + sqrt(2) jy (1 - jz)/4
///   p3D = (1 - jz^2)/2
///
/// C shares the off-diagonal of A with p3C = (1 + jz)^2 / 4.
ComponentQubits probabilities_from_means(const SpinMeanVector& j);

/// max(|s(A) - s(B)|, |s(C) - s(D)|) with s(X) = sum_k (pkX - 1/2)^2.
/// Identically zero (up to rounding) on the coherent family.
double qubit_constraint_residual(const ComponentQubits& c);

/// Square-area sums of the A, B, D component qubits and the bounds they obey
/// on the coherent family: each in [3/2, 3], the total in [9/2, ~8.095].
struct InequalityReport {
  double s_a = 0.0;
  double s_b = 0.0;
  double s_d = 0.0;
  double total = 0.0;
  bool per_qubit_ok = false;
  bool total_ok = false;
};

InequalityReport check_area_inequalities(const ComponentQubits& c);

/// One sample of the coherent-family scan over the (jy, jz) unit disk with
/// jx = jx_sign * sqrt(1 - jy^2 - jz^2).
struct GridRow {
  double jy = 0.0;
  double jz = 0.0;
  double s_a = 0.0;
  double s_b = 0.0;
  double s_d = 0.0;
  double total = 0.0;
};

/// Samples `resolution` points per axis on [-1, 1]^2 and keeps those inside
/// the closed unit disk.  resolution must be at least 2; jx_sign is +1 or -1.
std::vector<GridRow> grid_scan(int resolution, int jx_sign = 1);

}  // namespace malevich
