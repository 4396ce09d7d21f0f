#pragma once

#include <array>
#include <complex>
#include <vector>

#include "malevich/error.hpp"

namespace malevich {

using Complex = std::complex<double>;

/// Dense complex matrix of dimension 2, 3 or 4 with value semantics.
///
/// Storage is a fixed row-major 4x4 block, so copies are cheap and no heap
/// allocation happens in the hot numeric paths.
class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(2) {}
  explicit ComplexMatrix(int dim);
  static ComplexMatrix identity(int dim);

  int dim() const noexcept { return dim_; }

  Complex& operator()(int r, int c) noexcept { return a_[r * 4 + c]; }
  const Complex& operator()(int r, int c) const noexcept { return a_[r * 4 + c]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  /// max_{jk} |a_jk - conj(a_kj)|
  double hermiticity_residual() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_residual() <= tol; }
  /// Replace the matrix by (A + A^dagger)/2.
  void hermitize();

  double max_abs() const;
  double max_abs_diff(const ComplexMatrix& other) const;

  friend ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
  friend ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
  friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& x);
  friend ComplexMatrix operator*(double s, const ComplexMatrix& x);

 private:
  int dim_;
  std::array<Complex, 16> a_{};
};

/// Eigenvalues sorted in descending order; eigenvectors stored as the
/// matching columns of a unitary matrix.
struct EigenResult {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Full eigensystem of a hermitian matrix by cyclic Jacobi rotations.
///
/// Each sweep annihilates every off-diagonal pair with an exact 2x2 unitary;
/// iteration stops when the off-diagonal Frobenius norm falls below 1e-13.
/// Throws not_hermitian (residual > 1e-12) or no_convergence (> 500 sweeps).
EigenResult hermitian_eigen(const ComplexMatrix& m);

/// Hermitian square root of a PSD matrix via its eigensystem.
/// Eigenvalues in [-1e-10, 0) are clamped to zero; below that throws not_psd.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

enum class Subsystem { first, second };

/// Partial transpose of a 4x4 two-qubit matrix in the product basis
/// |00>,|01>,|10>,|11>. Entry moves are exact swaps, so applying the map
/// twice restores the input bit for bit.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem which = Subsystem::second);

/// Tr(rho^2) for a hermitian unit-trace matrix, computed as sum |a_jk|^2.
double purity(const ComplexMatrix& density);

/// Smallest eigenvalue of a hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m);

struct DensityCheck {
  bool hermitian = false;
  double trace_error = 0.0;    // |Tr - 1|
  double min_eigenvalue = 0.0;
  bool ok = false;
};

/// Hermiticity within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.
DensityCheck check_density(const ComplexMatrix& m);

}  // namespace malevich
