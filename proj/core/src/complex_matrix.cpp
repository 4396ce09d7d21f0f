#include "malevich/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace malevich {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kOffDiagonalTol = 1e-13;
constexpr double kPsdFloor = -1e-10;
constexpr int kMaxSweeps = 500;

void check_dim(int dim) {
  if (dim < 2 || dim > 4) {
    raise(ErrorCode::wrong_dim, "dimension must be 2, 3 or 4, got " + std::to_string(dim));
  }
}

void check_same_dim(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim() != y.dim()) {
    raise(ErrorCode::wrong_dim, "operand dimensions differ");
  }
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::wrong_dim: return "wrong_dim";
    case ErrorCode::not_hermitian: return "not_hermitian";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::not_psd: return "not_psd";
    case ErrorCode::not_density: return "not_density";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::bad_diagonal: return "bad_diagonal";
    case ErrorCode::inconsistent_triples: return "inconsistent_triples";
    case ErrorCode::out_of_simplex: return "out_of_simplex";
    case ErrorCode::not_unit_norm: return "not_unit_norm";
    case ErrorCode::unsupported_family: return "unsupported_family";
    case ErrorCode::infeasible_start: return "infeasible_start";
    case ErrorCode::no_progress: return "no_progress";
  }
  return "unknown";
}

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(i, j) = (*this)(j, i);
  return r;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::hermiticity_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return r;
}

void ComplexMatrix::hermitize() {
  for (int i = 0; i < dim_; ++i) {
    (*this)(i, i) = Complex((*this)(i, i).real(), 0.0);
    for (int j = i + 1; j < dim_; ++j) {
      Complex avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      (*this)(i, j) = avg;
      (*this)(j, i) = std::conj(avg);
    }
  }
}

double ComplexMatrix::max_abs() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r = std::max(r, std::abs((*this)(i, j)));
  return r;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  check_same_dim(*this, other);
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      r = std::max(r, std::abs((*this)(i, j) - other(i, j)));
  return r;
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
  check_same_dim(x, y);
  ComplexMatrix r(x.dim_);
  for (int i = 0; i < 16; ++i) r.a_[i] = x.a_[i] + y.a_[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
  check_same_dim(x, y);
  ComplexMatrix r(x.dim_);
  for (int i = 0; i < 16; ++i) r.a_[i] = x.a_[i] - y.a_[i];
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
  check_same_dim(x, y);
  const int n = x.dim_;
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex xik = x(i, k);
      if (xik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& x) {
  ComplexMatrix r(x.dim_);
  for (int i = 0; i < 16; ++i) r.a_[i] = s * x.a_[i];
  return r;
}

ComplexMatrix operator*(double s, const ComplexMatrix& x) { return Complex(s, 0.0) * x; }

namespace {

// Exact unitary annihilating the (p,q) off-diagonal entry.  The first column
// is the normalized eigenvector of the 2x2 block [[a, b], [b*, d]] belonging
// to its larger eigenvalue; the second column is its orthonormal partner.
struct PairRotation {
  Complex u11, u21;  // first column (u12, u22) = (-conj(u21), conj(u11))
  double lambda_hi, lambda_lo;
};

PairRotation solve_pair(double a, double d, Complex b) {
  const double h = 0.5 * (a - d);
  const double r = std::hypot(h, std::abs(b));
  const double mean = 0.5 * (a + d);
  PairRotation rot;
  rot.lambda_hi = mean + r;
  rot.lambda_lo = mean - r;
  // Pick the eigenvector formula whose trailing component stays O(r) to
  // avoid cancellation when |b| << |a - d|.
  Complex v1, v2;
  if (h >= 0.0) {
    v1 = rot.lambda_hi - d;  // = h + r, guaranteed >= r
    v2 = std::conj(b);
  } else {
    v1 = b;
    v2 = rot.lambda_hi - a;  // = r - h, guaranteed >= r
  }
  const double norm = std::sqrt(std::norm(v1) + std::norm(v2));
  rot.u11 = v1 / norm;
  rot.u21 = v2 / norm;
  return rot;
}

double offdiag_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (int p = 0; p < m.dim(); ++p)
    for (int q = p + 1; q < m.dim(); ++q) s += std::norm(m(p, q));
  return std::sqrt(2.0 * s);
}

}  // namespace

EigenResult hermitian_eigen(const ComplexMatrix& m) {
  if (m.hermiticity_residual() > kHermitianTol) {
    raise(ErrorCode::not_hermitian, "hermiticity residual above 1e-12");
  }
  const int n = m.dim();
  ComplexMatrix a = m;
  a.hermitize();
  ComplexMatrix v = ComplexMatrix::identity(n);

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_norm(a) <= kOffDiagonalTol) {
      converged = true;
      break;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        if (std::abs(b) == 0.0) continue;
        const PairRotation rot = solve_pair(a(p, p).real(), a(q, q).real(), b);
        const Complex u11 = rot.u11, u21 = rot.u21;
        const Complex u12 = -std::conj(u21), u22 = std::conj(u11);
        // rows p,q of A <- U^dagger A
        for (int k = 0; k < n; ++k) {
          const Complex xp = a(p, k), xq = a(q, k);
          a(p, k) = std::conj(u11) * xp + std::conj(u21) * xq;
          a(q, k) = std::conj(u12) * xp + std::conj(u22) * xq;
        }
        // columns p,q of A <- A U, and accumulate V <- V U
        for (int k = 0; k < n; ++k) {
          const Complex xp = a(k, p), xq = a(k, q);
          a(k, p) = xp * u11 + xq * u21;
          a(k, q) = xp * u12 + xq * u22;
          const Complex vp = v(k, p), vq = v(k, q);
          v(k, p) = vp * u11 + vq * u21;
          v(k, q) = vp * u12 + vq * u22;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = rot.lambda_hi;
        a(q, q) = rot.lambda_lo;
      }
    }
  }
  if (!converged && offdiag_norm(a) > kOffDiagonalTol) {
    raise(ErrorCode::no_convergence, "jacobi sweeps exceeded 500");
  }

  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  EigenResult res;
  res.eigenvalues.resize(n);
  res.eigenvectors = ComplexMatrix(n);
  for (int c = 0; c < n; ++c) {
    res.eigenvalues[c] = a(order[c], order[c]).real();
    for (int r = 0; r < n; ++r) res.eigenvectors(r, c) = v(r, order[c]);
  }
  return res;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  EigenResult es = hermitian_eigen(m);
  for (double& lam : es.eigenvalues) {
    if (lam < kPsdFloor) {
      raise(ErrorCode::not_psd, "eigenvalue " + std::to_string(lam) + " below -1e-10");
    }
    lam = lam > 0.0 ? std::sqrt(lam) : 0.0;
  }
  const int n = m.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k)
        s += es.eigenvectors(i, k) * es.eigenvalues[k] * std::conj(es.eigenvectors(j, k));
      r(i, j) = s;
    }
  r.hermitize();
  return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem which) {
  if (m.dim() != 4) raise(ErrorCode::wrong_dim, "partial transpose needs a 4x4 matrix");
  ComplexMatrix r(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int m1 = i >> 1, m2 = i & 1;
      const int n1 = j >> 1, n2 = j & 1;
      if (which == Subsystem::second) {
        // (m1 m2; n1 n2) <- (m1 n2; n1 m2)
        r(i, j) = m((m1 << 1) | n2, (n1 << 1) | m2);
      } else {
        r(i, j) = m((n1 << 1) | m2, (m1 << 1) | n2);
      }
    }
  }
  return r;
}

double purity(const ComplexMatrix& density) {
  if (density.hermiticity_residual() > kHermitianTol) {
    raise(ErrorCode::not_density, "purity input not hermitian");
  }
  if (std::abs(density.trace() - Complex(1.0, 0.0)) > 1e-10) {
    raise(ErrorCode::not_density, "purity input trace differs from 1");
  }
  double s = 0.0;
  for (int i = 0; i < density.dim(); ++i)
    for (int j = 0; j < density.dim(); ++j) s += std::norm(density(i, j));
  return s;
}

double min_eigenvalue(const ComplexMatrix& m) {
  const EigenResult es = hermitian_eigen(m);
  return es.eigenvalues.back();
}

DensityCheck check_density(const ComplexMatrix& m) {
  DensityCheck c;
  c.hermitian = m.hermiticity_residual() <= kHermitianTol;
  c.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  if (!c.hermitian) return c;
  c.min_eigenvalue = min_eigenvalue(m);
  c.ok = c.trace_error <= kHermitianTol && c.min_eigenvalue >= kPsdFloor;
  return c;
}

}  // namespace malevich
