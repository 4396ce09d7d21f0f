#include "malevich/qubit.hpp"

#include <cmath>

namespace malevich {

namespace {

constexpr double kQuantumTol = 1e-12;

double sq(double x) { return x * x; }

}  // namespace

double quantumness_residual(const ProbabilityTriple& p) {
  return sq(p.p1 - 0.5) + sq(p.p2 - 0.5) + sq(p.p3 - 0.5) - 0.25;
}

bool is_quantum(const ProbabilityTriple& p, double tol) {
  return quantumness_residual(p) <= tol;
}

bool in_unit_box(const ProbabilityTriple& p) {
  auto ok = [](double x) { return x >= 0.0 && x <= 1.0; };
  return ok(p.p1) && ok(p.p2) && ok(p.p3);
}

QubitDensity qubit_from_probabilities(const ProbabilityTriple& p) {
  if (!in_unit_box(p)) {
    raise(ErrorCode::out_of_range, "probabilities must lie in [0, 1]");
  }
  QubitDensity q;
  q.matrix = ComplexMatrix(2);
  q.matrix(0, 0) = p.p3;
  q.matrix(1, 1) = 1.0 - p.p3;
  q.matrix(0, 1) = Complex(p.p1 - 0.5, -(p.p2 - 0.5));
  q.matrix(1, 0) = std::conj(q.matrix(0, 1));
  q.positive = is_quantum(p, kQuantumTol);
  return q;
}

ProbabilityTriple probabilities_from_qubit(const ComplexMatrix& rho) {
  if (rho.dim() != 2) raise(ErrorCode::wrong_dim, "expected a 2x2 matrix");
  if (rho.hermiticity_residual() > 1e-12 || std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-12) {
    raise(ErrorCode::not_density, "input is not a unit-trace hermitian matrix");
  }
  // 2x2 PSD check in closed form
  const double a = rho(0, 0).real();
  const double det = a * (1.0 - a) - std::norm(rho(0, 1));
  if (a < -1e-10 || a > 1.0 + 1e-10 || det < -1e-10) {
    raise(ErrorCode::not_density, "input has a negative eigenvalue");
  }
  ProbabilityTriple p;
  p.p3 = a;
  p.p1 = rho(0, 1).real() + 0.5;
  p.p2 = 0.5 - rho(0, 1).imag();
  return p;
}

BlochVector bloch_vector(const ProbabilityTriple& p) {
  return {2.0 * p.p1 - 1.0, 2.0 * p.p2 - 1.0, 2.0 * p.p3 - 1.0};
}

TriangleGeometry triangle_geometry(const ProbabilityTriple& p) {
  const double c[4] = {p.p1, p.p2, p.p3, p.p1};
  TriangleGeometry g;
  for (int k = 0; k < 3; ++k) {
    const double pk = c[k], pn = c[k + 1];
    const double l2 = 2.0 * pk * pk + 2.0 * pn * pn + 2.0 * pk * pn - 4.0 * pk - 2.0 * pn + 2.0;
    g.areas[k] = l2;
    g.sides[k] = std::sqrt(std::max(l2, 0.0));
    g.area_sum += l2;
  }
  return g;
}

double area_sum(const ProbabilityTriple& p) {
  return 2.0 * (2.0 * p.p1 * p.p1 + 3.0 * (1.0 - p.p1 - p.p2 - p.p3) + p.p1 * p.p2 +
                p.p1 * p.p3 + 2.0 * p.p2 * p.p2 + p.p2 * p.p3 + 2.0 * p.p3 * p.p3);
}

double linear_entropy(const ProbabilityTriple& p) {
  return 2.0 * (p.p1 * (1.0 - p.p1) + p.p2 * (1.0 - p.p2) + p.p3 * (1.0 - p.p3)) - 1.0;
}

std::string to_string(MaximaClass c) {
  switch (c) {
    case MaximaClass::global_max: return "global_max";
    case MaximaClass::great_circle_local_max: return "great_circle_local_max";
    case MaximaClass::other_pure: return "other_pure";
    case MaximaClass::mixed: return "mixed";
  }
  return "unknown";
}

MaximaClass classify_pure_maxima(const ProbabilityTriple& p, double tol) {
  const double u1 = p.p1 - 0.5, u2 = p.p2 - 0.5, u3 = p.p3 - 0.5;
  const double pure_residual = std::abs(u1 * u1 + u2 * u2 + u3 * u3 - 0.25);
  if (pure_residual > tol) return MaximaClass::mixed;

  const double t = std::sqrt(3.0) / 6.0;
  auto near_symmetric = [&](double s) {
    return std::abs(u1 - s) <= tol && std::abs(u2 - s) <= tol && std::abs(u3 - s) <= tol;
  };
  if (near_symmetric(t) || near_symmetric(-t)) return MaximaClass::global_max;

  // The circle is the intersection of the pure sphere with the plane
  // p1 + p2 + p3 = 3/2; membership there is equivalent to matching the
  // explicit parametrization on either ordering of p2, p3.
  if (std::abs(u1 + u2 + u3) <= tol) return MaximaClass::great_circle_local_max;
  return MaximaClass::other_pure;
}

ProbabilityTriple great_circle_point(double p1) {
  const double disc = -1.0 + 12.0 * p1 - 12.0 * p1 * p1;
  if (disc < -1e-12) {
    raise(ErrorCode::out_of_range, "p1 outside [(3-sqrt6)/6, (3+sqrt6)/6]");
  }
  const double root = std::sqrt(std::max(disc, 0.0));
  ProbabilityTriple p;
  p.p1 = p1;
  p.p2 = 0.25 * (3.0 - 2.0 * p1 + root);
  p.p3 = 0.25 * (3.0 - 2.0 * p1 - root);
  return p;
}

}  // namespace malevich
