#include "malevich/qutrit.hpp"

#include <cmath>

namespace malevich {

namespace {

ProbabilityTriple triple_from_block(double p3, Complex off) {
  ProbabilityTriple t;
  t.p3 = p3;
  t.p1 = off.real() + 0.5;
  t.p2 = 0.5 - off.imag();
  return t;
}

Complex off_from_triple(const ProbabilityTriple& t) {
  return Complex(t.p1 - 0.5, -(t.p2 - 0.5));
}

double qubit_entropy(const ProbabilityTriple& p) {
  return 2.0 * (p.p1 * (1.0 - p.p1) + p.p2 * (1.0 - p.p2) + p.p3 * (1.0 - p.p3)) - 1.0;
}

void check_linkage(const ComponentQubits& c) {
  if (std::abs(c.d.p3 - (1.0 - c.b.p3)) > 1e-12) {
    raise(ErrorCode::inconsistent_triples, "p3D must equal 1 - p3B");
  }
}

}  // namespace

ComponentQubits component_qubits(const ComplexMatrix& qutrit) {
  if (qutrit.dim() != 3) raise(ErrorCode::wrong_dim, "expected a 3x3 matrix");
  const DensityCheck chk = check_density(qutrit);
  if (!chk.ok) raise(ErrorCode::not_density, "input is not a density matrix");

  ComponentQubits c;
  c.a = triple_from_block(1.0 - qutrit(2, 2).real(), qutrit(0, 2));
  c.b = triple_from_block(1.0 - qutrit(1, 1).real(), qutrit(0, 1));
  c.c = triple_from_block(qutrit(0, 0).real(), qutrit(0, 2));
  c.d = triple_from_block(qutrit(1, 1).real(), qutrit(1, 2));
  return c;
}

QutritBuild qutrit_from_probabilities(const ProbabilityTriple& a, const ProbabilityTriple& b,
                                      const ProbabilityTriple& d) {
  for (const auto* t : {&a, &b, &d}) {
    if (!in_unit_box(*t)) raise(ErrorCode::out_of_range, "probabilities must lie in [0, 1]");
  }
  const double rho11 = a.p3 + b.p3 - 1.0;
  if (rho11 < -1e-12) {
    raise(ErrorCode::bad_diagonal, "p3A + p3B < 1 gives a negative population");
  }

  QutritBuild out;
  out.matrix = ComplexMatrix(3);
  out.matrix(0, 0) = rho11;
  out.matrix(1, 1) = 1.0 - b.p3;
  out.matrix(2, 2) = 1.0 - a.p3;
  out.matrix(0, 1) = off_from_triple(b);
  out.matrix(0, 2) = off_from_triple(a);
  out.matrix(1, 2) = off_from_triple(d);
  out.matrix(1, 0) = std::conj(out.matrix(0, 1));
  out.matrix(2, 0) = std::conj(out.matrix(0, 2));
  out.matrix(2, 1) = std::conj(out.matrix(1, 2));

  out.min_eigenvalue = min_eigenvalue(out.matrix);
  out.psd = out.min_eigenvalue >= -1e-10;
  return out;
}

double qutrit_linear_entropy(const ComponentQubits& c) {
  check_linkage(c);
  auto bernoulli_sum = [](const ProbabilityTriple& p) {
    return p.p1 * (1.0 - p.p1) + p.p2 * (1.0 - p.p2) + p.p3 * (1.0 - p.p3);
  };
  const double s = bernoulli_sum(c.a) + bernoulli_sum(c.b) + bernoulli_sum(c.d);
  return 2.0 * (s + c.a.p3 * (1.0 - c.b.p3) + c.b.p3 * c.b.p3) - 5.0;
}

double qutrit_linear_entropy_decomposed(const ComponentQubits& c) {
  check_linkage(c);
  return qubit_entropy(c.a) + qubit_entropy(c.b) + qubit_entropy(c.d) -
         2.0 * (1.0 - c.b.p3) * (1.0 + c.b.p3 - c.a.p3);
}

double qutrit_area_sum(const ComponentQubits& c) {
  ProbabilityTriple d_linked = c.d;
  d_linked.p3 = 1.0 - c.b.p3;
  return area_sum(c.b) + area_sum(c.c) + area_sum(d_linked);
}

ComplexMatrix pure_qutrit(const PureQutritParams& q) {
  if (q.p_beta < 0.0 || q.p_gamma < 0.0) {
    raise(ErrorCode::out_of_range, "amplitudes must be nonnegative");
  }
  const double rest = 1.0 - q.p_beta * q.p_beta - q.p_gamma * q.p_gamma;
  if (rest < -1e-12) raise(ErrorCode::out_of_simplex, "pb^2 + pg^2 exceeds 1");

  const Complex psi[3] = {
      Complex(std::sqrt(std::max(rest, 0.0)), 0.0),
      Complex(q.p_beta * std::cos(q.beta), q.p_beta * std::sin(q.beta)),
      Complex(q.p_gamma * std::cos(q.gamma), q.p_gamma * std::sin(q.gamma)),
  };
  ComplexMatrix rho(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
  rho.hermitize();
  return rho;
}

}  // namespace malevich
