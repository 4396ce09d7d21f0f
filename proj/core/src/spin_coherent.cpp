#include "malevich/spin_coherent.hpp"

#include <cmath>

#include "malevich/error.hpp"
#include "malevich/qubit.hpp"

namespace malevich {

namespace {

constexpr double kUnitNormTol = 1e-8;
constexpr double kBoundSlack = 1e-9;
constexpr double kTotalUpper = 8.095;
constexpr double kTotalUpperSlack = 5e-3;
constexpr double kSqrt2 = 1.4142135623730951;

double squared_radius(const ProbabilityTriple& p) {
  const double u1 = p.p1 - 0.5;
  const double u2 = p.p2 - 0.5;
  const double u3 = p.p3 - 0.5;
  return u1 * u1 + u2 * u2 + u3 * u3;
}

}  // namespace

double SpinMeanVector::norm() const { return std::sqrt(jx * jx + jy * jy + jz * jz); }

ComplexMatrix coherent_state(Complex zeta) {
  const double scale = 1.0 + std::norm(zeta);
  const std::array<Complex, 3> amp{zeta * zeta / scale, kSqrt2 * zeta / scale,
                                   Complex{1.0 / scale, 0.0}};
  ComplexMatrix rho(3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      rho(r, c) = amp[static_cast<std::size_t>(r)] * std::conj(amp[static_cast<std::size_t>(c)]);
    }
  }
  rho.hermitize();
  return rho;
}

SpinMeanVector spin_means(const ComplexMatrix& rho) {
  if (rho.dim() != 3) raise(ErrorCode::wrong_dim, "spin means need a 3x3 matrix");
  if (!rho.is_hermitian()) raise(ErrorCode::not_hermitian, "spin means need a Hermitian matrix");
  SpinMeanVector j;
  j.jx = kSqrt2 * (rho(0, 1).real() + rho(1, 2).real());
  j.jy = -kSqrt2 * (rho(0, 1).imag() + rho(1, 2).imag());
  j.jz = rho(0, 0).real() - rho(2, 2).real();
  return j;
}

SpinMeanVector coherent_means(Complex zeta) {
  const double scale = 1.0 + std::norm(zeta);
  return {2.0 * zeta.real() / scale, -2.0 * zeta.imag() / scale, (std::norm(zeta) - 1.0) / scale};
}

ComponentQubits probabilities_from_means(const SpinMeanVector& j) {
  if (std::abs(j.norm() - 1.0) > kUnitNormTol) {
    raise(ErrorCode::not_unit_norm, "mean spin vector must lie on the unit sphere");
  }
  const double up = 1.0 + j.jz;
  const double down = 1.0 - j.jz;
  ComponentQubits c;
  c.a.p1 = 0.5 + (j.jx * j.jx - j.jy * j.jy) / 4.0;
  c.a.p2 = 0.5 + j.jx * j.jy / 2.0;
  c.a.p3 = 1.0 - down * down / 4.0;
  c.b.p1 = 0.5 + kSqrt2 * j.jx * up / 4.0;
  c.b.p2 = 0.5 + kSqrt2 * j.jy * up / 4.0;
  c.b.p3 = (1.0 + j.jz * j.jz) / 2.0;
  c.d.p1 = 0.5 + kSqrt2 * j.jx * down / 4.0;
  c.d.p2 = 0.5 + kSqrt2 * j.jy * down / 4.0;
  c.d.p3 = (1.0 - j.jz * j.jz) / 2.0;
  c.c.p1 = c.a.p1;
  c.c.p2 = c.a.p2;
  c.c.p3 = up * up / 4.0;
  return c;
}

double qubit_constraint_residual(const ComponentQubits& c) {
  const double ab = std::abs(squared_radius(c.a) - squared_radius(c.b));
  const double cd = std::abs(squared_radius(c.c) - squared_radius(c.d));
  return std::max(ab, cd);
}

InequalityReport check_area_inequalities(const ComponentQubits& c) {
  InequalityReport report;
  report.s_a = area_sum(c.a);
  report.s_b = area_sum(c.b);
  report.s_d = area_sum(c.d);
  report.total = report.s_a + report.s_b + report.s_d;
  const double lo = 1.5 - kBoundSlack;
  const double hi = 3.0 + kBoundSlack;
  report.per_qubit_ok = report.s_a >= lo && report.s_a <= hi && report.s_b >= lo &&
                        report.s_b <= hi && report.s_d >= lo && report.s_d <= hi;
  report.total_ok =
      report.total >= 4.5 - kBoundSlack && report.total <= kTotalUpper + kTotalUpperSlack;
  return report;
}

std::vector<GridRow> grid_scan(int resolution, int jx_sign) {
  if (resolution < 2) raise(ErrorCode::out_of_range, "scan resolution must be at least 2");
  if (jx_sign != 1 && jx_sign != -1) raise(ErrorCode::out_of_range, "jx sign must be +1 or -1");
  std::vector<GridRow> rows;
  rows.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  const double step = 2.0 / (resolution - 1);
  for (int iy = 0; iy < resolution; ++iy) {
    const double jy = -1.0 + step * iy;
    for (int iz = 0; iz < resolution; ++iz) {
      const double jz = -1.0 + step * iz;
      const double disc = 1.0 - jy * jy - jz * jz;
      if (disc < -1e-12) continue;
      SpinMeanVector j{jx_sign * std::sqrt(std::max(disc, 0.0)), jy, jz};
      const InequalityReport r = check_area_inequalities(probabilities_from_means(j));
      rows.push_back({jy, jz, r.s_a, r.s_b, r.s_d, r.total});
    }
  }
  return rows;
}

}  // namespace malevich
