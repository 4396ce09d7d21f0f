#include "malevich/two_qubit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "malevich/error.hpp"

namespace malevich {

namespace {

constexpr double kPsdFloor = -1e-10;
constexpr double kWitnessMargin = 1e-9;

void require_unit_box(const ProbabilityTriple& p) {
  for (double v : {p.p1, p.p2, p.p3}) {
    if (!(v >= 0.0 && v <= 1.0)) raise(ErrorCode::out_of_range, "probability outside [0, 1]");
  }
}

ComplexMatrix entry_map(const ProbabilityTriple& p) {
  ComplexMatrix m(2);
  const Complex off{p.p1 - 0.5, -(p.p2 - 0.5)};
  m(0, 0) = 1.0 - p.p3;
  m(0, 1) = off;
  m(1, 0) = std::conj(off);
  m(1, 1) = p.p3;
  return m;
}

TwoQubitDensity block_state(const ProbabilityTriple& p, Family family, bool allow_unphysical) {
  require_unit_box(p);
  const ComplexMatrix block = entry_map(p);
  TwoQubitDensity out;
  out.family = family;
  const int r0 = family == Family::center_block ? 1 : 0;
  const int r1 = family == Family::center_block ? 2 : 3;
  out.matrix(r0, r0) = block(0, 0);
  out.matrix(r0, r1) = block(0, 1);
  out.matrix(r1, r0) = block(1, 0);
  out.matrix(r1, r1) = block(1, 1);
  out.physical = is_quantum(p);
  if (!out.physical && !allow_unphysical) {
    raise(ErrorCode::not_psd, "probability triple outside the quantumness ball");
  }
  return out;
}

// Row/column of the 4x4 space left empty by embedding k (0-based).
int skipped_index(int placement) {
  switch (placement) {
    case 1: return 3;
    case 2: return 0;
    case 3: return 1;
    case 4: return 2;
    default: raise(ErrorCode::out_of_range, "embedding placement must be 1..4");
  }
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::center_block: return "center_block";
    case Family::corner_block: return "corner_block";
    case Family::qutrit_embed_1: return "qutrit_embed_1";
    case Family::qutrit_embed_2: return "qutrit_embed_2";
    case Family::qutrit_embed_3: return "qutrit_embed_3";
    case Family::qutrit_embed_4: return "qutrit_embed_4";
    case Family::general: return "general";
  }
  return "general";
}

std::string to_string(WitnessVerdict v) {
  return v == WitnessVerdict::certified_entangled ? "certified_entangled" : "inconclusive";
}

TwoQubitDensity center_block_state(const ProbabilityTriple& p, bool allow_unphysical) {
  return block_state(p, Family::center_block, allow_unphysical);
}

TwoQubitDensity corner_block_state(const ProbabilityTriple& p, bool allow_unphysical) {
  return block_state(p, Family::corner_block, allow_unphysical);
}

TwoQubitDensity qutrit_embed_state(const ComplexMatrix& qutrit, int placement,
                                   bool allow_unphysical) {
  if (qutrit.dim() != 3) raise(ErrorCode::wrong_dim, "embedding expects a 3x3 matrix");
  const int skip = skipped_index(placement);
  TwoQubitDensity out;
  switch (placement) {
    case 1: out.family = Family::qutrit_embed_1; break;
    case 2: out.family = Family::qutrit_embed_2; break;
    case 3: out.family = Family::qutrit_embed_3; break;
    default: out.family = Family::qutrit_embed_4; break;
  }
  std::array<int, 3> rows{};
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != skip) rows[k++] = i;
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out.matrix(rows[r], rows[c]) = qutrit(r, c);
  }
  const DensityCheck check = check_density(out.matrix);
  out.physical = check.ok;
  if (!out.physical && !allow_unphysical) {
    raise(ErrorCode::not_density, "embedded matrix is not a density matrix");
  }
  return out;
}

std::array<double, 4> pt_spectrum(const ComplexMatrix& rho) {
  if (rho.dim() != 4) raise(ErrorCode::wrong_dim, "partial transpose needs a 4x4 matrix");
  const EigenResult eig = hermitian_eigen(partial_transpose(rho, Subsystem::second));
  std::array<double, 4> out{};
  std::copy(eig.eigenvalues.begin(), eig.eigenvalues.end(), out.begin());
  return out;
}

double negativity(const ComplexMatrix& rho) {
  double sum = 0.0;
  for (double lambda : pt_spectrum(rho)) {
    if (lambda < 0.0) sum -= lambda;
  }
  return sum;
}

double log_negativity(const ComplexMatrix& rho) { return std::log(2.0 * negativity(rho) + 1.0); }

namespace {

/// Singular values by one-sided Jacobi: right rotations orthogonalize every
/// column pair, then the singular values are the column norms.  Small
/// singular values come out with absolute error near machine precision,
/// which the sqrt-of-eigenvalue route cannot deliver.
std::array<double, 4> singular_values_descending(ComplexMatrix m) {
  const int n = m.dim();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        Complex cross = 0.0;
        double npp = 0.0, nqq = 0.0;
        for (int r = 0; r < n; ++r) {
          cross += std::conj(m(r, p)) * m(r, q);
          npp += std::norm(m(r, p));
          nqq += std::norm(m(r, q));
        }
        const double abs_cross = std::abs(cross);
        if (abs_cross <= 1e-15 * std::sqrt(npp * nqq) + 1e-300) continue;
        rotated = true;
        const Complex phase = cross / abs_cross;
        const double tau = (nqq - npp) / (2.0 * abs_cross);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (int r = 0; r < n; ++r) {
          const Complex xp = m(r, p);
          const Complex xq = m(r, q);
          m(r, p) = cs * xp - sn * (std::conj(phase) * xq);
          m(r, q) = sn * (phase * xp) + cs * xq;
        }
      }
    }
    if (!rotated) break;
  }
  std::array<double, 4> sigma{};
  for (int c = 0; c < n; ++c) {
    double norm2 = 0.0;
    for (int r = 0; r < n; ++r) norm2 += std::norm(m(r, c));
    sigma[static_cast<std::size_t>(c)] = std::sqrt(norm2);
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

}  // namespace

double concurrence_wootters(const ComplexMatrix& rho) {
  if (rho.dim() != 4) raise(ErrorCode::wrong_dim, "concurrence needs a 4x4 matrix");
  // (sy x sy) rho* (sy x sy) written entrywise: index swap 0<->3, 1<->2
  // with signs (-1, 1, 1, -1).
  static constexpr std::array<int, 4> swap{3, 2, 1, 0};
  static constexpr std::array<double, 4> sign{-1.0, 1.0, 1.0, -1.0};
  ComplexMatrix flipped(4);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      flipped(j, k) = sign[j] * sign[k] * std::conj(rho(swap[j], swap[k]));
    }
  }
  // The eta_k are the singular values of sqrt(flipped) sqrt(rho): the Gram
  // matrix of that product is sqrt(rho) flipped sqrt(rho).
  const ComplexMatrix root = matrix_sqrt_psd(rho);
  const ComplexMatrix root_flipped = matrix_sqrt_psd(flipped);
  const std::array<double, 4> eta = singular_values_descending(root_flipped * root);
  return std::max(0.0, eta[0] - eta[1] - eta[2] - eta[3]);
}

double concurrence_closed_form(Family f, const ProbabilityTriple& p) {
  if (f != Family::center_block && f != Family::corner_block) {
    raise(ErrorCode::unsupported_family, "triple closed form covers center/corner blocks only");
  }
  const double u1 = p.p1 - 0.5;
  const double u2 = p.p2 - 0.5;
  return 2.0 * std::sqrt(u1 * u1 + u2 * u2);
}

double concurrence_closed_form(Family f, const ComponentQubits& c) {
  const ProbabilityTriple* source = nullptr;
  switch (f) {
    case Family::qutrit_embed_1: source = &c.d; break;
    case Family::qutrit_embed_2: source = &c.b; break;
    case Family::qutrit_embed_3:
    case Family::qutrit_embed_4: source = &c.a; break;
    default:
      raise(ErrorCode::unsupported_family, "component closed form covers qutrit embeddings only");
  }
  const double u1 = source->p1 - 0.5;
  const double u2 = source->p2 - 0.5;
  return 2.0 * std::sqrt(u1 * u1 + u2 * u2);
}

double separable_area_bound(Family f) {
  switch (f) {
    case Family::center_block:
    case Family::corner_block: return 2.5;
    case Family::qutrit_embed_1:
    case Family::qutrit_embed_2:
    case Family::qutrit_embed_4: return 8.0;
    case Family::qutrit_embed_3: return (57.0 + std::sqrt(17.0)) / 8.0;
    case Family::general:
      raise(ErrorCode::unsupported_family, "no separable area bound for general states");
  }
  raise(ErrorCode::unsupported_family, "no separable area bound for general states");
}

WitnessVerdict area_witness(Family f, double area_sum_value) {
  return area_sum_value > separable_area_bound(f) + kWitnessMargin
             ? WitnessVerdict::certified_entangled
             : WitnessVerdict::inconclusive;
}

EntanglementReport analyze_entanglement(const ComplexMatrix& rho) {
  EntanglementReport report;
  report.pt_eigenvalues = pt_spectrum(rho);
  for (double lambda : report.pt_eigenvalues) {
    if (lambda < 0.0) report.negativity -= lambda;
  }
  report.log_negativity = std::log(2.0 * report.negativity + 1.0);
  report.concurrence = concurrence_wootters(rho);
  report.separable_by_ppt = report.pt_eigenvalues[3] >= kPsdFloor;
  return report;
}

}  // namespace malevich
