#pragma once

#include <array>
#include <string>

#include "malevich/qutrit.hpp"

namespace malevich {

/// Structured 4x4 families reachable from single-qudit probability data.
///   center_block   - qubit block on rows/cols {2,3} (1-based), rest zero
///   corner_block   - qubit block on rows/cols {1,4}
///   qutrit_embed_k - 3x3 qutrit on the rows/cols obtained by deleting
///                    row/col k' where k' = 4, 1, 2, 3 for k = 1, 2, 3, 4
///   general        - arbitrary density matrix, no closed forms
enum class Family {
  center_block,
  corner_block,
  qutrit_embed_1,
  qutrit_embed_2,
  qutrit_embed_3,
  qutrit_embed_4,
  general,
};

std::string to_string(Family f);

struct TwoQubitDensity {
  ComplexMatrix matrix{4};
  Family family = Family::general;
  bool physical = false;
};

/// Center/corner constructors place the 2x2 entry-map matrix of `p` on the
/// inner or outer diagonal block.  Out-of-box input throws out_of_range; a
/// quantumness violation throws not_psd unless allow_unphysical is set, in
/// which case the matrix is returned with physical = false.
TwoQubitDensity center_block_state(const ProbabilityTriple& p, bool allow_unphysical = false);
TwoQubitDensity corner_block_state(const ProbabilityTriple& p, bool allow_unphysical = false);

/// Embeds a 3x3 matrix into the 4x4 space with one vanishing row/column
/// (placement as documented on Family).  Throws not_density for invalid
/// input unless allow_unphysical is set.
TwoQubitDensity qutrit_embed_state(const ComplexMatrix& qutrit, int placement,
                                   bool allow_unphysical = false);

/// Eigenvalues of the partial transpose (second subsystem), descending.
std::array<double, 4> pt_spectrum(const ComplexMatrix& rho);

/// Sum of |negative eigenvalues| of the partial transpose.
double negativity(const ComplexMatrix& rho);

/// ln(2 N + 1).
double log_negativity(const ComplexMatrix& rho);

/// Wootters concurrence: eta_k are the square roots of the eigenvalues of
/// sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho) in decreasing order and
/// C = max(0, eta1 - eta2 - eta3 - eta4).
double concurrence_wootters(const ComplexMatrix& rho);

/// Closed forms: center/corner C = 2 sqrt((p1-1/2)^2 + (p2-1/2)^2);
/// embed 1 C = 2|D|, embed 2 C = 2|B|, embeds 3 and 4 C = 2|A| where
/// X = (p1X-1/2) - i(p2X-1/2) are the component off-diagonals.
/// Throws unsupported_family for general.
double concurrence_closed_form(Family f, const ProbabilityTriple& p);
double concurrence_closed_form(Family f, const ComponentQubits& c);

/// Largest square-area sum reachable by separable members of the family:
/// 5/2 for center/corner, 8 for embeds 1, 2, 4, (57 + sqrt(17))/8 for
/// embed 3.  Throws unsupported_family for general.
double separable_area_bound(Family f);

enum class WitnessVerdict { certified_entangled, inconclusive };
std::string to_string(WitnessVerdict v);

/// Area-based sufficient test: exceeding the separable bound by more than
/// 1e-9 certifies entanglement; anything else is inconclusive.
WitnessVerdict area_witness(Family f, double area_sum_value);

struct EntanglementReport {
  double negativity = 0.0;
  double log_negativity = 0.0;
  double concurrence = 0.0;  // Wootters
  std::array<double, 4> pt_eigenvalues{};
  bool separable_by_ppt = false;
};

EntanglementReport analyze_entanglement(const ComplexMatrix& rho);

}  // namespace malevich
