#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace malevich {

/// Extremal-area problems, each a box-constrained maximization with the
/// listed extra constraints:
///   qubit_area                 S(p) over the quantumness ball
///   qutrit_area_free           B,C,D area sum over all qutrit states (PSD)
///   qutrit_area_pure_qubit_rep pure qutrit with every component qubit pure,
///                              free (p1C, p3C), two signs of p2C
///   qutrit_area_ABD_pure       A,B,D area sum, pure qutrit, equal purities
///                              for the A/B and C/D component pairs
///   separable_embed_12         B,C,D area sum, PSD, B and D off-diagonals
///                              fixed to 1/2 (vanishing concurrence of the
///                              first two embeddings)
///   separable_embed_3          as above with the A off-diagonal fixed
///   appendix_pure              B,C,D area sum in the pure-state chart
///                              (p_beta, p_gamma, beta, gamma)
enum class ProblemName {
  qubit_area,
  qutrit_area_free,
  qutrit_area_pure_qubit_rep,
  qutrit_area_abd_pure,
  separable_embed_12,
  separable_embed_3,
  appendix_pure,
};

std::string to_string(ProblemName p);
std::optional<ProblemName> problem_from_string(std::string_view name);
const std::vector<ProblemName>& all_problems();

struct ExpectedBand {
  double value = 0.0;
  double tolerance = 0.0;
};

/// Documented extremum for the maximization, and (where a published lower
/// value exists) for the paired minimization.
ExpectedBand expected_band(ProblemName p);
std::optional<ExpectedBand> expected_minimum_band(ProblemName p);

/// Box plus optional nonlinear constraints.  `violations` returns one
/// magnitude per constraint (0 = satisfied); `project` moves a point
/// exactly onto the feasible set when a closed-form projection exists.
/// `start_tolerance` gates InfeasibleStart; problems whose equality
/// constraints cannot be satisfied by generic starts disable the gate.
struct FeasibleRegion {
  std::vector<double> lower;
  std::vector<double> upper;
  std::function<std::vector<double>(const std::vector<double>&)> violations;
  std::function<void(std::vector<double>&)> project;
  double start_tolerance = 1e-8;
};

struct NelderMeadOptions {
  int max_iterations = 5000;
  double tolerance = 1e-10;
  /// Base quadratic-penalty weight; two further stages at x100 and x10000
  /// drive constraint residuals below the 1e-8 feasibility requirement.
  double penalty_weight = 1e6;
  /// Initial simplex edge as a fraction of the box width.
  double initial_step = 0.05;
};

struct NelderMeadResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free maximization over `region`.  Iterates are clamped to the
/// box; nonlinear constraints enter as quadratic penalties with the staged
/// weights, then `project` (when present) restores exact feasibility.  The
/// result never falls below the objective at a feasible start.  Throws
/// infeasible_start when the start violates `start_tolerance`, no_progress
/// when the simplex collapses before reaching the tolerance.
NelderMeadResult maximize(const std::function<double(const std::vector<double>&)>& objective,
                          const FeasibleRegion& region, const std::vector<double>& start,
                          const NelderMeadOptions& options = {});

struct BoundReport {
  ProblemName problem = ProblemName::qubit_area;
  double extremum_value = 0.0;
  /// Maximizer in natural problem coordinates (the pure-qubit-representation
  /// problem reports the full C triple).
  std::vector<double> argmax;
  std::optional<double> paired_minimum;
  std::vector<double> paired_argmin;
  int starts_used = 0;
  long long iterations = 0;
  double best_constraint_violation = 0.0;
  bool within_band = false;
};

/// Multi-start reproduction of one documented bound: 64 stratified
/// (Latin-hypercube) starts from `seed` plus published argmax warm starts,
/// winner by value with lexicographically-smallest tie-break.  Deterministic
/// for fixed (problem, seed).
BoundReport reproduce_bound(ProblemName problem, std::uint64_t seed = 42);

}  // namespace malevich
