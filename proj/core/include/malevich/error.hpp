#pragma once

#include <stdexcept>
#include <string>

namespace malevich {

/// Machine-checkable failure categories for the whole library.
enum class ErrorCode {
  wrong_dim,            // matrix dimension outside {2,3,4} or mismatched operands
  not_hermitian,        // hermiticity residual above tolerance
  no_convergence,       // iterative solver exceeded its sweep/iteration cap
  not_psd,              // eigenvalue below -1e-10
  not_density,          // not hermitian / unit-trace / PSD
  out_of_range,         // scalar argument outside its documented interval
  bad_diagonal,         // qutrit diagonal would be negative (p3A + p3B < 1)
  inconsistent_triples, // D/B linkage p3D = 1 - p3B violated
  out_of_simplex,       // pure-state chart amplitudes exceed unit norm
  not_unit_norm,        // mean-spin vector not on the unit sphere
  unsupported_family,   // closed form / witness not defined for the family
  infeasible_start,     // optimizer start violates the feasible region
  no_progress,          // simplex collapsed without reaching tolerance
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type; tests dispatch on code(), humans read what().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace malevich
