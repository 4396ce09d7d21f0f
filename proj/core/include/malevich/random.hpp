#pragma once

#include <cstdint>

#include "malevich/complex_matrix.hpp"

namespace malevich {

/// xoshiro256++ with splitmix64 seeding.  Self-contained so that seeded
/// streams are identical on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller (pair cached).
  double gaussian();
  /// Complex standard normal: (g1 + i g2) / sqrt(2).
  Complex complex_gaussian();

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Hermitian matrix with gaussian entries.
ComplexMatrix random_hermitian(Rng& rng, int dim);

/// PSD unit-trace matrix from the Ginibre construction G G^dagger / Tr.
ComplexMatrix random_density(Rng& rng, int dim);

}  // namespace malevich
