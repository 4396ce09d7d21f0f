#include <doctest.h>

#include <cmath>

#include "malevich/random.hpp"
#include "malevich/two_qubit.hpp"

using namespace malevich;

namespace {

ProbabilityTriple random_quantum_triple(Rng& rng) {
  for (;;) {
    const ProbabilityTriple p{rng.uniform(), rng.uniform(), rng.uniform()};
    if (is_quantum(p)) return p;
  }
}

}  // namespace

TEST_CASE("block constructors") {
  const ProbabilityTriple p{0.75, 0.5, 0.5};
  const TwoQubitDensity center = center_block_state(p);
  CHECK(center.physical);
  CHECK(center.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(center.matrix(1, 1).real() == doctest::Approx(0.5));
  CHECK(center.matrix(1, 2).real() == doctest::Approx(0.25));
  CHECK(center.matrix(0, 0) == Complex(0.0, 0.0));
  CHECK(center.matrix(3, 3) == Complex(0.0, 0.0));

  const TwoQubitDensity corner = corner_block_state(p);
  CHECK(corner.physical);
  CHECK(corner.matrix(0, 0).real() == doctest::Approx(0.5));
  CHECK(corner.matrix(0, 3).real() == doctest::Approx(0.25));
  CHECK(corner.matrix(1, 1) == Complex(0.0, 0.0));

  CHECK_THROWS_AS(center_block_state({1.0, 1.0, 1.0}), Error);
  const TwoQubitDensity coin = center_block_state({1.0, 1.0, 1.0}, true);
  CHECK_FALSE(coin.physical);
}

TEST_CASE("center-block landmarks") {
  // p = (0.75, 0.5, 0.5): negativity 1/4, concurrence 1/2.
  const TwoQubitDensity state = center_block_state({0.75, 0.5, 0.5});
  const EntanglementReport report = analyze_entanglement(state.matrix);
  CHECK(report.negativity == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(report.log_negativity == doctest::Approx(std::log(1.5)).epsilon(1e-12));
  CHECK(report.concurrence == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_FALSE(report.separable_by_ppt);

  // p1 = p2 = 1/2 leaves a diagonal block: separable.
  const TwoQubitDensity diag = center_block_state({0.5, 0.5, 0.3});
  const EntanglementReport sep = analyze_entanglement(diag.matrix);
  CHECK(sep.negativity == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sep.separable_by_ppt);

  // Maximally entangled member: p = (1, 1/2, 1/2).
  const TwoQubitDensity bell = center_block_state({1.0, 0.5, 0.5});
  const EntanglementReport max = analyze_entanglement(bell.matrix);
  CHECK(max.negativity == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max.concurrence == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(max.pt_eigenvalues[3] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("closed form matches Wootters on the block families") {
  Rng rng(41);
  for (Family f : {Family::center_block, Family::corner_block}) {
    for (int trial = 0; trial < 400; ++trial) {
      const ProbabilityTriple p = random_quantum_triple(rng);
      const TwoQubitDensity state =
          f == Family::center_block ? center_block_state(p) : corner_block_state(p);
      const double closed = concurrence_closed_form(f, p);
      const double wootters = concurrence_wootters(state.matrix);
      CHECK(std::abs(closed - wootters) < 1e-9);
      CHECK(std::abs(closed - 2.0 * negativity(state.matrix)) < 1e-9);
    }
  }
}

TEST_CASE("closed form matches Wootters on the embedding families") {
  Rng rng(42);
  for (int placement = 1; placement <= 4; ++placement) {
    for (int trial = 0; trial < 250; ++trial) {
      const ComplexMatrix qutrit = random_density(rng, 3);
      const TwoQubitDensity state = qutrit_embed_state(qutrit, placement);
      CHECK(state.physical);
      const ComponentQubits c = component_qubits(qutrit);
      const double closed = concurrence_closed_form(state.family, c);
      const double wootters = concurrence_wootters(state.matrix);
      CHECK(std::abs(closed - wootters) < 1e-9);
    }
  }
}

TEST_CASE("embedding placements put the qutrit on the documented rows") {
  ComplexMatrix qutrit(3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) qutrit(r, c) = Complex(10.0 * r + c, 0.0);
  }
  // placement 1 skips basis state 4: rows {0,1,2}.
  TwoQubitDensity e1 = qutrit_embed_state(qutrit, 1, true);
  CHECK(e1.matrix(2, 2).real() == doctest::Approx(22.0));
  CHECK(e1.matrix(3, 3) == Complex(0.0, 0.0));
  // placement 2 skips basis state 1: rows {1,2,3}.
  TwoQubitDensity e2 = qutrit_embed_state(qutrit, 2, true);
  CHECK(e2.matrix(0, 0) == Complex(0.0, 0.0));
  CHECK(e2.matrix(1, 1).real() == doctest::Approx(0.0));
  CHECK(e2.matrix(3, 3).real() == doctest::Approx(22.0));
  // placement 3 skips basis state 2: rows {0,2,3}.
  TwoQubitDensity e3 = qutrit_embed_state(qutrit, 3, true);
  CHECK(e3.matrix(1, 1) == Complex(0.0, 0.0));
  CHECK(e3.matrix(0, 2).real() == doctest::Approx(1.0));
  // placement 4 skips basis state 3: rows {0,1,3}.
  TwoQubitDensity e4 = qutrit_embed_state(qutrit, 4, true);
  CHECK(e4.matrix(2, 2) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(qutrit_embed_state(qutrit, 5), Error);
}

TEST_CASE("separable qutrit configurations stay PPT") {
  Rng rng(43);
  int accepted = 0;
  while (accepted < 60) {
    ComplexMatrix rho = random_density(rng, 3);
    rho(1, 2) = 0.0;  // D = 0
    rho(2, 1) = 0.0;
    if (min_eigenvalue(rho) < 0.0) continue;
    ++accepted;
    const TwoQubitDensity state = qutrit_embed_state(rho, 1);
    const EntanglementReport report = analyze_entanglement(state.matrix);
    CHECK(report.separable_by_ppt);
    CHECK(report.concurrence < 1e-9);
    const ComponentQubits c = component_qubits(rho);
    CHECK(concurrence_closed_form(Family::qutrit_embed_1, c) < 1e-12);
  }
}

TEST_CASE("pt spectrum is descending and trace-preserving") {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = random_density(rng, 4);
    const auto pt = pt_spectrum(rho);
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      sum += pt[k];
      if (k > 0) CHECK(pt[k - 1] >= pt[k]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-11));
  }
}

TEST_CASE("witness thresholds are the exact separable bounds") {
  CHECK(separable_area_bound(Family::center_block) == 2.5);
  CHECK(separable_area_bound(Family::corner_block) == 2.5);
  CHECK(separable_area_bound(Family::qutrit_embed_1) == 8.0);
  CHECK(separable_area_bound(Family::qutrit_embed_2) == 8.0);
  CHECK(separable_area_bound(Family::qutrit_embed_3) ==
        (57.0 + std::sqrt(17.0)) / 8.0);
  CHECK(separable_area_bound(Family::qutrit_embed_4) == 8.0);
  CHECK_THROWS_AS(separable_area_bound(Family::general), Error);

  CHECK(area_witness(Family::center_block, 2.9) == WitnessVerdict::certified_entangled);
  CHECK(area_witness(Family::center_block, 2.4) == WitnessVerdict::inconclusive);
  CHECK(area_witness(Family::center_block, 2.5) == WitnessVerdict::inconclusive);
  CHECK(to_string(WitnessVerdict::certified_entangled) == "certified_entangled");
}

TEST_CASE("wootters rejects non-density input") {
  ComplexMatrix m(4);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  CHECK_THROWS_AS(concurrence_wootters(m), Error);
}

TEST_CASE("family names") {
  CHECK(to_string(Family::center_block) == "center_block");
  CHECK(to_string(Family::qutrit_embed_3) == "qutrit_embed_3");
}
