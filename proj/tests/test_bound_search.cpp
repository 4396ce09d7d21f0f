#include <doctest.h>

#include <cmath>

#include "malevich/bound_search.hpp"
#include "malevich/qutrit.hpp"

using namespace malevich;

TEST_CASE("problem names round trip") {
  for (ProblemName p : all_problems()) {
    const auto back = problem_from_string(to_string(p));
    REQUIRE(back.has_value());
    CHECK(*back == p);
  }
  CHECK(to_string(ProblemName::qutrit_area_abd_pure) == "qutrit_area_ABD_pure");
  CHECK(problem_from_string("QUTRIT_AREA_abd_PURE") == ProblemName::qutrit_area_abd_pure);
  CHECK(!problem_from_string("nonsense").has_value());
}

TEST_CASE("expected bands carry the documented values") {
  CHECK(expected_band(ProblemName::qubit_area).value == 3.0);
  CHECK(expected_band(ProblemName::qutrit_area_free).value == doctest::Approx(8.1565));
  CHECK(expected_band(ProblemName::qutrit_area_abd_pure).value == doctest::Approx(8.095));
  CHECK(expected_band(ProblemName::separable_embed_12).value == 8.0);
  CHECK(expected_band(ProblemName::separable_embed_3).value ==
        doctest::Approx((57.0 + std::sqrt(17.0)) / 8.0));
  CHECK(expected_minimum_band(ProblemName::qubit_area)->value == 1.5);
  CHECK(expected_minimum_band(ProblemName::qutrit_area_free)->value == 4.5);
  CHECK(!expected_minimum_band(ProblemName::qutrit_area_abd_pure).has_value());
}

TEST_CASE("maximize solves a smooth box problem") {
  FeasibleRegion region;
  region.lower = {0.0, 0.0};
  region.upper = {1.0, 1.0};
  auto objective = [](const std::vector<double>& x) {
    const double a = x[0] - 0.3, b = x[1] - 0.7;
    return -(a * a) - (b * b);
  };
  const NelderMeadResult result = maximize(objective, region, {0.5, 0.5});
  CHECK(result.value == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(result.point[0] == doctest::Approx(0.3).epsilon(1e-5));
  CHECK(result.point[1] == doctest::Approx(0.7).epsilon(1e-5));
  CHECK(result.value >= objective({0.5, 0.5}));
  CHECK(result.iterations > 0);
}

TEST_CASE("maximize honours nonlinear constraints") {
  FeasibleRegion region;
  region.lower = {0.0, 0.0};
  region.upper = {1.0, 1.0};
  region.violations = [](const std::vector<double>& x) {
    const double r2 = (x[0] - 0.5) * (x[0] - 0.5) + (x[1] - 0.5) * (x[1] - 0.5);
    return std::vector<double>{std::max(0.0, r2 - 0.25)};
  };
  region.project = [](std::vector<double>& x) {
    const double dx = x[0] - 0.5, dy = x[1] - 0.5;
    const double r = std::sqrt(dx * dx + dy * dy);
    if (r > 0.5) {
      x[0] = 0.5 + 0.5 * dx / r;
      x[1] = 0.5 + 0.5 * dy / r;
    }
  };
  auto objective = [](const std::vector<double>& x) { return x[0] + x[1]; };
  const NelderMeadResult result = maximize(objective, region, {0.5, 0.5});
  CHECK(result.value == doctest::Approx(1.0 + std::sqrt(0.5)).epsilon(1e-7));
  const double r2 = (result.point[0] - 0.5) * (result.point[0] - 0.5) +
                    (result.point[1] - 0.5) * (result.point[1] - 0.5);
  CHECK(r2 <= 0.25 + 1e-8);
}

TEST_CASE("maximize rejects infeasible starts") {
  FeasibleRegion region;
  region.lower = {0.0};
  region.upper = {1.0};
  region.violations = [](const std::vector<double>& x) {
    return std::vector<double>{std::max(0.0, 0.5 - x[0])};
  };
  CHECK_THROWS_AS(maximize([](const std::vector<double>& x) { return x[0]; }, region, {0.0}),
                  Error);
  try {
    maximize([](const std::vector<double>& x) { return x[0]; }, region, {0.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::infeasible_start);
  }
}

TEST_CASE("qubit area bound") {
  const BoundReport report = reproduce_bound(ProblemName::qubit_area);
  CHECK(report.within_band);
  CHECK(std::abs(report.extremum_value - 3.0) <= 1e-6);
  REQUIRE(report.argmax.size() == 3);
  const double high = (3.0 + std::sqrt(3.0)) / 6.0;
  const double low = (3.0 - std::sqrt(3.0)) / 6.0;
  const bool at_high = std::abs(report.argmax[0] - high) <= 1e-5 &&
                       std::abs(report.argmax[1] - high) <= 1e-5 &&
                       std::abs(report.argmax[2] - high) <= 1e-5;
  const bool at_low = std::abs(report.argmax[0] - low) <= 1e-5 &&
                      std::abs(report.argmax[1] - low) <= 1e-5 &&
                      std::abs(report.argmax[2] - low) <= 1e-5;
  CHECK((at_high || at_low));
  REQUIRE(report.paired_minimum.has_value());
  CHECK(std::abs(*report.paired_minimum - 1.5) <= 1e-9);
  for (double coordinate : report.paired_argmin) {
    CHECK(coordinate == doctest::Approx(0.5).epsilon(1e-6));
  }
  CHECK(report.best_constraint_violation <= 1e-8);
  CHECK(report.starts_used >= 64);
}

TEST_CASE("bound reproduction is deterministic") {
  const BoundReport a = reproduce_bound(ProblemName::qubit_area, 42);
  const BoundReport b = reproduce_bound(ProblemName::qubit_area, 42);
  CHECK(a.extremum_value == b.extremum_value);
  REQUIRE(a.argmax.size() == b.argmax.size());
  for (std::size_t k = 0; k < a.argmax.size(); ++k) CHECK(a.argmax[k] == b.argmax[k]);
  CHECK(a.iterations == b.iterations);

  const BoundReport other_seed = reproduce_bound(ProblemName::qubit_area, 7);
  CHECK(other_seed.within_band);
}

TEST_CASE("pure qubit representation bound") {
  const BoundReport report = reproduce_bound(ProblemName::qutrit_area_pure_qubit_rep);
  CHECK(report.within_band);
  CHECK(std::abs(report.extremum_value - 8.0) <= 1e-6);
  REQUIRE(report.paired_minimum.has_value());
  CHECK(std::abs(*report.paired_minimum - 7.25) <= 1e-6);
  // The report expands to the full C triple on the pure-component sphere.
  REQUIRE(report.argmax.size() == 3);
  const double u1 = report.argmax[0] - 0.5;
  const double u2 = report.argmax[1] - 0.5;
  const double u3 = report.argmax[2] - 0.5;
  CHECK(u1 * u1 + u2 * u2 + u3 * u3 == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("separable embedding bounds") {
  const BoundReport both = reproduce_bound(ProblemName::separable_embed_12);
  CHECK(both.within_band);
  CHECK(std::abs(both.extremum_value - 8.0) <= 1e-6);

  const BoundReport third = reproduce_bound(ProblemName::separable_embed_3);
  CHECK(third.within_band);
  CHECK(std::abs(third.extremum_value - (57.0 + std::sqrt(17.0)) / 8.0) <= 1e-5);
}

TEST_CASE("published separable argmax states evaluate to the bounds") {
  // First two embeddings: B and D pinned to the poles, C at the global
  // qubit maximum.
  const double h = (3.0 + std::sqrt(3.0)) / 6.0;
  ComponentQubits twelve;
  twelve.a = {h, h, h};
  twelve.b = {0.5, 0.5, 1.0};
  twelve.c = {h, h, h};
  twelve.d = {0.5, 0.5, 0.0};
  CHECK(qutrit_area_sum(twelve) == doctest::Approx(8.0).epsilon(1e-12));

  // Third embedding: A pinned to zero concurrence, split between B and D.
  const double u = std::sqrt((17.0 + 3.0 * std::sqrt(17.0)) / 136.0);
  const double kappa = std::sqrt((17.0 - 3.0 * std::sqrt(17.0)) / 272.0);
  ComponentQubits three;
  three.a = {0.5, 0.5, 0.5 - u};
  three.b = {0.5, 0.5, 0.5 + u};
  three.c = {0.5, 0.5, 0.0};
  three.d = {0.5 - kappa, 0.5 - kappa, 0.5 - u};
  CHECK(std::abs(qutrit_area_sum(three) - (57.0 + std::sqrt(17.0)) / 8.0) < 1e-9);
}
