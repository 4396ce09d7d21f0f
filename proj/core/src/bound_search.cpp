#include "malevich/bound_search.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "malevich/error.hpp"
#include "malevich/qubit.hpp"
#include "malevich/qutrit.hpp"
#include "malevich/random.hpp"
#include "malevich/spin_coherent.hpp"

namespace malevich {

namespace {

constexpr double kFeasibleTol = 1e-8;
constexpr double kGateOff = 1e30;
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kLhsStarts = 64;

double sq_radius(const ProbabilityTriple& p) {
  const double u1 = p.p1 - 0.5;
  const double u2 = p.p2 - 0.5;
  const double u3 = p.p3 - 0.5;
  return u1 * u1 + u2 * u2 + u3 * u3;
}

Complex off_diagonal(const ProbabilityTriple& t) {
  return Complex(t.p1 - 0.5, -(t.p2 - 0.5));
}

/// Reconstruction that never throws: diagonals may leave [0, 1] while the
/// optimizer wanders; the PSD penalty pulls them back.
ComplexMatrix build_qutrit(const ComponentQubits& c) {
  ComplexMatrix m(3);
  m(0, 0) = c.a.p3 + c.b.p3 - 1.0;
  m(1, 1) = 1.0 - c.b.p3;
  m(2, 2) = 1.0 - c.a.p3;
  m(0, 1) = off_diagonal(c.b);
  m(0, 2) = off_diagonal(c.a);
  m(1, 2) = off_diagonal(c.d);
  m(1, 0) = std::conj(m(0, 1));
  m(2, 0) = std::conj(m(0, 2));
  m(2, 1) = std::conj(m(1, 2));
  return m;
}

ComponentQubits components_from_8(const std::vector<double>& x) {
  ComponentQubits c;
  c.a = {x[0], x[1], x[2]};
  c.b = {x[3], x[4], x[5]};
  c.d = {x[6], x[7], 1.0 - x[5]};
  c.c = {x[0], x[1], x[2] + x[5] - 1.0};
  return c;
}

double psd_violation(const ComponentQubits& c) {
  return std::max(0.0, -min_eigenvalue(build_qutrit(c)));
}

void clamp_to_box(std::vector<double>& x, const std::vector<double>& lo,
                  const std::vector<double>& hi) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

/// Scales the offsets of the listed coordinates from `center` onto the
/// sphere of `radius` when they fall outside it.
void radial_project(std::vector<double>& x, const std::vector<std::size_t>& coords, double center,
                    double radius) {
  double r2 = 0.0;
  for (std::size_t i : coords) r2 += (x[i] - center) * (x[i] - center);
  const double r = std::sqrt(r2);
  if (r <= radius) return;
  const double scale = radius / r;
  for (std::size_t i : coords) x[i] = center + (x[i] - center) * scale;
}

double radial_violation(const std::vector<double>& x, const std::vector<std::size_t>& coords,
                        double center, double radius) {
  double r2 = 0.0;
  for (std::size_t i : coords) r2 += (x[i] - center) * (x[i] - center);
  return std::max(0.0, std::sqrt(r2) - radius);
}

// ----------------------------------------------------------------------
// Nelder-Mead core: minimizes g over the box with clamped trial points.

struct SimplexOutcome {
  std::vector<double> x;
  int iterations = 0;
  bool collapsed = false;
};

SimplexOutcome simplex_minimize(const std::function<double(const std::vector<double>&)>& g,
                                const std::vector<double>& start, const std::vector<double>& lo,
                                const std::vector<double>& hi, int max_iterations, double tolerance,
                                double step_fraction) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) {
    double step = step_fraction * (hi[i] - lo[i]);
    if (step == 0.0) continue;
    if (pts[i + 1][i] + step > hi[i]) step = -step;
    pts[i + 1][i] += step;
  }
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = g(pts[i]);

  std::vector<std::size_t> order(n + 1);
  SimplexOutcome out;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n > 0 ? n - 1 : 0];

    if (values[worst] - values[best] <= tolerance * (1.0 + std::abs(values[best]))) break;

    double diameter = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t d = 0; d < n; ++d) {
        diameter = std::max(diameter, std::abs(pts[i][d] - pts[best][d]));
        scale = std::max(scale, std::abs(pts[best][d]));
      }
    }
    if (diameter <= 1e-15 * (1.0 + scale)) {
      out.collapsed = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
    }
    for (double& v : centroid) v /= static_cast<double>(n);

    auto blend = [&](double t) {  // centroid + t (centroid - worst), clamped
      std::vector<double> y(n);
      for (std::size_t d = 0; d < n; ++d) y[d] = centroid[d] + t * (centroid[d] - pts[worst][d]);
      clamp_to_box(y, lo, hi);
      return y;
    };

    std::vector<double> reflected = blend(1.0);
    const double fr = g(reflected);
    if (fr < values[best]) {
      std::vector<double> expanded = blend(2.0);
      const double fe = g(expanded);
      if (fe < fr) {
        pts[worst] = std::move(expanded);
        values[worst] = fe;
      } else {
        pts[worst] = std::move(reflected);
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      pts[worst] = std::move(reflected);
      values[worst] = fr;
      continue;
    }
    if (fr < values[worst]) {
      std::vector<double> contracted = blend(0.5);  // outside
      const double fc = g(contracted);
      if (fc <= fr) {
        pts[worst] = std::move(contracted);
        values[worst] = fc;
        continue;
      }
    } else {
      std::vector<double> contracted = blend(-0.5);  // inside
      const double fc = g(contracted);
      if (fc < values[worst]) {
        pts[worst] = std::move(contracted);
        values[worst] = fc;
        continue;
      }
    }
    for (std::size_t i = 0; i <= n; ++i) {  // shrink toward best
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d) pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
      values[i] = g(pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (values[i] < values[best]) best = i;
  }
  out.x = pts[best];
  out.iterations = iter;
  return out;
}

double max_violation(const FeasibleRegion& region, const std::vector<double>& x) {
  if (!region.violations) return 0.0;
  double worst = 0.0;
  for (double v : region.violations(x)) worst = std::max(worst, std::abs(v));
  return worst;
}

// ----------------------------------------------------------------------
// Problem registry.

struct ProblemDef {
  FeasibleRegion region;
  std::function<double(const std::vector<double>&)> objective;
  std::vector<std::vector<double>> warm_max;
  std::vector<std::vector<double>> warm_min;
  std::vector<double> interior;  // strictly feasible blend target, may be empty
  std::function<std::vector<double>(const std::vector<double>&)> report;
};

struct BandSpec {
  ExpectedBand maximum;
  std::optional<ExpectedBand> minimum;
};

BandSpec band_spec(ProblemName p) {
  switch (p) {
    case ProblemName::qubit_area: return {{3.0, 1e-6}, ExpectedBand{1.5, 1e-9}};
    case ProblemName::qutrit_area_free: return {{8.1565, 1e-3}, ExpectedBand{4.5, 1e-6}};
    case ProblemName::qutrit_area_pure_qubit_rep: return {{8.0, 1e-6}, ExpectedBand{7.25, 1e-6}};
    case ProblemName::qutrit_area_abd_pure: return {{8.095, 5e-3}, std::nullopt};
    case ProblemName::separable_embed_12: return {{8.0, 1e-6}, ExpectedBand{4.5, 1e-6}};
    case ProblemName::separable_embed_3:
      return {{(57.0 + std::sqrt(17.0)) / 8.0, 1e-5}, ExpectedBand{4.5, 1e-6}};
    case ProblemName::appendix_pure: return {{8.1565, 1e-3}, std::nullopt};
  }
  raise(ErrorCode::out_of_range, "unknown problem");
}

/// Component probabilities of the best spin-coherent state for the A,B,D
/// area sum, found by a deterministic scan of the mean-spin sphere; used
/// as the published-family warm start.
std::vector<double> coherent_abd_argmax() {
  double best = -1.0;
  ComponentQubits best_c;
  const int nz = 401;
  const int nphi = 512;
  for (int iz = 0; iz < nz; ++iz) {
    const double jz = -1.0 + 2.0 * iz / (nz - 1);
    const double r = std::sqrt(std::max(0.0, 1.0 - jz * jz));
    for (int ip = 0; ip < nphi; ++ip) {
      const double phi = kTwoPi * ip / nphi;
      const ComponentQubits c = probabilities_from_means({r * std::cos(phi), r * std::sin(phi), jz});
      const double value = area_sum(c.a) + area_sum(c.b) + area_sum(c.d);
      if (value > best) {
        best = value;
        best_c = c;
      }
    }
  }
  return {best_c.a.p1, best_c.a.p2, best_c.a.p3, best_c.b.p1,
          best_c.b.p2, best_c.b.p3, best_c.d.p1, best_c.d.p2};
}

ProblemDef make_problem(ProblemName name, int branch) {
  const double high = (3.0 + std::sqrt(3.0)) / 6.0;
  const double low = (3.0 - std::sqrt(3.0)) / 6.0;
  ProblemDef def;
  switch (name) {
    case ProblemName::qubit_area: {
      def.region.lower.assign(3, 0.0);
      def.region.upper.assign(3, 1.0);
      const std::vector<std::size_t> coords{0, 1, 2};
      def.region.violations = [coords](const std::vector<double>& x) {
        return std::vector<double>{radial_violation(x, coords, 0.5, 0.5)};
      };
      def.region.project = [coords](std::vector<double>& x) { radial_project(x, coords, 0.5, 0.5); };
      def.objective = [](const std::vector<double>& x) {
        return area_sum({x[0], x[1], x[2]});
      };
      def.warm_max = {{high, high, high}, {low, low, low}};
      def.warm_min = {{0.5, 0.5, 0.5}};
      return def;
    }
    case ProblemName::qutrit_area_free: {
      def.region.lower.assign(8, 0.0);
      def.region.upper.assign(8, 1.0);
      def.region.violations = [](const std::vector<double>& x) {
        return std::vector<double>{psd_violation(components_from_8(x))};
      };
      def.objective = [](const std::vector<double>& x) {
        return qutrit_area_sum(components_from_8(x));
      };
      def.interior = {0.5, 0.5, 2.0 / 3.0, 0.5, 0.5, 2.0 / 3.0, 0.5, 0.5};
      // Documented argmax, rounded to four digits (which leaves it a hair
      // outside the PSD set), plus the same state rebuilt exactly from the
      // pure-state chart so one warm start is feasible as given.
      const ComponentQubits chart =
          component_qubits(pure_qutrit({0.1685, 0.8759, 0.2749, 3.9892}));
      def.warm_max = {{0.2379, 0.2031, 0.2328, 0.5733, 0.5207, 0.9716, 0.3760, 0.4200},
                      {chart.a.p1, chart.a.p2, chart.a.p3, chart.b.p1, chart.b.p2, chart.b.p3,
                       chart.d.p1, chart.d.p2}};
      def.warm_min = {{0.5, 0.5, 1.0, 0.5, 0.5, 0.5, 0.5, 0.5}};
      return def;
    }
    case ProblemName::qutrit_area_pure_qubit_rep: {
      def.region.lower.assign(2, 0.0);
      def.region.upper.assign(2, 1.0);
      const std::vector<std::size_t> coords{0, 1};
      const double sign = branch >= 0 ? 1.0 : -1.0;
      def.region.violations = [coords](const std::vector<double>& x) {
        return std::vector<double>{radial_violation(x, coords, 0.5, 0.5)};
      };
      def.region.project = [coords](std::vector<double>& x) { radial_project(x, coords, 0.5, 0.5); };
      auto c_triple = [sign](const std::vector<double>& x) {
        double u1 = x[0] - 0.5;
        double u3 = x[1] - 0.5;
        const double r2 = u1 * u1 + u3 * u3;
        if (r2 > 0.25) {
          const double scale = 0.5 / std::sqrt(r2);
          u1 *= scale;
          u3 *= scale;
        }
        const double disc = std::max(0.0, 0.25 - u1 * u1 - u3 * u3);
        return ProbabilityTriple{0.5 + u1, 0.5 + sign * std::sqrt(disc), 0.5 + u3};
      };
      def.objective = [c_triple](const std::vector<double>& x) {
        const ProbabilityTriple c = c_triple(x);
        ComponentQubits parts;
        parts.a = c;
        parts.b = {0.5, 0.5, 1.0};
        parts.c = c;
        parts.d = {0.5, 0.5, 0.0};
        return qutrit_area_sum(parts);
      };
      def.report = [c_triple](const std::vector<double>& x) {
        const ProbabilityTriple c = c_triple(x);
        return std::vector<double>{c.p1, c.p2, c.p3};
      };
      if (branch >= 0) {
        def.warm_max = {{high, high}};
      } else {
        def.warm_max = {{low, low}};
      }
      const double k = 1.0 / (2.0 * std::sqrt(2.0));
      def.warm_min = {{0.5 + k, 0.5 - k}};
      return def;
    }
    case ProblemName::qutrit_area_abd_pure: {
      def.region.lower.assign(8, 0.0);
      def.region.upper.assign(8, 1.0);
      def.region.start_tolerance = kGateOff;  // equality constraints: penalty-driven
      def.region.violations = [](const std::vector<double>& x) {
        const ComponentQubits c = components_from_8(x);
        const ComplexMatrix m = build_qutrit(c);
        return std::vector<double>{
            std::max(0.0, -min_eigenvalue(m)),
            purity(m) - 1.0,
            sq_radius(c.a) - sq_radius(c.b),
            sq_radius(c.c) - sq_radius(c.d),
        };
      };
      def.objective = [](const std::vector<double>& x) {
        const ComponentQubits c = components_from_8(x);
        return area_sum(c.a) + area_sum(c.b) + area_sum(c.d);
      };
      def.warm_max = {coherent_abd_argmax()};
      return def;
    }
    case ProblemName::separable_embed_12: {
      def.region.lower.assign(4, 0.0);
      def.region.upper.assign(4, 1.0);
      auto components = [](const std::vector<double>& x) {
        ComponentQubits c;
        c.a = {x[0], x[1], x[2]};
        c.b = {0.5, 0.5, x[3]};
        c.d = {0.5, 0.5, 1.0 - x[3]};
        c.c = {x[0], x[1], x[2] + x[3] - 1.0};
        return c;
      };
      def.region.violations = [components](const std::vector<double>& x) {
        return std::vector<double>{psd_violation(components(x))};
      };
      def.objective = [components](const std::vector<double>& x) {
        return qutrit_area_sum(components(x));
      };
      def.interior = {0.5, 0.5, 2.0 / 3.0, 2.0 / 3.0};
      def.warm_max = {{high, high, high, 1.0}, {low, low, low, 1.0}};
      def.warm_min = {{0.5, 0.5, 1.0, 0.5}};
      return def;
    }
    case ProblemName::separable_embed_3: {
      def.region.lower.assign(6, 0.0);
      def.region.upper.assign(6, 1.0);
      auto components = [](const std::vector<double>& x) {
        ComponentQubits c;
        c.a = {0.5, 0.5, x[0]};
        c.b = {x[1], x[2], x[3]};
        c.d = {x[4], x[5], 1.0 - x[3]};
        c.c = {0.5, 0.5, x[0] + x[3] - 1.0};
        return c;
      };
      def.region.violations = [components](const std::vector<double>& x) {
        return std::vector<double>{psd_violation(components(x))};
      };
      def.objective = [components](const std::vector<double>& x) {
        return qutrit_area_sum(components(x));
      };
      def.interior = {2.0 / 3.0, 0.5, 0.5, 2.0 / 3.0, 0.5, 0.5};
      const double u = std::sqrt((17.0 + 3.0 * std::sqrt(17.0)) / 136.0);
      const double k = std::sqrt((17.0 - 3.0 * std::sqrt(17.0)) / 272.0);
      def.warm_max = {{0.5 - u, 0.5, 0.5, 0.5 + u, 0.5 - k, 0.5 - k},
                      {0.5 + u, 0.5, 0.5, 0.5 - u, 0.5 + k, 0.5 + k}};
      def.warm_min = {{1.0, 0.5, 0.5, 0.5, 0.5, 0.5}};
      return def;
    }
    case ProblemName::appendix_pure: {
      def.region.lower = {0.0, 0.0, 0.0, 0.0};
      def.region.upper = {1.0, 1.0, kTwoPi, kTwoPi};
      const std::vector<std::size_t> coords{0, 1};
      def.region.violations = [coords](const std::vector<double>& x) {
        return std::vector<double>{radial_violation(x, coords, 0.0, 1.0)};
      };
      def.region.project = [coords](std::vector<double>& x) { radial_project(x, coords, 0.0, 1.0); };
      def.objective = [](const std::vector<double>& x) {
        double pb = x[0];
        double pg = x[1];
        const double r2 = pb * pb + pg * pg;
        if (r2 > 1.0) {
          const double scale = 1.0 / std::sqrt(r2);
          pb *= scale;
          pg *= scale;
        }
        const ComplexMatrix rho = pure_qutrit({pb, pg, x[2], x[3]});
        return qutrit_area_sum(component_qubits(rho));
      };
      def.warm_max = {{0.1685, 0.8759, 0.2749, 3.9892}};
      return def;
    }
  }
  raise(ErrorCode::out_of_range, "unknown problem");
}

// ----------------------------------------------------------------------
// Multi-start plumbing.

std::vector<std::vector<double>> latin_hypercube(Rng& rng, int count,
                                                 const std::vector<double>& lo,
                                                 const std::vector<double>& hi) {
  const std::size_t n = lo.size();
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(count), std::vector<double>(n));
  std::vector<std::size_t> order(static_cast<std::size_t>(count));
  for (std::size_t d = 0; d < n; ++d) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.next_u64() % (i + 1));
      std::swap(order[i], order[j]);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      const double frac = (static_cast<double>(order[i]) + rng.uniform()) / count;
      pts[i][d] = lo[d] + frac * (hi[d] - lo[d]);
    }
  }
  return pts;
}

/// Clamp, then restore feasibility by exact projection or by blending
/// toward the interior point.  Returns false when the start stays
/// infeasible and the problem gates starts.
bool feasibilize(const ProblemDef& def, std::vector<double>& x) {
  clamp_to_box(x, def.region.lower, def.region.upper);
  if (def.region.start_tolerance >= kGateOff) return true;
  if (max_violation(def.region, x) <= kFeasibleTol) return true;
  if (def.region.project) {
    def.region.project(x);
    if (max_violation(def.region, x) <= kFeasibleTol) return true;
  }
  if (!def.interior.empty()) {
    for (int k = 1; k <= 16; ++k) {
      const double t = k / 16.0;
      std::vector<double> y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = (1.0 - t) * x[i] + t * def.interior[i];
      if (max_violation(def.region, y) <= kFeasibleTol) {
        x = std::move(y);
        return true;
      }
    }
  }
  return false;
}

struct Candidate {
  std::vector<double> point;  // report coordinates
  double value = 0.0;
  double violation = 0.0;
};

bool improves(const Candidate& cand, const std::optional<Candidate>& incumbent, bool maximizing) {
  if (!incumbent) return true;
  const Candidate& best = *incumbent;
  const bool cand_ok = cand.violation <= kFeasibleTol;
  const bool best_ok = best.violation <= kFeasibleTol;
  if (cand_ok != best_ok) return cand_ok;
  if (!cand_ok) return cand.violation < best.violation;
  const double tie = 1e-12 * (1.0 + std::abs(best.value));
  const double gain = maximizing ? cand.value - best.value : best.value - cand.value;
  if (gain > tie) return true;
  if (gain < -tie) return false;
  return std::lexicographical_compare(cand.point.begin(), cand.point.end(), best.point.begin(),
                                      best.point.end());
}

Candidate make_candidate(const ProblemDef& def, const std::vector<double>& x, double value) {
  Candidate c;
  c.point = def.report ? def.report(x) : x;
  c.value = value;
  c.violation = max_violation(def.region, x);
  return c;
}

}  // namespace

std::string to_string(ProblemName p) {
  switch (p) {
    case ProblemName::qubit_area: return "qubit_area";
    case ProblemName::qutrit_area_free: return "qutrit_area_free";
    case ProblemName::qutrit_area_pure_qubit_rep: return "qutrit_area_pure_qubit_rep";
    case ProblemName::qutrit_area_abd_pure: return "qutrit_area_ABD_pure";
    case ProblemName::separable_embed_12: return "separable_embed_12";
    case ProblemName::separable_embed_3: return "separable_embed_3";
    case ProblemName::appendix_pure: return "appendix_pure";
  }
  return "qubit_area";
}

std::optional<ProblemName> problem_from_string(std::string_view name) {
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (ProblemName p : all_problems()) {
    std::string label = to_string(p);
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (label == lowered) return p;
  }
  return std::nullopt;
}

const std::vector<ProblemName>& all_problems() {
  static const std::vector<ProblemName> names{
      ProblemName::qubit_area,           ProblemName::qutrit_area_free,
      ProblemName::qutrit_area_pure_qubit_rep, ProblemName::qutrit_area_abd_pure,
      ProblemName::separable_embed_12,   ProblemName::separable_embed_3,
      ProblemName::appendix_pure,
  };
  return names;
}

ExpectedBand expected_band(ProblemName p) { return band_spec(p).maximum; }

std::optional<ExpectedBand> expected_minimum_band(ProblemName p) { return band_spec(p).minimum; }

NelderMeadResult maximize(const std::function<double(const std::vector<double>&)>& objective,
                          const FeasibleRegion& region, const std::vector<double>& start,
                          const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  if (n == 0 || region.lower.size() != n || region.upper.size() != n) {
    raise(ErrorCode::wrong_dim, "start and box dimensions disagree");
  }
  std::vector<double> x = start;
  clamp_to_box(x, region.lower, region.upper);
  const double start_violation = max_violation(region, x);
  if (start_violation > region.start_tolerance) {
    raise(ErrorCode::infeasible_start, "start violates the feasible region");
  }

  std::vector<double> weights;
  if (region.violations) {
    weights = {options.penalty_weight, options.penalty_weight * 1e2, options.penalty_weight * 1e4};
  } else {
    weights = {0.0};
  }

  NelderMeadResult result;
  std::vector<double> current = x;
  double step = options.initial_step;
  bool made_progress = false;
  for (double w : weights) {
    auto penalized = [&](const std::vector<double>& y) {
      double g = -objective(y);
      if (w > 0.0) {
        for (double v : region.violations(y)) g += w * v * v;
      }
      return g;
    };
    // Fresh simplexes around the incumbent escape the premature plateaus
    // Nelder-Mead is prone to beyond a few dimensions.
    double incumbent = penalized(current);
    double round_step = step;
    for (int round = 0; round < 4; ++round) {
      const SimplexOutcome stage = simplex_minimize(penalized, current, region.lower, region.upper,
                                                    options.max_iterations, options.tolerance,
                                                    round_step);
      result.iterations += stage.iterations;
      if (stage.collapsed) {
        if (!made_progress) raise(ErrorCode::no_progress, "simplex collapsed before tolerance");
        break;
      }
      made_progress = true;
      const double value = penalized(stage.x);
      const bool improved = value < incumbent - options.tolerance * (1.0 + std::abs(incumbent));
      if (value < incumbent) {
        incumbent = value;
        current = stage.x;
      }
      round_step *= 0.35;
      if (!improved) break;
    }
    step *= 0.2;
  }
  if (region.project) {
    region.project(current);
    clamp_to_box(current, region.lower, region.upper);
  }

  const double final_value = objective(current);
  const double final_violation = max_violation(region, current);
  const double start_value = objective(x);
  const bool start_usable = start_violation <= kFeasibleTol;
  const bool final_usable = final_violation <= kFeasibleTol;
  if (start_usable && (!final_usable || start_value > final_value)) {
    result.point = x;
    result.value = start_value;
  } else {
    result.point = current;
    result.value = final_value;
  }
  return result;
}

BoundReport reproduce_bound(ProblemName problem, std::uint64_t seed) {
  const BandSpec bands = band_spec(problem);
  Rng rng(seed);
  const std::vector<int> branches =
      problem == ProblemName::qutrit_area_pure_qubit_rep ? std::vector<int>{1, -1}
                                                         : std::vector<int>{1};

  std::optional<Candidate> best_max;
  std::optional<Candidate> best_min;
  BoundReport out;
  out.problem = problem;

  for (int branch : branches) {
    const ProblemDef def = make_problem(problem, branch);
    std::vector<std::vector<double>> lhs =
        latin_hypercube(rng, kLhsStarts, def.region.lower, def.region.upper);
    std::vector<std::vector<double>> starts;
    for (auto& s : lhs) {
      if (feasibilize(def, s)) starts.push_back(std::move(s));
    }

    auto run = [&](const std::function<double(const std::vector<double>&)>& objective,
                   const std::vector<std::vector<double>>& extra, bool maximizing,
                   std::optional<Candidate>& incumbent) {
      std::vector<std::vector<double>> pool = starts;
      for (auto w : extra) {
        if (feasibilize(def, w)) pool.push_back(std::move(w));
      }
      for (const auto& s : pool) {
        ++out.starts_used;
        NelderMeadResult r;
        try {
          r = maximize(objective, def.region, s);
        } catch (const Error&) {
          continue;  // degenerate start; other starts cover the problem
        }
        out.iterations += r.iterations;
        Candidate cand = make_candidate(def, r.point, maximizing ? r.value : -r.value);
        if (improves(cand, incumbent, maximizing)) incumbent = std::move(cand);
      }
    };

    run(def.objective, def.warm_max, true, best_max);
    if (bands.minimum) {
      auto negated = [&def](const std::vector<double>& y) { return -def.objective(y); };
      run(negated, def.warm_min, false, best_min);
    }
  }

  out.extremum_value = best_max->value;
  out.argmax = best_max->point;
  out.best_constraint_violation = best_max->violation;
  out.within_band =
      std::abs(out.extremum_value - bands.maximum.value) <= bands.maximum.tolerance;
  if (bands.minimum) {
    out.paired_minimum = best_min->value;
    out.paired_argmin = best_min->point;
    out.best_constraint_violation = std::max(out.best_constraint_violation, best_min->violation);
    out.within_band = out.within_band &&
                      std::abs(*out.paired_minimum - bands.minimum->value) <= bands.minimum->tolerance;
  }
  return out;
}

}  // namespace malevich
