// malevich-qstate: probability-representation analysis of qubit, qutrit,
// and two-qubit states with deterministic CSV/JSON emission.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "malevich/bound_search.hpp"
#include "malevich/error.hpp"
#include "malevich/qubit.hpp"
#include "malevich/qutrit.hpp"
#include "malevich/spin_coherent.hpp"
#include "malevich/two_qubit.hpp"

namespace {

using malevich::ComplexMatrix;
using malevich::ComponentQubits;
using malevich::ProbabilityTriple;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPositivity = 3;
constexpr int kExitUnphysical = 4;
constexpr int kExitBoundMiss = 5;
constexpr int kExitIo = 6;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Comma-separated real list; throws CLI::ValidationError on malformed input.
std::vector<double> parse_reals(const std::string& text, std::size_t min_count,
                                std::size_t max_count, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "'" + item + "' is not a real number");
    }
    if (used != item.size()) {
      throw CLI::ValidationError(flag, "'" + item + "' is not a real number");
    }
    out.push_back(value);
  }
  if (out.size() < min_count || out.size() > max_count) {
    throw CLI::ValidationError(flag, "expected " + std::to_string(min_count) +
                                         (max_count != min_count
                                              ? ".." + std::to_string(max_count)
                                              : "") +
                                         " comma-separated values");
  }
  return out;
}

ProbabilityTriple require_unit_triple(const std::vector<double>& v, const std::string& flag) {
  for (double x : v) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw CLI::ValidationError(flag, "probabilities must lie in [0, 1]");
    }
  }
  return {v[0], v[1], v[2]};
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json j;
  j["dim"] = m.dim();
  std::vector<double> re, im;
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = 0; c < m.dim(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

ComplexMatrix matrix_from_json(const ordered_json& j) {
  if (!j.contains("dim") || !j.contains("re") || !j.contains("im")) {
    throw CLI::ValidationError("matrix file", "expected fields dim, re, im");
  }
  const int dim = j["dim"].get<int>();
  if (dim < 2 || dim > 4) {
    throw CLI::ValidationError("matrix file", "dim must be 2, 3, or 4");
  }
  const auto re = j["re"].get<std::vector<double>>();
  const auto im = j["im"].get<std::vector<double>>();
  const std::size_t n = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  if (re.size() != n || im.size() != n) {
    throw CLI::ValidationError("matrix file", "re and im must hold dim*dim row-major entries");
  }
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const std::size_t k = static_cast<std::size_t>(r) * dim + c;
      m(r, c) = malevich::Complex(re[k], im[k]);
    }
  }
  return m;
}

ComplexMatrix load_matrix(const std::string& path, int expected_dim) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("matrix file", "cannot open '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("matrix file", std::string("malformed JSON: ") + e.what());
  }
  ComplexMatrix m = matrix_from_json(j);
  if (m.dim() != expected_dim) {
    throw CLI::ValidationError("matrix file",
                               "expected a " + std::to_string(expected_dim) + "x" +
                                   std::to_string(expected_dim) + " matrix");
  }
  return m;
}

/// Writes to the path, or stdout when the path is empty.  Returns false on
/// I/O failure.
bool emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

void csv_matrix_rows(std::ostringstream& csv, const ComplexMatrix& m) {
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = 0; c < m.dim(); ++c) {
      csv << "rho_re_" << r << c << "," << fmt(m(r, c).real()) << "\n";
      csv << "rho_im_" << r << c << "," << fmt(m(r, c).imag()) << "\n";
    }
  }
}

// ----------------------------------------------------------------------
// qubit

int cmd_qubit(const ProbabilityTriple& p, bool strict, double class_tol,
              const std::string& format, const std::string& out_path) {
  const malevich::QubitDensity state = malevich::qubit_from_probabilities(p);
  const malevich::TriangleGeometry geometry = malevich::triangle_geometry(p);
  const malevich::BlochVector bloch = malevich::bloch_vector(p);
  const double entropy = malevich::linear_entropy(p);
  const double residual = malevich::quantumness_residual(p);
  const std::string label = to_string(malevich::classify_pure_maxima(p, class_tol));

  std::string text;
  if (format == "json") {
    ordered_json j;
    j["schema"] = "malevich-qstate v1";
    j["command"] = "qubit";
    j["p"] = {p.p1, p.p2, p.p3};
    j["physical"] = state.positive;
    j["quantumness_residual"] = residual;
    j["density_matrix"] = matrix_json(state.matrix);
    j["bloch"] = {bloch.x, bloch.y, bloch.z};
    j["sides"] = geometry.sides;
    j["areas"] = geometry.areas;
    j["area_sum"] = geometry.area_sum;
    j["linear_entropy"] = entropy;
    j["classification"] = label;
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# malevich-qstate v1 qubit\n";
    csv << "p1," << fmt(p.p1) << "\np2," << fmt(p.p2) << "\np3," << fmt(p.p3) << "\n";
    csv << "physical," << (state.positive ? 1 : 0) << "\n";
    csv << "quantumness_residual," << fmt(residual) << "\n";
    csv_matrix_rows(csv, state.matrix);
    csv << "bloch_x," << fmt(bloch.x) << "\nbloch_y," << fmt(bloch.y) << "\nbloch_z,"
        << fmt(bloch.z) << "\n";
    for (int k = 0; k < 3; ++k) {
      csv << "side_" << k + 1 << "," << fmt(geometry.sides[static_cast<std::size_t>(k)]) << "\n";
    }
    for (int k = 0; k < 3; ++k) {
      csv << "area_" << k + 1 << "," << fmt(geometry.areas[static_cast<std::size_t>(k)]) << "\n";
    }
    csv << "area_sum," << fmt(geometry.area_sum) << "\n";
    csv << "linear_entropy," << fmt(entropy) << "\n";
    csv << "classification," << label << "\n";
    text = csv.str();
  }
  if (!emit(out_path, text)) return kExitIo;
  if (strict && !state.positive) return kExitPositivity;
  return kExitOk;
}

// ----------------------------------------------------------------------
// qutrit

struct QutritInput {
  ComponentQubits components;
  ComplexMatrix matrix{3};
  bool psd = false;
  double min_eigenvalue = 0.0;
};

ComponentQubits components_unchecked(const ComplexMatrix& m) {
  auto triple = [](double p3, malevich::Complex off) {
    return ProbabilityTriple{off.real() + 0.5, 0.5 - off.imag(), p3};
  };
  ComponentQubits c;
  c.a = triple(1.0 - m(2, 2).real(), m(0, 2));
  c.b = triple(1.0 - m(1, 1).real(), m(0, 1));
  c.c = triple(m(0, 0).real(), m(0, 2));
  c.d = triple(m(1, 1).real(), m(1, 2));
  return c;
}

int cmd_qutrit(const QutritInput& input, bool allow_unphysical, const std::string& format,
               const std::string& out_path) {
  const ComponentQubits& c = input.components;
  ProbabilityTriple d_linked = c.d;
  d_linked.p3 = 1.0 - c.b.p3;
  const double total = malevich::qutrit_area_sum(c);
  const double entropy = malevich::qutrit_linear_entropy(c);
  const double entropy_decomposed = malevich::qutrit_linear_entropy_decomposed(c);
  const double trace_purity = malevich::purity(input.matrix);

  std::string text;
  if (format == "json") {
    ordered_json j;
    j["schema"] = "malevich-qstate v1";
    j["command"] = "qutrit";
    j["psd"] = input.psd;
    j["min_eigenvalue"] = input.min_eigenvalue;
    j["components"] = {
        {"a", {c.a.p1, c.a.p2, c.a.p3}},
        {"b", {c.b.p1, c.b.p2, c.b.p3}},
        {"c", {c.c.p1, c.c.p2, c.c.p3}},
        {"d", {c.d.p1, c.d.p2, c.d.p3}},
    };
    j["per_qubit_area_sum"] = {
        {"a", malevich::area_sum(c.a)},
        {"b", malevich::area_sum(c.b)},
        {"c", malevich::area_sum(c.c)},
        {"d", malevich::area_sum(d_linked)},
    };
    j["total_area_sum"] = total;
    j["linear_entropy"] = entropy;
    j["linear_entropy_decomposed"] = entropy_decomposed;
    j["one_minus_purity"] = 1.0 - trace_purity;
    j["density_matrix"] = matrix_json(input.matrix);
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# malevich-qstate v1 qutrit\n";
    csv << "psd," << (input.psd ? 1 : 0) << "\n";
    csv << "min_eigenvalue," << fmt(input.min_eigenvalue) << "\n";
    auto triple_rows = [&csv](const char* name, const ProbabilityTriple& t) {
      csv << name << "_p1," << fmt(t.p1) << "\n"
          << name << "_p2," << fmt(t.p2) << "\n"
          << name << "_p3," << fmt(t.p3) << "\n";
    };
    triple_rows("a", c.a);
    triple_rows("b", c.b);
    triple_rows("c", c.c);
    triple_rows("d", c.d);
    csv << "area_sum_a," << fmt(malevich::area_sum(c.a)) << "\n";
    csv << "area_sum_b," << fmt(malevich::area_sum(c.b)) << "\n";
    csv << "area_sum_c," << fmt(malevich::area_sum(c.c)) << "\n";
    csv << "area_sum_d," << fmt(malevich::area_sum(d_linked)) << "\n";
    csv << "total_area_sum," << fmt(total) << "\n";
    csv << "linear_entropy," << fmt(entropy) << "\n";
    csv << "linear_entropy_decomposed," << fmt(entropy_decomposed) << "\n";
    csv << "one_minus_purity," << fmt(1.0 - trace_purity) << "\n";
    csv_matrix_rows(csv, input.matrix);
    text = csv.str();
  }
  if (!emit(out_path, text)) return kExitIo;
  if (!input.psd && !allow_unphysical) return kExitPositivity;
  return kExitOk;
}

// ----------------------------------------------------------------------
// twoqubit

std::optional<malevich::Family> family_from_string(const std::string& name) {
  if (name == "center") return malevich::Family::center_block;
  if (name == "corner") return malevich::Family::corner_block;
  if (name == "embed1") return malevich::Family::qutrit_embed_1;
  if (name == "embed2") return malevich::Family::qutrit_embed_2;
  if (name == "embed3") return malevich::Family::qutrit_embed_3;
  if (name == "embed4") return malevich::Family::qutrit_embed_4;
  return std::nullopt;
}

int cmd_twoqubit(malevich::Family family, const std::optional<ProbabilityTriple>& p,
                 const std::optional<ComplexMatrix>& qutrit, bool allow_unphysical,
                 const std::string& format, const std::string& out_path) {
  malevich::TwoQubitDensity state;
  double area = 0.0;
  double closed_form = 0.0;
  if (family == malevich::Family::center_block || family == malevich::Family::corner_block) {
    state = family == malevich::Family::center_block
                ? malevich::center_block_state(*p, allow_unphysical)
                : malevich::corner_block_state(*p, allow_unphysical);
    area = malevich::area_sum(*p);
    closed_form = malevich::concurrence_closed_form(family, *p);
  } else {
    int placement = 1;
    switch (family) {
      case malevich::Family::qutrit_embed_1: placement = 1; break;
      case malevich::Family::qutrit_embed_2: placement = 2; break;
      case malevich::Family::qutrit_embed_3: placement = 3; break;
      default: placement = 4; break;
    }
    state = malevich::qutrit_embed_state(*qutrit, placement, allow_unphysical);
    const ComponentQubits c = components_unchecked(*qutrit);
    area = malevich::qutrit_area_sum(c);
    closed_form = malevich::concurrence_closed_form(family, c);
  }

  const auto pt = malevich::pt_spectrum(state.matrix);
  double negativity = 0.0;
  for (double lambda : pt) {
    if (lambda < 0.0) negativity -= lambda;
  }
  const double log_negativity = std::log(2.0 * negativity + 1.0);
  std::optional<double> wootters;
  if (state.physical) wootters = malevich::concurrence_wootters(state.matrix);
  const bool separable_by_ppt = pt[3] >= -1e-10;
  const malevich::WitnessVerdict verdict = malevich::area_witness(family, area);
  const double threshold = malevich::separable_area_bound(family);

  std::string text;
  if (format == "json") {
    ordered_json j;
    j["schema"] = "malevich-qstate v1";
    j["command"] = "twoqubit";
    j["family"] = to_string(family);
    j["physical"] = state.physical;
    j["area_sum"] = area;
    j["separable_area_bound"] = threshold;
    j["area_witness"] = to_string(verdict);
    j["negativity"] = negativity;
    j["log_negativity"] = log_negativity;
    j["concurrence_closed_form"] = closed_form;
    if (wootters) {
      j["concurrence_wootters"] = *wootters;
    } else {
      j["concurrence_wootters"] = nullptr;
    }
    j["pt_eigenvalues"] = pt;
    j["separable_by_ppt"] = separable_by_ppt;
    j["density_matrix"] = matrix_json(state.matrix);
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# malevich-qstate v1 twoqubit\n";
    csv << "family," << to_string(family) << "\n";
    csv << "physical," << (state.physical ? 1 : 0) << "\n";
    csv << "area_sum," << fmt(area) << "\n";
    csv << "separable_area_bound," << fmt(threshold) << "\n";
    csv << "area_witness," << to_string(verdict) << "\n";
    csv << "negativity," << fmt(negativity) << "\n";
    csv << "log_negativity," << fmt(log_negativity) << "\n";
    csv << "concurrence_closed_form," << fmt(closed_form) << "\n";
    csv << "concurrence_wootters," << (wootters ? fmt(*wootters) : "") << "\n";
    for (int k = 0; k < 4; ++k) {
      csv << "pt_eigenvalue_" << k + 1 << "," << fmt(pt[static_cast<std::size_t>(k)]) << "\n";
    }
    csv << "separable_by_ppt," << (separable_by_ppt ? 1 : 0) << "\n";
    csv_matrix_rows(csv, state.matrix);
    text = csv.str();
  }
  if (!emit(out_path, text)) return kExitIo;
  return kExitOk;
}

// ----------------------------------------------------------------------
// bounds

ordered_json bound_report_json(const malevich::BoundReport& report) {
  const malevich::ExpectedBand band = malevich::expected_band(report.problem);
  ordered_json j;
  j["problem"] = to_string(report.problem);
  j["extremum_value"] = report.extremum_value;
  j["expected_value"] = band.value;
  j["tolerance"] = band.tolerance;
  j["within_band"] = report.within_band;
  j["argmax"] = report.argmax;
  if (report.paired_minimum) {
    const auto min_band = malevich::expected_minimum_band(report.problem);
    j["paired_minimum"] = *report.paired_minimum;
    j["paired_expected_value"] = min_band->value;
    j["paired_tolerance"] = min_band->tolerance;
    j["paired_argmin"] = report.paired_argmin;
  }
  j["starts_used"] = report.starts_used;
  j["iterations"] = report.iterations;
  j["best_constraint_violation"] = report.best_constraint_violation;
  return j;
}

int cmd_bounds(const std::string& problem_name, std::uint64_t seed, const std::string& format,
               const std::string& out_path) {
  std::vector<malevich::ProblemName> problems;
  if (problem_name.empty() || problem_name == "all") {
    problems = malevich::all_problems();
  } else {
    const auto parsed = malevich::problem_from_string(problem_name);
    if (!parsed) {
      std::fprintf(stderr, "unknown problem '%s'\n", problem_name.c_str());
      return kExitParse;
    }
    problems = {*parsed};
  }

  std::vector<malevich::BoundReport> reports;
  reports.reserve(problems.size());
  for (malevich::ProblemName p : problems) reports.push_back(malevich::reproduce_bound(p, seed));

  std::string text;
  if (format == "json") {
    ordered_json j;
    j["schema"] = "malevich-qstate v1";
    j["command"] = "bounds";
    j["seed"] = seed;
    ordered_json list = ordered_json::array();
    for (const auto& r : reports) list.push_back(bound_report_json(r));
    j["reports"] = list;
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# malevich-qstate v1 bounds\n";
    csv << "problem,extremum_value,expected_value,tolerance,within_band,paired_minimum,"
           "paired_expected_value,paired_tolerance,starts_used,iterations,"
           "best_constraint_violation\n";
    for (const auto& r : reports) {
      const malevich::ExpectedBand band = malevich::expected_band(r.problem);
      const auto min_band = malevich::expected_minimum_band(r.problem);
      csv << to_string(r.problem) << "," << fmt(r.extremum_value) << "," << fmt(band.value) << ","
          << fmt(band.tolerance) << "," << (r.within_band ? 1 : 0) << ",";
      if (r.paired_minimum) {
        csv << fmt(*r.paired_minimum) << "," << fmt(min_band->value) << ","
            << fmt(min_band->tolerance);
      } else {
        csv << ",,";
      }
      csv << "," << r.starts_used << "," << r.iterations << ","
          << fmt(r.best_constraint_violation) << "\n";
    }
    text = csv.str();
  }
  if (!emit(out_path, text)) return kExitIo;
  for (const auto& r : reports) {
    if (!r.within_band) return kExitBoundMiss;
  }
  return kExitOk;
}

// ----------------------------------------------------------------------
// scan

std::string scan_fig4(const std::string& target, int resolution) {
  const bool log_negativity = target == "logneg_fig4b";
  std::ostringstream csv;
  csv << "# malevich-qstate v1 scan " << target << "\n";
  csv << "p1,p2,value,physical\n";
  const double step = 1.0 / (resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    const double p1 = i * step;
    for (int k = 0; k < resolution; ++k) {
      const double p2 = k * step;
      const double u1 = p1 - 0.5;
      const double u2 = p2 - 0.5;
      const double negativity = std::sqrt(u1 * u1 + u2 * u2);
      const double value = log_negativity ? std::log(2.0 * negativity + 1.0) : 2.0 * negativity;
      const bool physical = u1 * u1 + u2 * u2 <= 0.25 + 1e-12;
      csv << fmt(p1) << "," << fmt(p2) << "," << fmt(value) << "," << (physical ? 1 : 0) << "\n";
    }
  }
  return csv.str();
}

std::string scan_fig2(int resolution) {
  constexpr double kPi = 3.14159265358979323846;
  std::ostringstream csv;
  csv << "# malevich-qstate v1 scan qubit_sphere_fig2\n";
  csv << "p1,p2,p3,S,class\n";
  for (int i = 0; i < resolution; ++i) {
    const double theta = kPi * i / (resolution - 1);
    for (int k = 0; k < resolution; ++k) {
      const double phi = 2.0 * kPi * k / resolution;
      const ProbabilityTriple p{0.5 + 0.5 * std::sin(theta) * std::cos(phi),
                                0.5 + 0.5 * std::sin(theta) * std::sin(phi),
                                0.5 + 0.5 * std::cos(theta)};
      csv << fmt(p.p1) << "," << fmt(p.p2) << "," << fmt(p.p3) << ","
          << fmt(malevich::area_sum(p)) << "," << to_string(malevich::classify_pure_maxima(p))
          << "\n";
    }
  }
  return csv.str();
}

std::string scan_fig5(int resolution) {
  std::ostringstream csv;
  csv << "# malevich-qstate v1 scan pure_rep_fig5\n";
  csv << "pC1,pC3,S,branch\n";
  const double step = 1.0 / (resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    const double p1 = i * step;
    for (int k = 0; k < resolution; ++k) {
      const double p3 = k * step;
      const double u1 = p1 - 0.5;
      const double u3 = p3 - 0.5;
      const double disc = 0.25 - u1 * u1 - u3 * u3;
      if (disc < -1e-12) continue;
      const double off = std::sqrt(std::max(disc, 0.0));
      for (int branch : {1, -1}) {
        const ProbabilityTriple c{p1, 0.5 + branch * off, p3};
        csv << fmt(p1) << "," << fmt(p3) << "," << fmt(5.0 + malevich::area_sum(c)) << ","
            << branch << "\n";
      }
    }
  }
  return csv.str();
}

std::string scan_fig6(int resolution, int jx_sign) {
  std::ostringstream csv;
  csv << "# malevich-qstate v1 scan coherent_fig6\n";
  csv << "jy,jz,S_A,S_B,S_D,S_total\n";
  for (const malevich::GridRow& row : malevich::grid_scan(resolution, jx_sign)) {
    csv << fmt(row.jy) << "," << fmt(row.jz) << "," << fmt(row.s_a) << "," << fmt(row.s_b) << ","
        << fmt(row.s_d) << "," << fmt(row.total) << "\n";
  }
  return csv.str();
}

int cmd_scan(const std::string& target, int resolution, int jx_sign,
             const std::string& out_path) {
  std::string text;
  if (target == "concurrence_fig4a" || target == "logneg_fig4b") {
    text = scan_fig4(target, resolution);
  } else if (target == "qubit_sphere_fig2") {
    text = scan_fig2(resolution);
  } else if (target == "pure_rep_fig5") {
    text = scan_fig5(resolution);
  } else if (target == "coherent_fig6") {
    text = scan_fig6(resolution, jx_sign);
  } else {
    std::fprintf(stderr, "unknown scan target '%s'\n", target.c_str());
    return kExitParse;
  }
  if (!emit(out_path, text)) {
    std::fprintf(stderr, "cannot write '%s'\n", out_path.c_str());
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probability (Malevich squares) representation of qubit, qutrit, and two-qubit "
               "quantum states"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 42;
  int resolution = 201;

  auto add_common = [&](CLI::App* cmd, bool with_format) {
    if (with_format) {
      cmd->add_option("--format", format, "Output format")
          ->check(CLI::IsMember({"json", "csv"}))
          ->capture_default_str();
    }
    cmd->add_option("--out", out_path, "Write output to this path instead of stdout");
  };

  // qubit
  auto* qubit_cmd = app.add_subcommand("qubit", "Analyze a qubit probability triple");
  std::string qubit_p;
  bool strict = false;
  // Looser than the library default so triples quoted to a few decimal
  // digits still land on the maxima they were rounded from.
  double class_tol = 1e-6;
  qubit_cmd->add_option("--p", qubit_p, "Probabilities p1,p2,p3")->required();
  qubit_cmd->add_flag("--strict", strict, "Exit 3 when the triple violates quantumness");
  qubit_cmd->add_option("--class-tol", class_tol, "Maxima classification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(qubit_cmd, true);

  // qutrit
  auto* qutrit_cmd = app.add_subcommand("qutrit", "Analyze a qutrit state");
  std::string qutrit_file, a_arg, b_arg, d_arg;
  bool allow_unphysical = false;
  qutrit_cmd->add_option("--matrix", qutrit_file, "JSON file with a 3x3 density matrix");
  qutrit_cmd->add_option("--a", a_arg, "Component-A probabilities p1,p2,p3");
  qutrit_cmd->add_option("--b", b_arg, "Component-B probabilities p1,p2,p3");
  qutrit_cmd->add_option("--d", d_arg, "Component-D probabilities p1,p2[,p3]");
  qutrit_cmd->add_flag("--allow-unphysical", allow_unphysical,
                       "Report non-PSD reconstructions instead of failing");
  add_common(qutrit_cmd, true);

  // twoqubit
  auto* twoqubit_cmd = app.add_subcommand("twoqubit", "Analyze a structured two-qubit state");
  std::string family_arg, twoqubit_p, twoqubit_file;
  twoqubit_cmd
      ->add_option("--family", family_arg,
                   "Family: center, corner, embed1, embed2, embed3, embed4")
      ->required();
  twoqubit_cmd->add_option("--p", twoqubit_p, "Probabilities p1,p2,p3 (center/corner)");
  twoqubit_cmd->add_option("--qutrit", twoqubit_file,
                           "JSON file with the 3x3 matrix to embed (embed families)");
  twoqubit_cmd->add_flag("--allow-unphysical", allow_unphysical,
                         "Analyze unphysical inputs instead of failing");
  add_common(twoqubit_cmd, true);

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Reproduce documented area bounds");
  std::string problem_arg;
  bounds_cmd->add_option("--problem", problem_arg, "Problem name, or 'all'");
  bounds_cmd->add_option("--seed", seed, "Multi-start seed")->capture_default_str();
  add_common(bounds_cmd, true);

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "Emit a deterministic CSV grid");
  std::string target_arg;
  int jx_sign = 1;
  scan_cmd
      ->add_option("--target", target_arg,
                   "concurrence_fig4a, logneg_fig4b, qubit_sphere_fig2, pure_rep_fig5, "
                   "coherent_fig6")
      ->required();
  scan_cmd->add_option("--resolution", resolution, "Grid points per axis")
      ->capture_default_str();
  scan_cmd->add_option("--seed", seed, "Accepted for interface uniformity")
      ->capture_default_str();
  scan_cmd->add_option("--jx-sign", jx_sign, "Sign of jx for coherent_fig6")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  add_common(scan_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (qubit_cmd->parsed()) {
      const auto values = parse_reals(qubit_p, 3, 3, "--p");
      return cmd_qubit(require_unit_triple(values, "--p"), strict, class_tol, format, out_path);
    }

    if (qutrit_cmd->parsed()) {
      QutritInput input;
      if (!qutrit_file.empty()) {
        input.matrix = load_matrix(qutrit_file, 3);
        const malevich::DensityCheck check = malevich::check_density(input.matrix);
        if (!check.hermitian || check.trace_error > 1e-10) {
          std::fprintf(stderr, "matrix is not hermitian with unit trace\n");
          return kExitPositivity;
        }
        input.min_eigenvalue = check.min_eigenvalue;
        input.psd = check.ok;
        if (!input.psd && !allow_unphysical) {
          std::fprintf(stderr, "matrix is not positive semidefinite\n");
          return kExitPositivity;
        }
        input.components = input.psd ? malevich::component_qubits(input.matrix)
                                     : components_unchecked(input.matrix);
      } else {
        if (a_arg.empty() || b_arg.empty() || d_arg.empty()) {
          std::fprintf(stderr, "provide either --matrix or all of --a, --b, --d\n");
          return kExitParse;
        }
        const ProbabilityTriple a = require_unit_triple(parse_reals(a_arg, 3, 3, "--a"), "--a");
        const ProbabilityTriple b = require_unit_triple(parse_reals(b_arg, 3, 3, "--b"), "--b");
        const auto d_values = parse_reals(d_arg, 2, 3, "--d");
        ProbabilityTriple d{d_values[0], d_values[1], 1.0 - b.p3};
        if (d_values.size() == 3) {
          if (std::abs(d_values[2] - (1.0 - b.p3)) > 1e-12) {
            std::fprintf(stderr, "p3D must equal 1 - p3B\n");
            return kExitParse;
          }
          d.p3 = d_values[2];
        }
        require_unit_triple({d.p1, d.p2, d.p3}, "--d");
        const malevich::QutritBuild build = malevich::qutrit_from_probabilities(a, b, d);
        input.matrix = build.matrix;
        input.psd = build.psd;
        input.min_eigenvalue = build.min_eigenvalue;
        input.components.a = a;
        input.components.b = b;
        input.components.d = d;
        input.components.c = {a.p1, a.p2, a.p3 + b.p3 - 1.0};
        if (!input.psd && !allow_unphysical) {
          std::fprintf(stderr, "reconstruction is not positive semidefinite\n");
          return kExitPositivity;
        }
      }
      return cmd_qutrit(input, allow_unphysical, format, out_path);
    }

    if (twoqubit_cmd->parsed()) {
      const auto family = family_from_string(family_arg);
      if (!family) {
        std::fprintf(stderr, "unknown family '%s'\n", family_arg.c_str());
        return kExitParse;
      }
      const bool is_block = *family == malevich::Family::center_block ||
                            *family == malevich::Family::corner_block;
      std::optional<ProbabilityTriple> p;
      std::optional<ComplexMatrix> qutrit;
      if (is_block) {
        if (twoqubit_p.empty()) {
          std::fprintf(stderr, "--family %s needs --p\n", family_arg.c_str());
          return kExitParse;
        }
        p = require_unit_triple(parse_reals(twoqubit_p, 3, 3, "--p"), "--p");
      } else {
        if (twoqubit_file.empty()) {
          std::fprintf(stderr, "--family %s needs --qutrit\n", family_arg.c_str());
          return kExitParse;
        }
        qutrit = load_matrix(twoqubit_file, 3);
      }
      return cmd_twoqubit(*family, p, qutrit, allow_unphysical, format, out_path);
    }

    if (bounds_cmd->parsed()) return cmd_bounds(problem_arg, seed, format, out_path);

    if (scan_cmd->parsed()) {
      if (resolution < 2) {
        std::fprintf(stderr, "resolution must be at least 2\n");
        return kExitParse;
      }
      return cmd_scan(target_arg, resolution, jx_sign, out_path);
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitParse;
  } catch (const malevich::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    switch (e.code()) {
      case malevich::ErrorCode::not_psd:
      case malevich::ErrorCode::not_density:
        return twoqubit_cmd->parsed() ? kExitUnphysical : kExitPositivity;
      case malevich::ErrorCode::out_of_range:
      case malevich::ErrorCode::bad_diagonal:
      case malevich::ErrorCode::wrong_dim:
      case malevich::ErrorCode::inconsistent_triples:
        return kExitParse;
      default:
        return kExitUnphysical;
    }
  }
  return kExitOk;
}
