#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(MALEVICH_CLI_PATH) + " " + args + " > cli_stdout.tmp 2> cli_stderr.tmp";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp("cli_stdout.tmp");
  result.err = slurp("cli_stderr.tmp");
  return result;
}

/// Value of `key,...` in a key-value CSV body; empty when missing.
std::string csv_value(const std::string& body, const std::string& key) {
  std::stringstream ss(body);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind(key + ",", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

void write_matrix_file(const std::string& path, const std::vector<double>& diag) {
  json j;
  j["dim"] = 3;
  std::vector<double> re(9, 0.0), im(9, 0.0);
  for (int k = 0; k < 3; ++k) re[static_cast<std::size_t>(4 * k)] = diag[static_cast<std::size_t>(k)];
  j["re"] = re;
  j["im"] = im;
  std::ofstream(path) << j.dump();
}

}  // namespace

TEST_CASE("qubit report on the maximally mixed state") {
  const RunResult r = run_cli("qubit --p 0.5,0.5,0.5 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("# malevich-qstate v1 qubit\n", 0) == 0);
  CHECK(csv_value(r.out, "area_sum") == "1.5");
  CHECK(csv_value(r.out, "linear_entropy") == "0.5");
  CHECK(csv_value(r.out, "classification") == "mixed");
  CHECK(csv_value(r.out, "physical") == "1");
}

TEST_CASE("qubit report at the global maximum") {
  const RunResult r = run_cli("qubit --p 0.7886751,0.7886751,0.7886751");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["area_sum"].get<double>() - 3.0) <= 1e-6);
  CHECK(j["classification"] == "global_max");
  CHECK(j["physical"] == true);
}

TEST_CASE("qubit coin triple is reported, flagged, and strict-fails") {
  const RunResult soft = run_cli("qubit --p 1,1,1");
  CHECK(soft.exit_code == 0);
  const json j = json::parse(soft.out);
  CHECK(j["physical"] == false);
  CHECK(j["quantumness_residual"].get<double>() == doctest::Approx(0.5));

  const RunResult strict = run_cli("qubit --p 1,1,1 --strict");
  CHECK(strict.exit_code == 3);
}

TEST_CASE("qubit parse failures exit 2") {
  CHECK(run_cli("qubit --p 0.5,0.5").exit_code == 2);
  CHECK(run_cli("qubit --p a,b,c").exit_code == 2);
  CHECK(run_cli("qubit --p 1.5,0.5,0.5").exit_code == 2);
  CHECK(run_cli("qubit").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("qutrit from probability triples") {
  const RunResult r =
      run_cli("qutrit --a 0.5,0.5,1 --b 0.5,0.5,0.5 --d 0.5,0.5 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("# malevich-qstate v1 qutrit\n", 0) == 0);
  CHECK(csv_value(r.out, "total_area_sum") == "4.5");
  CHECK(csv_value(r.out, "linear_entropy") == "0.5");
  CHECK(csv_value(r.out, "psd") == "1");

  // Explicit p3D must agree with 1 - p3B.
  CHECK(run_cli("qutrit --a 0.5,0.5,1 --b 0.5,0.5,0.5 --d 0.5,0.5,0.9").exit_code == 2);
  // p3A + p3B < 1 leaves a negative diagonal.
  CHECK(run_cli("qutrit --a 0.5,0.5,0.3 --b 0.5,0.5,0.3 --d 0.5,0.5").exit_code == 2);
}

TEST_CASE("qutrit from a matrix file") {
  write_matrix_file("cli_qutrit.json", {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  const RunResult r = run_cli("qutrit --matrix cli_qutrit.json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["total_area_sum"].get<double>() == doctest::Approx(29.0 / 6.0).epsilon(1e-12));
  CHECK(j["linear_entropy"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(j["psd"] == true);

  write_matrix_file("cli_bad.json", {1.5, 0.5, -1.0});
  CHECK(run_cli("qutrit --matrix cli_bad.json").exit_code == 3);
  const RunResult allowed = run_cli("qutrit --matrix cli_bad.json --allow-unphysical");
  CHECK(allowed.exit_code == 0);
  CHECK(json::parse(allowed.out)["psd"] == false);

  CHECK(run_cli("qutrit --matrix does_not_exist.json").exit_code == 2);
  CHECK(run_cli("qutrit --a 0.5,0.5,1 --b 0.5,0.5,0.5").exit_code == 2);
}

TEST_CASE("twoqubit center-block landmark") {
  const RunResult r = run_cli("twoqubit --family center --p 0.75,0.5,0.5");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["negativity"].get<double>() == doctest::Approx(0.25).epsilon(1e-11));
  CHECK(j["concurrence_closed_form"].get<double>() == doctest::Approx(0.5).epsilon(1e-11));
  CHECK(j["concurrence_wootters"].get<double>() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(j["separable_by_ppt"] == false);
  CHECK(j["area_witness"] == "inconclusive");  // S = 1.75 stays below the 5/2 bound
  CHECK(j["separable_area_bound"].get<double>() == 2.5);
}

TEST_CASE("twoqubit embedding from a qutrit file") {
  write_matrix_file("cli_embed.json", {0.5, 0.5, 0.0});
  const RunResult r = run_cli("twoqubit --family embed1 --qutrit cli_embed.json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["physical"] == true);
  CHECK(j["separable_by_ppt"] == true);
  CHECK(j["concurrence_closed_form"].get<double>() == doctest::Approx(0.0));
  CHECK(j["area_sum"].get<double>() == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("twoqubit rejects unphysical input without the override") {
  CHECK(run_cli("twoqubit --family center --p 1,1,1").exit_code == 4);
  const RunResult allowed = run_cli("twoqubit --family center --p 1,1,1 --allow-unphysical");
  CHECK(allowed.exit_code == 0);
  const json j = json::parse(allowed.out);
  CHECK(j["physical"] == false);
  CHECK(j["concurrence_wootters"].is_null());

  CHECK(run_cli("twoqubit --family center").exit_code == 2);
  CHECK(run_cli("twoqubit --family embed1").exit_code == 2);
  CHECK(run_cli("twoqubit --family diagonal --p 0.5,0.5,0.5").exit_code == 2);
}

TEST_CASE("bounds command reports and succeeds on the qubit problem") {
  const RunResult r = run_cli("bounds --problem qubit_area --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("# malevich-qstate v1 bounds\n", 0) == 0);
  CHECK(r.out.find("qubit_area,") != std::string::npos);

  const RunResult j = run_cli("bounds --problem qubit_area");
  const json parsed = json::parse(j.out);
  CHECK(parsed["reports"][0]["within_band"] == true);
  CHECK(std::abs(parsed["reports"][0]["extremum_value"].get<double>() - 3.0) <= 1e-6);

  CHECK(run_cli("bounds --problem no_such_problem").exit_code == 2);
}

TEST_CASE("bounds output is byte-identical across runs") {
  const RunResult a = run_cli("bounds --problem qubit_area --seed 7");
  const RunResult b = run_cli("bounds --problem qubit_area --seed 7");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("scan fig4a grid") {
  const RunResult r = run_cli("scan --target concurrence_fig4a --resolution 3");
  CHECK(r.exit_code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(ss, line)) lines.push_back(line);
  REQUIRE(lines.size() == 11);  // header, columns, 9 data rows
  CHECK(lines[0] == "# malevich-qstate v1 scan concurrence_fig4a");
  CHECK(lines[1] == "p1,p2,value,physical");
  CHECK(lines[6] == "0.5,0.5,0,1");  // center of the grid

  const RunResult again = run_cli("scan --target concurrence_fig4a --resolution 3");
  CHECK(r.out == again.out);
}

TEST_CASE("scan fig6 respects the documented ranges") {
  const RunResult r = run_cli("scan --target coherent_fig6 --resolution 21");
  CHECK(r.exit_code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "# malevich-qstate v1 scan coherent_fig6");
  std::getline(ss, line);
  CHECK(line == "jy,jz,S_A,S_B,S_D,S_total");
  int rows = 0;
  while (std::getline(ss, line)) {
    ++rows;
    const auto last_comma = line.rfind(',');
    const double total = std::stod(line.substr(last_comma + 1));
    CHECK(total >= 4.5 - 1e-9);
    CHECK(total <= 8.10);
  }
  CHECK(rows > 300);
}

TEST_CASE("scan failure modes") {
  CHECK(run_cli("scan --target nonsense").exit_code == 2);
  CHECK(run_cli("scan --target concurrence_fig4a --resolution 1").exit_code == 2);
  CHECK(run_cli("scan --target concurrence_fig4a --resolution 3 "
                "--out /nonexistent-dir/x.csv")
            .exit_code == 6);
}

TEST_CASE("out flag writes the same bytes as stdout") {
  const RunResult direct = run_cli("qubit --p 0.6,0.5,0.5 --format csv");
  const RunResult filed = run_cli("qubit --p 0.6,0.5,0.5 --format csv --out cli_out.tmp");
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp("cli_out.tmp") == direct.out);
}
