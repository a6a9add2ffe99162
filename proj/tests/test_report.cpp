#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "csdamp/report.hpp"

using namespace csdamp;
namespace rep = csdamp::report;

namespace {

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("format_double round trips") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(gen) * std::pow(10.0, k % 20 - 10);
    const std::string s = rep::format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
    CHECK(s.find(' ') == std::string::npos);
  }
  CHECK(rep::format_double(0.5) == "0.5");
  CHECK(rep::format_double(1.0) == "1");
}

TEST_CASE("flag parsers") {
  CHECK(rep::parse_resolution("C96") == 96);
  CHECK(rep::parse_resolution("c48") == 48);
  CHECK(rep::parse_resolution("192") == 192);
  CHECK_THROWS_AS(rep::parse_resolution("C"), std::invalid_argument);
  CHECK_THROWS_AS(rep::parse_resolution("96x"), std::invalid_argument);

  CHECK(rep::parse_location("argmin").kind == rep::Location::Kind::argmin);
  CHECK(rep::parse_location("flat").kind == rep::Location::Kind::flat);
  const auto loc = rep::parse_location("2,3,4");
  CHECK(loc.kind == rep::Location::Kind::point);
  CHECK(loc.point == PointIndex{2, 3, 4});
  CHECK_THROWS_AS(rep::parse_location("2,3"), std::invalid_argument);
  CHECK_THROWS_AS(rep::parse_location("corner"), std::invalid_argument);

  CHECK(rep::parse_coefficient("osc-free").osc_free);
  CHECK(rep::parse_coefficient("0.15").value == 0.15);
  CHECK_THROWS_AS(rep::parse_coefficient("-0.1"), std::invalid_argument);
  CHECK_THROWS_AS(rep::parse_coefficient("fast"), std::invalid_argument);
}

TEST_CASE("grid_metrics_csv") {
  const PanelGrid g(GridSpec{MappingKind::equiangular, 2});
  const auto f = metric_field(g, Staggering::offset);
  const std::string csv = rep::grid_metrics_csv(g, f);
  CHECK(count_lines(csv) == 1 + 54);
  CHECK(csv.rfind("panel_id,i,j,lon_deg,lat_deg,dx_m,dy_m,chi,sin_alpha,area_m2\n", 0) == 0);

  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  std::getline(ss, line);
  const auto cells = split(line);
  REQUIRE(cells.size() == 10);
  CHECK(cells[0] == "1");
  CHECK(cells[1] == "0");
  CHECK(cells[2] == "0");
  CHECK(std::stod(cells[3]) == doctest::Approx(-45.0));  // panel 1 SW corner
  CHECK(std::stod(cells[4]) == doctest::Approx(-35.26438968).epsilon(1e-8));

  const std::vector<double> gamma(f.cells.size(), 0.25);
  const std::string with_gamma = rep::grid_metrics_csv(g, f, &gamma);
  CHECK(with_gamma.find(",gamma_2dx\n") != std::string::npos);
  const std::vector<double> short_gamma(3, 0.0);
  CHECK_THROWS_AS(rep::grid_metrics_csv(g, f, &short_gamma), std::invalid_argument);
}

TEST_CASE("grid_metrics_report") {
  const auto doc = rep::grid_metrics_report(PanelGrid(GridSpec{MappingKind::equi_edge, 192}),
                                            Staggering::offset);
  const auto j = doc.to_json();
  CHECK(j["metadata"]["grid"]["mapping"] == "equi-edge");
  CHECK(j["metadata"]["stagger"] == "offset");
  CHECK(j["payload"]["points"] == 6 * 193 * 193);
  const auto& s = j["payload"]["summary"];
  CHECK(std::abs(s["area_ratio"].get<double>() - 2.299) <= 1e-3);
  CHECK(s["min_area_region"] == "corner");
  CHECK(std::abs(s["chi_mid_edge"][0].get<double>() - 1.061) <= 1e-3);
}

TEST_CASE("limits_report") {
  const PanelGrid ee(GridSpec{MappingKind::equi_edge, 96});
  const auto doc = rep::limits_report(ee, {});
  const auto& p = doc.payload;
  CHECK(p["psi_min"]["rounded_down"] == "0.577");
  CHECK(p["psi_min"]["region"] == "corner");
  CHECK(p["oscillation_free"]["rounded_down"] == "0.144");
  const char* rows[] = {"0.288", "0.204", "0.181", "0.171"};
  for (int k = 0; k < 4; ++k) CHECK(p["limits"][k]["max_stable_rounded_down"] == rows[k]);
  CHECK_FALSE(p["limits"][0].contains("mixed_limit"));
  CHECK(doc.metadata["coef2"].is_null());

  const PanelGrid ea(GridSpec{MappingKind::equiangular, 96});
  const auto mixed = rep::limits_report(ea, {Staggering::offset, OperatorKind::pseudo, {2, 3, 4}, 0.05});
  const char* mrows[] = {"0.147", "0.137", "0.132"};
  for (int k = 0; k < 3; ++k) CHECK(mixed.payload["limits"][k]["mixed_limit_rounded_down"] == mrows[k]);
  CHECK(mixed.payload["psi_min"]["region"] == "mid-edge");

  const std::string csv = rep::limits_csv(mixed);
  CHECK(csv.rfind("q,order,max_stable,max_stable_rounded_down,mixed_limit,mixed_limit_rounded_down\n",
                  0) == 0);
  CHECK(csv.find("\n3,6,") != std::string::npos);
  CHECK(count_lines(csv) == 4);

  const auto full = rep::limits_report(ea, {Staggering::offset, OperatorKind::full, {1}, {}});
  CHECK(full.payload["psi_min"]["value"].get<double>() <=
        mixed.payload["psi_min"]["value"].get<double>());

  const auto none = rep::limits_report(ea, {Staggering::offset, OperatorKind::pseudo, {1}, 0.3});
  CHECK(none.payload["limits"][0]["mixed_limit"].is_null());
}

TEST_CASE("amplification_report") {
  const PanelGrid g(GridSpec{MappingKind::equiangular, 48});
  rep::AmplificationRequest req;
  req.q = 3;
  req.coef = rep::parse_coefficient("osc-free");
  const auto doc = rep::amplification_report(g, req);
  const auto& curve = doc.payload["curve"];
  REQUIRE(curve.size() == 65);
  CHECK(curve.front()["gamma"] == 1.0);
  CHECK(std::abs(curve.back()["gamma"].get<double>()) < 1e-12);
  CHECK(curve.back()["k_dx"] == std::numbers::pi);

  req.q = 1;
  req.location = rep::parse_location("flat");
  req.samples = 3;
  const auto flat = rep::amplification_report(g, req);
  CHECK(flat.payload["coef_resolved"] == 0.125);
  CHECK(flat.payload["curve"][1]["gamma"].get<double>() == doctest::Approx(0.5));
  CHECK(flat.payload["cell"]["location"] == "flat");

  const std::string csv = rep::amplification_csv(flat);
  CHECK(csv.rfind("k_dx,gamma\n0,1\n", 0) == 0);
  CHECK(count_lines(csv) == 4);

  req.location = rep::parse_location("1,49,0");
  CHECK_THROWS_AS(rep::amplification_report(g, req), std::invalid_argument);
  req.location = rep::parse_location("1,48,0");
  CHECK_NOTHROW(rep::amplification_report(g, req));
}

TEST_CASE("two_dx_report") {
  const PanelGrid g(GridSpec{MappingKind::equidistant, 192});
  const auto res = rep::two_dx_report(g, {Staggering::offset, OperatorKind::pseudo, 4,
                                          rep::parse_coefficient("osc-free"), {}});
  CHECK(std::abs(res.summary.payload["gamma_max"].get<double>() - 0.997) <= 1e-3);
  CHECK(std::abs(res.summary.payload["gamma_min"].get<double>()) < 1e-12);
  CHECK(count_lines(res.csv) == 1 + 6 * 193 * 193);
  CHECK(res.csv.find(",area_m2,gamma_2dx\n") != std::string::npos);
}

TEST_CASE("empirical_limit_report") {
  const PanelGrid g(GridSpec{MappingKind::equi_edge, 48});
  rep::EmpiricalRequest req;
  req.q = 2;
  const auto doc = rep::empirical_limit_report(g, req);
  CHECK(doc.payload["analytic_limit_rounded_down"] == "0.204");
  CHECK(doc.payload["relative_gap"].get<double>() < 0.005);
  CHECK(doc.payload["within_half_percent"] == true);

  req.steps = 1;
  CHECK_THROWS_AS(rep::empirical_limit_report(g, req), BracketError);

  req.steps = 5000;
  req.coef2 = 0.4;
  CHECK_THROWS_AS(rep::empirical_limit_report(g, req), std::invalid_argument);
}

TEST_CASE("write_file_atomic") {
  const auto dir = std::filesystem::temp_directory_path() / "csdamp_report_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  rep::write_file_atomic(path, "abc\n");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text == "abc\n");
  CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
  std::filesystem::remove_all(dir);

  CHECK_THROWS_AS(rep::write_file_atomic("/nonexistent-dir/x/out.csv", "x"), std::runtime_error);
}
