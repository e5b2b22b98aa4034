#include <doctest.h>

#include <clocale>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "alimit/common.hpp"
#include "alimit/diagonalize.hpp"
#include "alimit/formats.hpp"
#include "alimit/random_tree.hpp"
#include "alimit/shearer.hpp"

using namespace alimit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

ThresholdRow sample_row() {
  ThresholdRow row;
  row.alpha = 0.0;
  row.tau0 = Cell::of(2.0581710272714924);
  row.tau1 = Cell::of(2.0581710272714924);
  row.tau1_prime = Cell::of(kInf);
  row.tau2 = Cell::of(2.324717957244746);
  return row;
}

}  // namespace

TEST_SUITE("formats") {
  TEST_CASE("number formatting") {
    CHECK(format_number(2.0581710272714924) == "2.058171027");
    CHECK(format_number(2.0581710272714924, 3) == "2.06");
    CHECK(format_number(kInf) == "inf");
    CHECK(format_number(-kInf) == "-inf");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_exact(2.4399999999999995) == "2.4399999999999995");
    CHECK(format_exact(0.1) == "0.1");
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
      const double v = u(rng);
      CHECK(std::stod(format_exact(v)) == v);
    }
  }

  TEST_CASE("Cell states") {
    CHECK(Cell::of(1.5).state == Cell::State::Value);
    CHECK(Cell::of(kInf).state == Cell::State::Inf);
    CHECK(Cell::undefined().state == Cell::State::Undefined);
  }

  TEST_CASE("table format names") {
    CHECK(parse_table_format("csv") == TableFormat::Csv);
    CHECK(parse_table_format("json") == TableFormat::Json);
    CHECK(parse_table_format("text") == TableFormat::Text);
    CHECK_FALSE(parse_table_format("xml").has_value());
  }

  TEST_CASE("CSV threshold rows carry markers") {
    ThresholdRow late;
    late.alpha = 0.6;
    late.tau0 = Cell::of(2.3);
    std::ostringstream out;
    write_threshold_rows(out, {sample_row(), late}, {"tau0", "tau1", "tau1_prime", "tau2"},
                         TableFormat::Csv);
    const auto l = lines(out.str());
    REQUIRE(l.size() == 4);
    CHECK(l[0] == kFormatHeader);
    CHECK(l[1] == "alpha,tau0,tau1,tau1_prime,tau2");
    CHECK(l[2] == "0,2.058171027,2.058171027,inf,2.324717957");
    CHECK(l[3] == "0.6,2.3,undefined,undefined,undefined");
  }

  TEST_CASE("CSV column subset and regime column") {
    auto row = sample_row();
    row.regime = "interval-I";
    std::ostringstream out;
    write_threshold_rows(out, {row}, {"tau2"}, TableFormat::Csv, 5);
    const auto l = lines(out.str());
    REQUIRE(l.size() == 3);
    CHECK(l[1] == "alpha,tau2,regime");
    CHECK(l[2] == "0,2.3247,interval-I");
  }

  TEST_CASE("segments are quoted in CSV") {
    auto row = sample_row();
    row.regime = "gap";
    row.segments = "[1,2);[3,inf)";
    std::ostringstream out;
    write_threshold_rows(out, {row}, {"tau0"}, TableFormat::Csv);
    const auto l = lines(out.str());
    REQUIRE(l.size() == 3);
    CHECK(l[1] == "alpha,tau0,regime,segments");
    CHECK(l[2] == "0,2.058171027,gap,\"[1,2);[3,inf)\"");
  }

  TEST_CASE("JSON threshold rows use null plus status") {
    std::ostringstream out;
    write_threshold_rows(out, {sample_row()}, {"tau0", "tau1", "tau1_prime", "tau2"},
                         TableFormat::Json);
    const auto j = Json::parse(out.str());
    CHECK(j["format"] == std::string(kFormatTag));
    const auto& r = j["rows"][0];
    CHECK(r["tau1_prime"].is_null());
    CHECK(r["tau1_prime_status"] == "inf");
    CHECK(r["tau0"].get<double>() == doctest::Approx(2.058171027).epsilon(1e-10));
    CHECK_FALSE(r.contains("tau0_status"));
  }

  TEST_CASE("text table is aligned") {
    std::ostringstream out;
    write_threshold_rows(out, {sample_row(), sample_row()}, {"tau0", "tau2"}, TableFormat::Text);
    const auto l = lines(out.str());
    REQUIRE(l.size() >= 3);
    CHECK(l[0] == kFormatHeader);
    CHECK(l[1].size() == l[2].size());
  }

  TEST_CASE("DiagResult JSON round trip") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
      const auto m = random_a_alpha_tree(rng, 1 + t, 0.0);
      const auto d = diagonalize(m, static_cast<double>(t % 3 - 1));
      const auto j = to_json(d);
      CHECK(j["format"] == std::string(kFormatTag));
      const auto back = diag_result_from_json(Json::parse(j.dump()));
      CHECK(back.d == d.d);
      CHECK(back.inertia() == d.inertia());
      CHECK(back.removed_edges == d.removed_edges);
    }
  }

  TEST_CASE("DiagResult JSON validation") {
    std::mt19937_64 rng(1);
    Json j = to_json(diagonalize(random_a_alpha_tree(rng, 5, 0.2), 0.0));
    Json wrong_tag = j;
    wrong_tag["format"] = "something else";
    CHECK_THROWS(diag_result_from_json(wrong_tag));
    Json wrong_count = j;
    wrong_count["n_pos"] = j["n_pos"].get<int>() + 1;
    CHECK_THROWS(diag_result_from_json(wrong_count));
  }

  TEST_CASE("caterpillar JSON round trip") {
    const CaterpillarSpec spec{{2, 0, 1, 3}};
    const auto j = to_json(spec);
    CHECK(j.dump() == "[2,0,1,3]");
    CHECK(caterpillar_from_json(j).r == spec.r);
    CHECK_THROWS(caterpillar_from_json(Json::parse("[1,-2]")));
    CHECK_THROWS(caterpillar_from_json(Json::parse("{\"r\":[1]}")));
  }

  TEST_CASE("Shearer sequence JSON") {
    const auto s = build_shearer(0.1, 2.44, 10);
    const auto j = to_json(s);
    CHECK(j["format"] == std::string(kFormatTag));
    CHECK(j["k"] == 10);
    CHECK(j["r"].get<std::vector<int>>() == s.r);
    CHECK(j["b"].get<std::vector<double>>() == s.b);
  }

  TEST_CASE("convergence CSV") {
    const std::vector<std::size_t> ks{10, 20};
    const auto rep = convergence_report(0.1, 2.5, ks);
    std::ostringstream out;
    write_convergence_csv(out, rep, 6);
    const auto l = lines(out.str());
    REQUIRE(l.size() == 4);
    CHECK(l[0] == kFormatHeader);
    CHECK(l[1] == "k,rho,gap,sigma,c_over_k,Qk");
    CHECK(l[2].rfind("10,", 0) == 0);
    const auto rho_field = l[2].substr(3, l[2].find(',', 3) - 3);
    CHECK(std::stod(rho_field) == rep.samples[0].rho);
    const auto j = to_json(rep);
    CHECK(j["samples"].size() == 2);
  }

  TEST_CASE("output does not depend on the C locale") {
    std::ostringstream before;
    write_threshold_rows(before, {sample_row()}, {"tau0", "tau2"}, TableFormat::Csv);
    const char* set = std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
    if (!set) set = std::setlocale(LC_NUMERIC, "fr_FR.UTF-8");
    std::ostringstream after;
    write_threshold_rows(after, {sample_row()}, {"tau0", "tau2"}, TableFormat::Csv);
    std::setlocale(LC_NUMERIC, "C");
    CHECK(before.str() == after.str());
    CHECK(format_number(0.5) == "0.5");
  }
}
