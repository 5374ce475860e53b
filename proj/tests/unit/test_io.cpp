#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qpavg/driver.hpp"
#include "qpavg/errors.hpp"
#include "qpavg/io.hpp"

using namespace qpavg;

namespace {

RunConfig make(const std::string& command, const std::string& system) {
  RunConfig c;
  c.command = command;
  c.system = system;
  return c;
}

std::string render(const RunConfig& cfg, const ResultTable& t, OutputFormat fmt) {
  std::ostringstream os;
  write_result(os, cfg, t, fmt);
  return os.str();
}

std::string scalar(const ResultTable& t, const std::string& key) {
  for (const auto& [k, v] : t.scalars) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

TEST_CASE("run config survives a JSON round trip") {
  RunConfig c = make("fourier", "vdp");
  c.ic = {"1.5", "-0.25"};
  c.params = {{"F", "15"}};
  c.n = 1234;
  c.kernel = "sin2";
  c.precision = "dd";
  c.burn_in = 7;
  c.kmax = 9;
  c.n_grid = {16, 32};
  c.step = "1e-3";
  c.format = "json";
  const RunConfig d = RunConfig::from_json(c.to_json());
  CHECK(d.to_json() == c.to_json());
  CHECK(d.ic == c.ic);
  CHECK(d.params.at("F") == "15");
  CHECK(d.burn_in == 7);
  CHECK_THROWS_AS(RunConfig::from_json("{not json"), ConfigError);
}

TEST_CASE("format and precision names") {
  CHECK(parse_format("csv") == OutputFormat::csv);
  CHECK(parse_format("json") == OutputFormat::json);
  CHECK(parse_format("gnuplot") == OutputFormat::gnuplot);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
  CHECK(parse_precision("double") == Precision::double_);
  CHECK_THROWS_AS(parse_precision("quad"), ConfigError);
}

TEST_CASE("writers") {
  const RunConfig cfg = make("orbit", "standard");
  ResultTable t;
  t.columns = {"g", "x"};
  t.group_column = "g";
  t.add_row({"0", "1.5"});
  t.add_row({"0", "2.5"});
  t.add_row({"1", "0.12345678901234567890123456789"});
  t.scalars = {{"rho1", "0.25"}};
  const std::string csv = render(cfg, t, OutputFormat::csv);
  CHECK(csv.find("# config {") != std::string::npos);
  CHECK(csv.find("# rho1 = 0.25") != std::string::npos);
  CHECK(csv.find("g,x\n0,1.5\n") != std::string::npos);
  const auto j = nlohmann::json::parse(render(cfg, t, OutputFormat::json));
  CHECK(j["rows"][0][0].is_number_integer());
  CHECK(j["rows"][0][1].get<double>() == 1.5);
  // Too many digits for a double: kept as text.
  CHECK(j["rows"][2][1].is_string());
  CHECK(j["config"]["system"] == "standard");
  const std::string gp = render(cfg, t, OutputFormat::gnuplot);
  CHECK(gp.find("2.5\n\n\n") != std::string::npos);
  CHECK_THROWS_AS(t.add_row({"1"}), Error);
}

TEST_CASE("defaults are filled per system") {
  const RunConfig a = resolve_defaults(make("rotnum", ""));
  CHECK(a.system == "torus2d_map");
  CHECK(a.n == 100000);
  const RunConfig b = resolve_defaults(make("section", ""));
  CHECK(b.system == "three_body_flow");
  CHECK(b.params.count("mu") == 1);
  CHECK(b.params.count("H") == 1);
  const RunConfig v = resolve_defaults(make("orbit", "vdp"));
  CHECK(v.burn_in == 1000);
  CHECK(v.params.at("F") == "5");
  RunConfig bad = make("rotnum", "standard");
  bad.ic = {"1", "2", "3"};
  CHECK_THROWS_AS(resolve_defaults(bad), ConfigError);
  RunConfig k = make("fourier", "standard");
  k.n = 100;
  k.kmax = 50;
  CHECK_THROWS_AS(resolve_defaults(k), ConfigError);
  CHECK_THROWS_AS(resolve_defaults(make("nosuch", "standard")), ConfigError);
}

TEST_CASE("small runs of each command") {
  RunConfig o = make("orbit", "standard");
  o.n = 5;
  const auto ot = run_command(resolve_defaults(o));
  CHECK(ot.rows.size() == 5);
  CHECK(ot.columns == std::vector<std::string>{"n", "x", "y"});

  RunConfig r = make("rotnum", "torus2d");
  r.n = 20000;
  const auto rt = run_command(resolve_defaults(r));
  CHECK(std::stod(scalar(rt, "rho1")) == doctest::Approx(0.718).epsilon(1e-3));
  CHECK(std::stod(scalar(rt, "rho2")) == doctest::Approx(0.885).epsilon(1e-3));

  RunConfig l = make("lyapunov", "standard");
  l.ic = {"3.141592653589793", "1.65"};
  l.n = 5000;
  const auto lt = run_command(resolve_defaults(l));
  REQUIRE(lt.rows.size() == 2);
  CHECK(std::fabs(std::stod(lt.rows[0][1]) + std::stod(lt.rows[1][1])) <= 1e-8);
  CHECK_THROWS_AS(run_command(resolve_defaults(make("lyapunov", "vdp"))), ConfigError);

  RunConfig c = make("conjugacy", "standard");
  c.ic = {"3.141592653589793", "0.3"};
  c.n = 20000;
  c.kmax = 20;
  c.points = 32;
  const auto ct = run_command(resolve_defaults(c));
  CHECK(ct.rows.size() == 32);

  RunConfig s = make("section", "three_body");
  s.n = 20;
  const auto st = run_command(resolve_defaults(s));
  REQUIRE(st.rows.size() == 20);
  for (const auto& row : st.rows) CHECK(std::fabs(std::stod(row[3])) <= 1e-13);
}

TEST_CASE("double-double output keeps extra digits") {
  RunConfig r = make("rotnum", "torus2d");
  r.n = 2000;
  r.precision = "dd";
  const auto t = run_command(resolve_defaults(r));
  CHECK(scalar(t, "rho1").size() >= 30);
}

TEST_CASE("rerunning an embedded config reproduces the output") {
  RunConfig r = make("rotnum", "torus2d");
  r.n = 5000;
  r.out = "qpavg_test_rerun.csv";
  const RunConfig cfg = resolve_defaults(r);
  emit(cfg, run_command(cfg));
  const RunConfig back = read_embedded_config(r.out);
  CHECK(back.to_json() == cfg.to_json());
  const std::string second = render(back, run_command(back), OutputFormat::csv);
  std::ifstream f(r.out);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == second);
  std::remove(r.out.c_str());
  CHECK_THROWS_AS(read_embedded_config("does/not/exist.csv"), ConfigError);
}
