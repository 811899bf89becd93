#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "momentlab/io.hpp"

using namespace momentlab;

TEST_CASE("config parsing, serialization, and round-trip idempotence") {
  std::istringstream in(
      "# experiment setup\n"
      "d = 3\n"
      "delta = 2^-5  # dyadic\n"
      "  seed=42\n"
      "\n"
      "out = results.csv\n");
  auto cfg = parse_config(in);
  CHECK(cfg.size() == 4);
  CHECK(cfg.at("d") == "3");
  CHECK(cfg.at("delta") == "2^-5");
  CHECK(cfg.at("seed") == "42");
  CHECK(cfg.at("out") == "results.csv");

  std::string text = serialize_config(cfg);
  std::istringstream again(text);
  auto cfg2 = parse_config(again);
  CHECK(cfg2 == cfg);
  CHECK(serialize_config(cfg2) == text);
  CHECK(config_hash(cfg2) == config_hash(cfg));

  std::istringstream bad("novalue\n");
  CHECK_THROWS_AS(parse_config(bad), InvalidConfiguration);
  std::istringstream empty_key("= 3\n");
  CHECK_THROWS_AS(parse_config(empty_key), InvalidConfiguration);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/path.cfg"),
                  InvalidConfiguration);
}

TEST_CASE("delta list parsing handles dyadics and decimals") {
  auto v = parse_delta_list("2^-5, 0.125,2^-7");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 0.03125);
  CHECK(v[1] == 0.125);
  CHECK(v[2] == 0.0078125);
  CHECK_THROWS_AS(parse_delta_list("  ,  "), InvalidConfiguration);
}

TEST_CASE("ladder CSV layout") {
  LadderResult lad;
  lad.rows.push_back({0.25, 1.5, 0.01});
  lad.rows.push_back({0.125, 0.75, 0.005});
  std::string csv = ladder_csv(lad);
  CHECK(csv.substr(0, 19) == "delta,value,stderr\n");
  CHECK(csv.find("0.25,1.5,0.01") != std::string::npos);
  CHECK(csv.find("0.125,0.75,0.005") != std::string::npos);

  // round-trip precision: 17 significant digits
  LadderResult fine;
  fine.rows.push_back({1.0 / 3.0, 2.0 / 7.0, 1e-17});
  std::string s = ladder_csv(fine);
  double delta = 0.0, value = 0.0, err = 0.0;
  std::sscanf(s.c_str() + 19, "%lf,%lf,%lf", &delta, &value, &err);
  CHECK(delta == 1.0 / 3.0);
  CHECK(value == 2.0 / 7.0);
}

TEST_CASE("fit JSON carries the verdict") {
  ScalingFit fit{2.47, 0.3, 0.9995, 0.02};
  auto j = fit_json(fit, 2.5, true);
  CHECK(j.at("slope") == 2.47);
  CHECK(j.at("target") == 2.5);
  CHECK(j.at("verdict") == "PASS");
  CHECK(fit_json(fit, 2.5, false).at("verdict") == "FAIL");
}

TEST_CASE("field save/load round-trip is lossless") {
  GridBox box{{-0.5, 0.0, -1.0}, {0.5, 1.0, 1.0}};
  auto f = build_field(box, {7, 5, 3}, [](const Point& p) {
    return std::abs(p[0]) + 2.0 * std::abs(p[1]) + 0.5 * std::abs(p[2]);
  });
  const char* path = "/tmp/momentlab_test_field.mlf";
  save_field(f, path);
  auto g = load_field(path);
  CHECK(g.shape == f.shape);
  CHECK(g.box.lo == f.box.lo);
  CHECK(g.box.hi == f.box.hi);
  CHECK(g.spacing == f.spacing);
  CHECK(g.values == f.values);
  std::remove(path);

  CHECK_THROWS_AS(load_field("/nonexistent/field.mlf"), ComputationError);
  write_text_file("/tmp/momentlab_bad_field.mlf", "not a field file");
  CHECK_THROWS_AS(load_field("/tmp/momentlab_bad_field.mlf"),
                  ComputationError);
  std::remove("/tmp/momentlab_bad_field.mlf");
}

TEST_CASE("text file writing") {
  const char* path = "/tmp/momentlab_test_text.txt";
  write_text_file(path, "hello\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "hello");
  std::remove(path);
  CHECK_THROWS_AS(write_text_file("/nonexistent/dir/x.txt", "x"),
                  ComputationError);
}
