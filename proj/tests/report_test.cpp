#include "doctest.h"
#include "morphcomp/report.hpp"

using namespace morph;

TEST_SUITE("report") {

TEST_CASE("measure report json") {
  MeasureReport r;
  r.set(Measure::ASOC_W, 0.5);
  r.set(Measure::C_A, 1.0);
  r.parameters["eta"] = 0.25;
  r.sample_count = 5000;
  r.seed = 7;
  const auto j = to_json(r);
  CHECK(j["values"]["ASOC_W"] == 0.5);
  CHECK(j["values"]["C_A"] == 1.0);
  CHECK(j["values"].size() == 2);
  CHECK(j["parameters"]["eta"] == 0.25);
  CHECK(j["sample_count"] == 5000);
  CHECK(j["seed"] == 7);
}

TEST_CASE("manifest json") {
  RunManifest m;
  m.command = "rotator-run";
  m.config = to_json(rotator::Config{});
  m.seed = 3;
  m.outputs = {"series.csv"};
  m.argv = {"morphcomp", "rotator", "run"};
  const auto j = m.to_json();
  CHECK(j["command"] == "rotator-run");
  CHECK(j["tool_version"] == MORPHCOMP_VERSION);
  CHECK(j["seed"] == 3);
  CHECK(j["config"]["f_max"] == 10.0);
  CHECK(j["outputs"][0] == "series.csv");
  CHECK(j["argv"].size() == 3);
}

TEST_CASE("grid json") {
  const auto b = to_json(binary::Grid::standard());
  CHECK(b["phi"].size() == 51);
  CHECK(b["mu"][2] == 20.0);
  const auto r = to_json(rotator::Grid::standard());
  CHECK(r["runs"] == 10);
  CHECK(r["eta"].size() == 21);
}

}  // TEST_SUITE
