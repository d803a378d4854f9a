#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <string>

#include "gwistor/report.hpp"

using namespace gwistor::report;
using nlohmann::json;

#ifndef GOLDEN_DIR
#define GOLDEN_DIR "tests/golden"
#endif

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("named models reproduce their golden reports") {
  for (const std::string name :
       {"flat", "hyperbolic", "sphere_c5", "vectorial", "skew", "product_spheres_adapted",
        "random_seed3", "explicit_components"}) {
    INFO(name);
    json spec = load(name + ".spec.json");
    json expected = load(name + ".report.json");
    CHECK(run_classify(spec) == expected);
  }
}

TEST_CASE("reports round-trip through serialization") {
  json spec = {{"type", "random"}, {"seed", 9}};
  json rep = run_classify(spec);
  CHECK(json::parse(rep.dump()) == rep);
}

TEST_CASE("classification values for reference models") {
  json flat = run_classify(json{{"type", "flat"}});
  CHECK(flat["tau0"] == "12/7");
  CHECK(flat["tau1"] == json::array());
  CHECK(flat["tau2"] == json::array());

  json h4 = run_classify(json{{"type", "constant_curvature"}, {"c", -2}});
  CHECK(h4["tau0"] == "0");
  auto flags = h4["class_flags"];
  CHECK(std::find(flags.begin(), flags.end(), "cocalibrated") != flags.end());
  CHECK(std::find(flags.begin(), flags.end(), "pure_W3") != flags.end());

  json vec = run_classify(json{{"type", "vectorial"}, {"nu", {1, 0, 0, 0}}});
  CHECK(vec["tau1"] == json::array({{"e0", "2"}}));
  auto vflags = vec["class_flags"];
  CHECK(std::find(vflags.begin(), vflags.end(), "integrable") != vflags.end());
  CHECK(std::find(vflags.begin(), vflags.end(), "balanced") == vflags.end());
}

TEST_CASE("float ring accepts numeric input") {
  json spec = {{"type", "constant_curvature"}, {"c", 5.0}, {"ring", "float"}};
  json rep = run_classify(spec);
  CHECK(rep["ring"] == "float");
  CHECK(rep["tau0"].get<double>() == doctest::Approx(6.0));
  CHECK(rep["issues"] == json::array());
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(run_classify(json::array()), ParseError);
  CHECK_THROWS_AS(run_classify(json{{"type", "unknown_kind"}}), ParseError);
  CHECK_THROWS_AS(run_classify(json{{"type", "constant_curvature"}}), ParseError);
  // floats are rejected by the exact ring
  CHECK_THROWS_AS(run_classify(json{{"type", "constant_curvature"}, {"c", 0.5}}), ParseError);
  // named type and explicit components are mutually exclusive
  CHECK_THROWS_AS(run_classify(json::parse(R"({"type":"flat","R":[]})")), ParseError);
  // non-unit adaptation direction
  CHECK_THROWS_AS(run_classify(json::parse(R"({"type":"flat","u":[1,1,0,0]})")), ParseError);
  // malformed component entry
  CHECK_THROWS_AS(run_classify(json::parse(R"({"R":[[[0,1,0],1]]})")), ParseError);
  CHECK_THROWS_AS(run_classify(json::parse(R"({"R":[[[0,1,0,9],1]]})")), ParseError);
}

TEST_CASE("symmetry errors carry the offending indices") {
  try {
    run_classify(json::parse(R"({"R":[[[0,1,0,1],2],[[1,0,0,1],2]]})"));
    FAIL("expected a symmetry error");
  } catch (const SymmetryError& e) {
    CHECK(std::string(e.what()).find("R[1001]") != std::string::npos);
  }
  // nonzero value on a degenerate index pair
  CHECK_THROWS_AS(run_classify(json::parse(R"({"T":[[[1,1,2],1]]})")), SymmetryError);
  // zero on a degenerate pair is fine
  CHECK_NOTHROW(run_classify(json::parse(R"({"T":[[[1,1,2],0]]})")));
}

TEST_CASE("explicit components set the whole skew orbit") {
  json rep = run_classify(json::parse(R"({"R":[[[0,1,0,1],2]],"T":[[[0,1,2],"1/2"]]})"));
  CHECK(rep["label"] == "explicit");
  // r_bar = sum_i R(i,0,0,i) = R(1,0,0,1) = -R(0,1,0,1)
  CHECK(rep["invariants"]["r_bar"] == "-2");
  // consistent duplicates across the orbit are accepted
  CHECK_NOTHROW(run_classify(json::parse(R"({"R":[[[0,1,0,1],2],[[1,0,0,1],-2]]})")));
}

TEST_CASE("identity report and negative control") {
  json good = run_identities(false);
  CHECK(good["all_pass"] == true);
  CHECK(good["eigen_multiplicities"]["minus2"] == 7);
  CHECK(good["eigen_multiplicities"]["plus1"] == 14);
  CHECK(good["lambda3_ranks"] == json::array({1, 7, 27}));
  json bad = run_identities(true);
  CHECK(bad["all_pass"] == false);
}

TEST_CASE("torsion space report") {
  json rep = run_torsion_space();
  CHECK(rep["dims_ok"] == true);
  CHECK(rep["component_dims"]["vectorial"] == 4);
  CHECK(rep["component_dims"]["skew"] == 4);
  CHECK(rep["component_dims"]["a_plus"] == 8);
  CHECK(rep["component_dims"]["a_minus"] == 8);
  CHECK(rep["solution_spaces"]["tau1_tors_zero"]["dim"] == 20);
  CHECK(rep["solution_spaces"]["tau2_tors_zero"]["dim"] == 16);
  CHECK(rep["solution_spaces"]["anti_Z"]["dim"] == 12);
  CHECK(rep["c_family"]["coeff1_plus_slot_selfdual"] == true);
  CHECK(rep["c_family"]["coeff2_plus_slot_selfdual"] == false);
}

TEST_CASE("flat check report") {
  json rep = run_flat_check(5, 1e-4, 1e-6, 1);
  CHECK(rep["all_pass"] == true);
  CHECK(rep["worst_residual"].get<double>() < 1e-6);
  CHECK(rep["convergence_ratio"]["min"].get<double>() > 3.5);
  CHECK(rep["convergence_ratio"]["max"].get<double>() < 4.5);
  CHECK_THROWS_AS(run_flat_check(0, 1e-4, 1e-6, 1), ParseError);
}
