#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwistor/report.hpp"

using nlohmann::json;

namespace {

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << j.dump(2) << "\n";
}

json read_spec(const std::string& path) {
  json spec;
  try {
    if (path == "-") {
      spec = json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw gwistor::report::ParseError("cannot open " + path);
      spec = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw gwistor::report::ParseError(e.what());
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion classifier for the standard 7-dim structure built "
               "from a curvature/torsion pair on an oriented 4-dim frame"};
  app.require_subcommand(1);

  std::string input = "-", out_path, ring;
  double tol = -1, step = 1e-4, flat_tol = 1e-6;
  std::uint64_t seed = 1;
  int points = 10;
  bool corrupt = false;

  auto* classify = app.add_subcommand("classify", "classify a model given as JSON");
  classify->add_option("input", input, "model spec file, or - for stdin");
  classify->add_option("--ring", ring, "rational or float (overrides the spec)");
  classify->add_option("--tol", tol, "comparison tolerance (overrides the spec)");
  classify->add_option("--seed", seed, "seed for type=random when the spec has none");
  classify->add_option("--out", out_path, "write the report here instead of stdout");

  auto* identities = app.add_subcommand("identities", "verify the fixed structure equations");
  identities->add_option("--out", out_path, "write the report here instead of stdout");
  identities->add_flag("--corrupt-orientation", corrupt)->group("");

  auto* torsion = app.add_subcommand("torsion-space", "pointwise torsion decomposition report");
  torsion->add_option("--out", out_path, "write the report here instead of stdout");

  auto* flat = app.add_subcommand("flat-check", "numeric check of the flat model equations");
  flat->add_option("--points", points, "number of random chart points");
  flat->add_option("--step", step, "central difference step");
  flat->add_option("--tol", flat_tol, "residual tolerance");
  flat->add_option("--seed", seed, "base seed for the chart points");
  flat->add_option("--out", out_path, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) {
      json spec = read_spec(input);
      if (!ring.empty()) spec["ring"] = ring;
      if (tol >= 0) spec["tol"] = tol;
      if (spec.is_object() && spec.value("type", "") == "random" && !spec.contains("seed"))
        spec["seed"] = seed;
      emit(gwistor::report::run_classify(spec), out_path);
      return 0;
    }
    if (identities->parsed()) {
      json rep = gwistor::report::run_identities(corrupt);
      emit(rep, out_path);
      return rep["all_pass"].get<bool>() ? 0 : 1;
    }
    if (torsion->parsed()) {
      json rep = gwistor::report::run_torsion_space();
      emit(rep, out_path);
      return rep["dims_ok"].get<bool>() ? 0 : 1;
    }
    json rep = gwistor::report::run_flat_check(points, step, flat_tol, seed);
    emit(rep, out_path);
    return rep["all_pass"].get<bool>() ? 0 : 1;
  } catch (const gwistor::report::SymmetryError& e) {
    std::cerr << "symmetry error: " << e.what() << "\n";
    return 3;
  } catch (const gwistor::report::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
