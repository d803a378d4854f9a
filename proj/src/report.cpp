#include "gwistor/report.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gwistor/flat_model.hpp"
#include "gwistor/g2.hpp"
#include "gwistor/torsion_space.hpp"

namespace gwistor::report {

using nlohmann::json;

namespace {

template <class K>
K parse_scalar(const json& v) {
  if constexpr (ring_traits<K>::exact) {
    if (v.is_number_integer()) return ring_traits<K>::from_int(v.get<long long>());
    if (v.is_string()) {
      try {
        return rational_from_string(v.get<std::string>());
      } catch (const std::exception& e) {
        throw ParseError(e.what());
      }
    }
    throw ParseError("rational ring requires integers or \"p/q\" strings, got " + v.dump());
  } else {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return ring_traits<Rational>::to_double(rational_from_string(v.get<std::string>()));
    throw ParseError("expected a number, got " + v.dump());
  }
}

template <class K>
std::array<K, 4> parse_vec4(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 4)
    throw ParseError(std::string(what) + " must be an array of 4 values");
  std::array<K, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = parse_scalar<K>(v[i]);
  return out;
}

template <class K>
json scalar_out(const K& x) {
  if constexpr (ring_traits<K>::exact)
    return scalar_to_string(x);
  else
    return x;
}

template <class K>
json form_out(const Form<K>& f) {
  json out = json::array();
  for (const auto& [m, c] : f.terms()) out.push_back({m.name(), scalar_out(c)});
  return out;
}

int idx_at(const json& ids, std::size_t pos) {
  int v = ids[pos].get<int>();
  if (v < 0 || v > 3) throw ParseError("component index out of range in " + ids.dump());
  return v;
}

template <class K>
void load_curvature(const json& list, Curvature4<K>& R) {
  std::array<char, 256> seen{};
  auto mark = [&seen](int i, int j, int k, int l) -> char& {
    return seen[static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l)];
  };
  for (const auto& entry : list) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() || entry[0].size() != 4)
      throw ParseError("curvature entries must look like [[i,j,k,l], value]");
    int i = idx_at(entry[0], 0), j = idx_at(entry[0], 1), k = idx_at(entry[0], 2),
        l = idx_at(entry[0], 3);
    K v = parse_scalar<K>(entry[1]);
    std::string where = "R[" + std::to_string(i) + std::to_string(j) + std::to_string(k) +
                        std::to_string(l) + "]";
    if (i == j || k == l) {
      if (!(v == ring_traits<K>::zero()))
        throw SymmetryError("skew-symmetry forces " + where + " = 0");
      continue;
    }
    if (mark(i, j, k, l)) {
      if (!(R(i, j, k, l) == v))
        throw SymmetryError(where + " conflicts with an earlier entry of its skew orbit");
      continue;
    }
    R.set_component(i, j, k, l, v);
    mark(i, j, k, l) = mark(j, i, k, l) = mark(i, j, l, k) = mark(j, i, l, k) = 1;
  }
}

template <class K>
void load_torsion(const json& list, Torsion4<K>& T) {
  std::array<char, 64> seen{};
  auto mark = [&seen](int i, int j, int k) -> char& {
    return seen[static_cast<std::size_t>((i * 4 + j) * 4 + k)];
  };
  for (const auto& entry : list) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() || entry[0].size() != 3)
      throw ParseError("torsion entries must look like [[i,j,k], value]");
    int i = idx_at(entry[0], 0), j = idx_at(entry[0], 1), k = idx_at(entry[0], 2);
    K v = parse_scalar<K>(entry[1]);
    std::string where =
        "T[" + std::to_string(i) + std::to_string(j) + std::to_string(k) + "]";
    if (i == j) {
      if (!(v == ring_traits<K>::zero()))
        throw SymmetryError("skew-symmetry forces " + where + " = 0");
      continue;
    }
    if (mark(i, j, k)) {
      if (!(T(i, j, k) == v))
        throw SymmetryError(where + " conflicts with an earlier entry of its skew orbit");
      continue;
    }
    T.set_component(i, j, k, v);
    mark(i, j, k) = mark(j, i, k) = 1;
  }
}

template <class K>
PointModel<K> build_model(const json& spec, double tol) {
  PointModel<K> model;
  bool named = spec.contains("type");
  bool explicit_given = spec.contains("R") || spec.contains("T");
  if (named && explicit_given)
    throw ParseError("give either a named \"type\" or explicit R/T lists, not both");
  if (!named && !explicit_given) throw ParseError("model spec has neither \"type\" nor R/T");

  if (named) {
    std::string type = spec["type"].get<std::string>();
    if (type == "flat") {
      model.label = "flat";
    } else if (type == "constant_curvature") {
      if (!spec.contains("c")) throw ParseError("constant_curvature needs \"c\"");
      model = constant_curvature(parse_scalar<K>(spec["c"]));
    } else if (type == "vectorial") {
      if (!spec.contains("nu")) throw ParseError("vectorial needs \"nu\"");
      model = vectorial_torsion(parse_vec4<K>(spec["nu"], "nu"));
    } else if (type == "skew") {
      if (!spec.contains("x")) throw ParseError("skew needs \"x\"");
      model = skew_torsion(parse_vec4<K>(spec["x"], "x"));
    } else if (type == "product_spheres") {
      if (!spec.contains("a") || !spec.contains("b"))
        throw ParseError("product_spheres needs radii \"a\" and \"b\"");
      try {
        model = product_spheres(parse_scalar<K>(spec["a"]), parse_scalar<K>(spec["b"]));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    } else if (type == "random") {
      model = random_model<K>(spec.value("seed", 1));
    } else {
      throw ParseError("unknown model type \"" + type + "\"");
    }
  } else {
    model.label = "explicit";
    if (spec.contains("R")) load_curvature(spec["R"], model.R);
    if (spec.contains("T")) load_torsion(spec["T"], model.T);
  }

  if (spec.contains("u")) {
    auto u = parse_vec4<K>(spec["u"], "u");
    try {
      model = rotate_frame(model, frame_from_unit_vector(u, tol), tol);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return model;
}

template <class K>
json classify_impl(const json& spec, double tol) {
  PointModel<K> model = build_model<K>(spec, tol);
  if (!model.R.symmetries_hold(tol) || !model.T.symmetries_hold(tol))
    throw SymmetryError("loaded tensors fail the skew-symmetry check");

  auto result = gwistor::classify(model, tol);
  auto cd = curv_derived(model.R);
  auto td = tors_derived(model.T);
  K rt_sq = ring_traits<K>::zero();
  for (int i = 4; i < 7; ++i) rt_sq = rt_sq + cd.R_tilde[i] * cd.R_tilde[i];

  json rep;
  rep["label"] = model.label;
  rep["ring"] = ring_traits<K>::exact ? "rational" : "float";
  rep["tau0"] = scalar_out(result.forms.tau0);
  rep["tau1"] = form_out(result.forms.tau1);
  rep["tau2"] = form_out(result.forms.tau2);
  rep["tau3"] = form_out(result.forms.tau3);
  rep["invariants"] = {{"r_bar", scalar_out(cd.r_bar)},
                       {"l", scalar_out(cd.l)},
                       {"m", scalar_out(td.m)},
                       {"R_tilde_norm_sq", scalar_out(rt_sq)},
                       {"W", {scalar_out(td.W[0]), scalar_out(td.W[1]), scalar_out(td.W[2]),
                              scalar_out(td.W[3])}}};
  rep["class_flags"] = result.forms.class_flags;
  rep["issues"] = result.issues;
  json idents = json::array();
  for (const auto& r : verify_structure_equations(canonical_forms<K>()))
    idents.push_back({{"name", r.name}, {"pass", r.pass}});
  rep["identities"] = idents;
  return rep;
}

/// Ranks of the three 3-form projections over the 35 basis monomials.
std::array<std::size_t, 3> lambda3_ranks() {
  using K = Rational;
  const auto& masks = degree_masks(3);
  std::array<Matrix<K>, 3> stacked;
  for (auto& m : stacked) m = Matrix<K>(masks.size(), masks.size());
  for (std::size_t c = 0; c < masks.size(); ++c) {
    Form<K> basis(3);
    basis.set(MultiIndex(masks[c]), 1);
    auto split = proj_lambda3(basis);
    auto v1 = form_to_vec(split.part1);
    auto v7 = form_to_vec(split.part7);
    auto v27 = form_to_vec(split.part27);
    for (std::size_t r = 0; r < masks.size(); ++r) {
      stacked[0](r, c) = v1[r];
      stacked[1](r, c) = v7[r];
      stacked[2](r, c) = v27[r];
    }
  }
  return {rank(stacked[0]), rank(stacked[1]), rank(stacked[2])};
}

std::array<std::size_t, 2> lambda2_ranks() {
  using K = Rational;
  const auto& masks = degree_masks(2);
  Matrix<K> p7(masks.size(), masks.size()), p14(masks.size(), masks.size());
  for (std::size_t c = 0; c < masks.size(); ++c) {
    Form<K> basis(2);
    basis.set(MultiIndex(masks[c]), 1);
    auto split = proj_lambda2(basis);
    auto v7 = form_to_vec(split.part7);
    auto v14 = form_to_vec(split.part14);
    for (std::size_t r = 0; r < masks.size(); ++r) {
      p7(r, c) = v7[r];
      p14(r, c) = v14[r];
    }
  }
  return {rank(p7), rank(p14)};
}

}  // namespace

json run_classify(const json& spec) {
  if (!spec.is_object()) throw ParseError("model spec must be a JSON object");
  std::string ring = spec.value("ring", "rational");
  if (ring == "rational") {
    double tol = spec.value("tol", 0.0);
    return classify_impl<Rational>(spec, tol);
  }
  if (ring == "float") {
    double tol = spec.value("tol", 1e-9);
    return classify_impl<double>(spec, tol);
  }
  throw ParseError("ring must be \"rational\" or \"float\"");
}

json run_identities(bool corrupt_orientation) {
  using K = Rational;
  int orientation = corrupt_orientation ? -1 : 1;
  json idents = json::array();
  bool all = true;
  auto push = [&idents, &all](const IdentityResult& r) {
    idents.push_back({{"name", r.name}, {"pass", r.pass}});
    all = all && r.pass;
  };
  auto s = canonical_forms<K>();
  for (const auto& r : verify_structure_equations(s, orientation)) push(r);
  push({"canonical and literal structure forms agree",
        s.alpha1 == literal_forms<K>().alpha1 && s.alpha2 == literal_forms<K>().alpha2 &&
            s.alpha3 == literal_forms<K>().alpha3});
  push({"|phi|^2 = 7", norm_sq(s.phi) == ring_traits<K>::from_int(7)});
  for (const auto& r : almost_contact_check<K>()) push(r);
  for (const auto& r : auxiliary_decompositions<K>()) push(r);

  auto [m2, m1] = lambda2_multiplicities<K>();
  auto r2 = lambda2_ranks();
  auto r3 = lambda3_ranks();
  push({"2-form operator eigenvalue -2 has multiplicity 7", m2 == 7});
  push({"2-form operator eigenvalue +1 has multiplicity 14", m1 == 14});
  push({"2-form projector ranks are 7 and 14", r2[0] == 7 && r2[1] == 14});
  push({"3-form projector ranks are 1, 7 and 27", r3[0] == 1 && r3[1] == 7 && r3[2] == 27});

  json out;
  out["identities"] = idents;
  out["eigen_multiplicities"] = {{"minus2", m2}, {"plus1", m1}};
  out["lambda2_ranks"] = {r2[0], r2[1]};
  out["lambda3_ranks"] = {r3[0], r3[1], r3[2]};
  out["all_pass"] = all;
  return out;
}

json run_torsion_space() {
  using K = Rational;
  json out;
  out["component_dims"] = {{"vectorial", cartan_part_basis<K>(CartanPart::vectorial).size()},
                           {"skew", cartan_part_basis<K>(CartanPart::skew).size()},
                           {"a_plus", cartan_part_basis<K>(CartanPart::a_plus).size()},
                           {"a_minus", cartan_part_basis<K>(CartanPart::a_minus).size()}};
  auto dump_space = [](const SolutionSpace<K>& space) {
    json basis = json::array();
    for (const auto& T : space.basis) {
      json coords = json::array();
      for (const auto& c : torsion_to_coords(T)) coords.push_back(scalar_to_string(c));
      basis.push_back(coords);
    }
    return json{{"dim", space.dim}, {"basis", basis}};
  };
  auto s1 = solution_space<K>(TorsionCondition::tau1_tors_zero);
  auto s2 = solution_space<K>(TorsionCondition::tau2_tors_zero);
  auto sz = solution_space<K>(TorsionCondition::anti_Z);
  out["solution_spaces"] = {{"tau1_tors_zero", dump_space(s1)},
                            {"tau2_tors_zero", dump_space(s2)},
                            {"anti_Z", dump_space(sz)}};
  out["coordinate_order"] = "pairs 01,02,03,12,13,23 times k=0..3";

  // which C-family convention is slot-(anti-)selfdual under vol = e^{0123}
  std::array<K, 4> nu = {K(1), K(2), K(3), K(4)};
  Torsion4<K> v = vectorial_torsion_tensor(nu);
  Torsion4<K> sk = skew_torsion_tensor(nu);
  out["c_family"] = {
      {"coeff2_plus_slot_selfdual", slot_selfdual(c_space_element(nu, +1), +1)},
      {"coeff2_minus_slot_antiselfdual", slot_selfdual(c_space_element(nu, -1), -1)},
      {"coeff1_plus_slot_selfdual", slot_selfdual(v + sk, +1)},
      {"coeff1_minus_slot_antiselfdual", slot_selfdual(v - sk, -1)},
      {"note",
       "the nu^1 - 2 nu#-|vol family solves the trace condition and spans the "
       "anti-Z space together with the selfdual 8-dim component; only the "
       "coefficient-1 variant is slot-(anti-)selfdual"}};
  out["dims_ok"] = s1.dim == 20 && s2.dim == 16 && sz.dim == 12;
  return out;
}

json run_flat_check(int points, double step, double tol, std::uint64_t seed) {
  if (points <= 0 || step <= 0 || tol <= 0)
    throw ParseError("flat-check needs positive points, step and tolerance");
  json out;
  json per_point = json::array();
  bool all = true;
  double worst = 0, ratio_lo = 1e300, ratio_hi = 0;
  for (int t = 0; t < points; ++t) {
    auto p = flat::random_chart_point(seed + static_cast<std::uint64_t>(t));
    auto checks = flat::verify_flat_equations(p, step, tol);
    auto halved = flat::verify_flat_equations(p, step / 2.0, tol);
    json jc = json::array();
    for (std::size_t i = 0; i < checks.size(); ++i) {
      all = all && checks[i].pass;
      worst = std::max(worst, checks[i].residual);
      if (checks[i].residual > 1e-10 && halved[i].residual > 0) {
        double r = checks[i].residual / halved[i].residual;
        ratio_lo = std::min(ratio_lo, r);
        ratio_hi = std::max(ratio_hi, r);
      }
      jc.push_back({{"name", checks[i].name},
                    {"residual", checks[i].residual},
                    {"pass", checks[i].pass}});
    }
    per_point.push_back(jc);
  }
  // frame/coordinate route agreement and coframe orthonormality
  double route_dev = 0, gram_dev = 0;
  for (int t = 0; t < points; ++t) {
    auto p = flat::random_chart_point(seed + 10000 + static_cast<std::uint64_t>(t));
    auto fr = flat::eval_frame_route(p);
    auto co = flat::eval_coordinate_route(p);
    route_dev = std::max(route_dev, (fr.alpha - co.alpha).max_abs());
    route_dev = std::max(route_dev, (fr.mu_beta - co.mu_beta).max_abs());
    route_dev = std::max(route_dev, (fr.alpha1 - co.alpha1).max_abs());
    route_dev = std::max(route_dev, (fr.alpha2 - co.alpha2).max_abs());
    auto g = flat::coframe_gram(p);
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        gram_dev = std::max(gram_dev, std::abs(g[i][j] - (i == j ? 1.0 : 0.0)));
  }
  out["points"] = per_point;
  out["worst_residual"] = worst;
  out["convergence_ratio"] = {{"min", ratio_lo}, {"max", ratio_hi}};
  out["route_agreement_dev"] = route_dev;
  out["gram_identity_dev"] = gram_dev;
  out["all_pass"] = all && route_dev < 1e-9 && gram_dev < 1e-9;
  return out;
}

}  // namespace gwistor::report
