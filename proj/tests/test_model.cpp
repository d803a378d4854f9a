#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gwistor/model.hpp"

using namespace gwistor;
using K = Rational;

namespace {

Mat4<K> random_so3_fixing_e0(std::uint64_t seed) {
  // rational rotation from a unit quaternion acting on the e1..e3 block
  auto q = random_unit_vector<K>(seed);
  Mat4<K> g{};
  g[0][0] = 1;
  // x -> q x q^-1 on pure imaginary quaternions
  K a = q[0], b = q[1], c = q[2], d = q[3];
  g[1][1] = a * a + b * b - c * c - d * d;
  g[1][2] = K(2) * (b * c - a * d);
  g[1][3] = K(2) * (b * d + a * c);
  g[2][1] = K(2) * (b * c + a * d);
  g[2][2] = a * a - b * b + c * c - d * d;
  g[2][3] = K(2) * (c * d - a * b);
  g[3][1] = K(2) * (b * d - a * c);
  g[3][2] = K(2) * (c * d + a * b);
  g[3][3] = a * a - b * b - c * c + d * d;
  return g;
}

}  // namespace

TEST_CASE("constructors satisfy the symmetry invariants") {
  CHECK(constant_curvature<K>(3).R.symmetries_hold());
  CHECK(vectorial_torsion<K>({1, 2, 3, 4}).T.symmetries_hold());
  CHECK(skew_torsion<K>({1, -2, 0, 5}).T.symmetries_hold());
  auto ps = product_spheres<K>(1, 2);
  CHECK(ps.R.symmetries_hold());
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto m = random_model<K>(seed);
    CHECK(m.R.symmetries_hold());
    CHECK(m.T.symmetries_hold());
  }
  CHECK_THROWS_AS(product_spheres<K>(0, 1), std::invalid_argument);
}

TEST_CASE("ricci of named models") {
  auto r5 = ricci(constant_curvature<K>(5).R);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(r5[i][j] == (i == j ? K(15) : K(0)));
  auto r0 = ricci(Curvature4<K>{});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(r0[i][j] == K(0));
  auto rp = ricci(product_spheres<K>(1, 2).R);
  std::array<K, 4> expect = {K(1), K(1), ring_traits<K>::from_fraction(1, 4),
                             ring_traits<K>::from_fraction(1, 4)};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(rp[i][j] == (i == j ? expect[i] : K(0)));
}

TEST_CASE("curvature derived quantities") {
  auto cd = curv_derived(constant_curvature<K>(7).R);
  CHECK(cd.r_bar == K(21));
  CHECK(cd.l == K(0));
  for (int i = 4; i < 7; ++i) CHECK(cd.R_tilde[i] == K(0));

  Curvature4<K> single;
  single.set_component(1, 2, 3, 0, 1);
  auto sd = curv_derived(single);
  CHECK(sd.l == K(1));
  CHECK(sd.r_bar == K(0));

  // rho carries only vertical legs and its components are the mixed Ricci
  // entries r(e_i, e0), for any curvature
  auto m = random_model<K>(11);
  auto rd = curv_derived(m.R);
  auto ric = ricci(m.R);
  for (int i = 1; i <= 3; ++i)
    CHECK(rd.rho.coeff(MultiIndex(std::uint8_t(1u << (i + 3)))) == ric[i][0]);
  CHECK(rd.rho.coeff(MultiIndex(std::uint8_t{1})) == K(0));

  // for a curvature with the pair symmetry (here a Levi-Civita one, rotated
  // to a generic adapted frame) R_tilde equals the mixed Ricci entries
  auto lc = rotate_frame(product_spheres<K>(1, 2),
                         frame_from_unit_vector(random_unit_vector<K>(12)));
  auto ld = curv_derived(lc.R);
  auto lric = ricci(lc.R);
  for (int i = 1; i <= 3; ++i) CHECK(ld.R_tilde[i + 3] == lric[i][0]);
}

TEST_CASE("torsion derived quantities") {
  std::array<K, 4> nu = {2, -1, 3, 5};
  auto td = tors_derived(vectorial_torsion<K>(nu).T);
  CHECK(td.m == K(3) * nu[0]);
  for (int i = 0; i < 4; ++i) CHECK(td.W[i] == K(6) * nu[i]);
  auto ts = tors_derived(skew_torsion<K>({1, 2, 3, 4}).T);
  CHECK(ts.m == K(0));
  CHECK(tors_derived(Torsion4<K>{}).W == std::array<K, 4>{K(0), K(0), K(0), K(0)});
}

TEST_CASE("W is the sum of three Z values") {
  auto m = random_model<K>(21);
  auto td = tors_derived(m.T);
  for (int i = 0; i < 4; ++i) {
    K sum = ring_traits<K>::zero();
    for (const auto& ord : direct_orderings())
      if (ord[0] == i) sum = sum + z_coeff(m.T, ord[0], ord[1], ord[2]);
    CHECK(td.W[i] == sum);
  }
  CHECK(direct_orderings().size() == 12);
}

TEST_CASE("named torsion component patterns") {
  auto v = vectorial_torsion<K>({0, 1, 0, 0}).T;  // nu = e1
  CHECK(v(1, 2, 2) == K(1));
  CHECK(v(2, 1, 2) == K(-1));
  CHECK(v(1, 0, 0) == K(1));
  CHECK(v(1, 2, 3) == K(0));
  auto s = skew_torsion<K>({1, 0, 0, 0}).T;  // X = e0, contraction of e^{0123}
  CHECK(s(1, 2, 3) == K(1));
  CHECK(s(2, 1, 3) == K(-1));
  CHECK(s(0, 1, 2) == K(0));
}

TEST_CASE("frame rotation") {
  auto m = random_model<K>(31);
  Mat4<K> id{};
  for (int i = 0; i < 4; ++i) id[i][i] = 1;
  CHECK(is_special_orthogonal(id));
  auto same = rotate_frame(m, id);
  CHECK(same.R.a == m.R.a);
  CHECK(same.T.a == m.T.a);

  for (std::uint64_t seed = 41; seed < 44; ++seed) {
    auto g = random_so3_fixing_e0(seed);
    REQUIRE(is_special_orthogonal(g));
    auto rotated = rotate_frame(m, g);
    auto a = curv_derived(m.R), b = curv_derived(rotated.R);
    CHECK(a.r_bar == b.r_bar);
    CHECK(a.l == b.l);
    CHECK(tors_derived(m.T).m == tors_derived(rotated.T).m);
    K na = ring_traits<K>::zero(), nb = ring_traits<K>::zero();
    for (int i = 4; i < 7; ++i) {
      na = na + a.R_tilde[i] * a.R_tilde[i];
      nb = nb + b.R_tilde[i] * b.R_tilde[i];
    }
    CHECK(na == nb);
  }

  Mat4<K> bad{};
  bad[0][0] = 2;
  bad[1][1] = bad[2][2] = bad[3][3] = 1;
  CHECK_THROWS_AS(rotate_frame(m, bad), std::invalid_argument);
}

TEST_CASE("unit vector adaptation") {
  for (std::uint64_t seed = 51; seed < 56; ++seed) {
    auto u = random_unit_vector<K>(seed);
    K n = ring_traits<K>::zero();
    for (const auto& ui : u) n = n + ui * ui;
    CHECK(n == K(1));
    auto g = frame_from_unit_vector(u);
    CHECK(is_special_orthogonal(g));
    // first column is u itself
    for (int i = 0; i < 4; ++i) CHECK(g[i][0] == u[i]);
  }
  CHECK_THROWS_AS(frame_from_unit_vector<K>({1, 1, 0, 0}), std::invalid_argument);
}

TEST_CASE("random models are reproducible") {
  auto a = random_model<K>(7), b = random_model<K>(7), c = random_model<K>(8);
  CHECK(a.R.a == b.R.a);
  CHECK(a.T.a == b.T.a);
  CHECK(a.R.a != c.R.a);
}
