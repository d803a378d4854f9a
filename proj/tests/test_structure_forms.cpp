#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gwistor/structure_forms.hpp"

using namespace gwistor;
using K = Rational;
using F = Form<K>;

TEST_CASE("constructive and literal structure forms agree") {
  auto c = canonical_forms<K>();
  auto l = literal_forms<K>();
  CHECK(c.alpha1 == l.alpha1);
  CHECK(c.alpha2 == l.alpha2);
  CHECK(c.alpha3 == l.alpha3);
  CHECK(c.phi == l.phi);
  CHECK(c.star_phi == l.star_phi);
}

TEST_CASE("explicit coefficient lists") {
  auto s = canonical_forms<K>();
  CHECK(s.mu == F::monomial({0}));
  CHECK(s.alpha == F::monomial({4, 5, 6}));
  CHECK(s.beta == F::monomial({1, 4}) + F::monomial({2, 5}) + F::monomial({3, 6}));
  CHECK(s.alpha1 == F::monomial({1, 5, 6}) + F::monomial({2, 6, 4}) + F::monomial({3, 4, 5}));
  CHECK(s.alpha2 == F::monomial({1, 2, 6}) + F::monomial({2, 3, 4}) + F::monomial({3, 1, 5}));
  CHECK(s.alpha3 == F::monomial({1, 2, 3}));
  CHECK(s.phi == s.alpha + wedge(s.mu, s.beta) - s.alpha2);
  CHECK(s.star_phi == hodge7(s.phi));
}

TEST_CASE("phi as omega-hat blocks over the vertical legs") {
  auto s = canonical_forms<K>();
  F rebuilt = s.alpha;
  for (int i = 0; i < 3; ++i) rebuilt = rebuilt + wedge(s.omega_hat[i], F::monomial({4 + i}));
  CHECK(rebuilt == s.phi);
}

TEST_CASE("all structure equations hold exactly") {
  for (const auto& r : verify_structure_equations(canonical_forms<K>())) {
    INFO(r.name);
    CHECK(r.pass);
  }
  CHECK(verify_structure_equations(canonical_forms<K>()).size() == 21);
}

TEST_CASE("orientation flip is detected") {
  auto rep = verify_structure_equations(canonical_forms<K>(), -1);
  bool some_fail = false;
  for (const auto& r : rep) some_fail = some_fail || !r.pass;
  CHECK(some_fail);
}

TEST_CASE("norm and volume pairings") {
  auto s = canonical_forms<K>();
  CHECK(norm_sq(s.phi) == K(7));
  CHECK(wedge(s.phi, s.star_phi) == K(7) * F::monomial({0, 1, 2, 3, 4, 5, 6}));
}

TEST_CASE("almost contact structure") {
  for (const auto& r : almost_contact_check<K>()) {
    INFO(r.name);
    CHECK(r.pass);
  }
  auto ac = almost_contact<K>();
  // eta(xi) = 1 and varphi(xi) = 0
  K pairing = ring_traits<K>::zero();
  for (int i = 0; i < kDim; ++i) pairing = pairing + ac.xi.c[i] * sharp(ac.eta).c[i];
  CHECK(pairing == K(1));
  bool xi_killed = true;
  for (int i = 0; i < kDim; ++i) {
    K img = ring_traits<K>::zero();
    for (int j = 0; j < kDim; ++j) img = img + ac.varphi.m[i][j] * ac.xi.c[j];
    xi_killed = xi_killed && img == ring_traits<K>::zero();
  }
  CHECK(xi_killed);
}
