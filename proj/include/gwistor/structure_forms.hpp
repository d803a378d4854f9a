#pragma once

#include <string>
#include <vector>

#include "gwistor/form.hpp"

namespace gwistor {

/// The canonical bundle forms of gwistor space in the adapted frame.
template <class K>
struct StructureForms {
  Form<K> mu;                       // e^0
  Form<K> alpha, alpha1, alpha2, alpha3;
  Form<K> beta;                     // e^{14}+e^{25}+e^{36}
  Form<K> vol;                      // horizontal volume e^{0123}
  Form<K> phi, star_phi;
  std::array<Form<K>, 3> omega_hat; // anti-selfdual 2-forms pairing with e^4,e^5,e^6
};

/// Mirror map on the 7-dim model: e_i -> e_{i+3} for i=1..3, zero otherwise.
/// (The ambient theta e_0 = U never survives an alpha-contraction, so the
/// truncation is exact for alpha_1, alpha_2, alpha_3.)
template <class K>
Endo7<K> theta() {
  Endo7<K> t;
  for (int i = 1; i <= 3; ++i) t(i + 3, i) = ring_traits<K>::from_int(1);
  return t;
}

/// Builds the structure forms constructively: alpha = e^{456}, then the
/// alpha_i via the contraction operator, phi and *phi from the definitions.
template <class K>
StructureForms<K> canonical_forms() {
  using F = Form<K>;
  const K one = ring_traits<K>::from_int(1);
  const K half = ring_traits<K>::from_fraction(1, 2);
  const K sixth = ring_traits<K>::from_fraction(1, 6);

  StructureForms<K> s;
  s.mu = F::monomial({0});
  s.alpha = F::monomial({4, 5, 6});
  s.beta = F::monomial({1, 4}) + F::monomial({2, 5}) + F::monomial({3, 6});
  s.vol = F::monomial({0, 1, 2, 3});

  Endo7<K> th = theta<K>();
  Endo7<K> id = Endo7<K>::identity();
  s.alpha1 = half * contract(s.alpha, {th, id, id});
  s.alpha2 = half * contract(s.alpha, {th, th, id});
  s.alpha3 = sixth * contract(s.alpha, {th, th, th});

  s.phi = s.alpha + wedge(s.mu, s.beta) - s.alpha2;
  s.star_phi = s.vol - half * wedge(s.beta, s.beta) - wedge(s.mu, s.alpha1);

  s.omega_hat[0] = F::monomial({0, 1}) - F::monomial({2, 3});
  s.omega_hat[1] = F::monomial({0, 2}) + F::monomial({1, 3});
  s.omega_hat[2] = F::monomial({0, 3}) - F::monomial({1, 2});
  (void)one;
  return s;
}

/// The same forms from the hard-coded coefficient lists; kept permanently as
/// the literal route so agreement with canonical_forms() guards against
/// sign and orientation drift.
template <class K>
StructureForms<K> literal_forms() {
  using F = Form<K>;
  const K half = ring_traits<K>::from_fraction(1, 2);
  StructureForms<K> s;
  s.mu = F::monomial({0});
  s.alpha = F::monomial({4, 5, 6});
  s.beta = F::monomial({1, 4}) + F::monomial({2, 5}) + F::monomial({3, 6});
  s.vol = F::monomial({0, 1, 2, 3});
  s.alpha1 = F::monomial({1, 5, 6}) + F::monomial({2, 6, 4}) + F::monomial({3, 4, 5});
  s.alpha2 = F::monomial({1, 2, 6}) + F::monomial({2, 3, 4}) + F::monomial({3, 1, 5});
  s.alpha3 = F::monomial({1, 2, 3});
  s.phi = s.alpha + wedge(s.mu, s.beta) - s.alpha2;
  s.star_phi = s.vol - half * wedge(s.beta, s.beta) - wedge(s.mu, s.alpha1);
  s.omega_hat[0] = F::monomial({0, 1}) - F::monomial({2, 3});
  s.omega_hat[1] = F::monomial({0, 2}) + F::monomial({1, 3});
  s.omega_hat[2] = F::monomial({0, 3}) - F::monomial({1, 2});
  return s;
}

struct IdentityResult {
  std::string name;
  bool pass;
};

/// The 21 first-structure-equation identities, checked exactly.
/// `orientation` = -1 flips the Hodge star (negative-control test mode).
template <class K>
std::vector<IdentityResult> verify_structure_equations(const StructureForms<K>& s,
                                                       int orientation = 1) {
  using F = Form<K>;
  auto star = [orientation](const F& f) {
    F h = hodge7(f);
    return orientation >= 0 ? h : -h;
  };
  const K half = ring_traits<K>::from_fraction(1, 2);
  const K two = ring_traits<K>::from_int(2);
  const K three = ring_traits<K>::from_int(3);
  const K six = ring_traits<K>::from_int(6);

  F full_vol = F::monomial({0, 1, 2, 3, 4, 5, 6});
  F beta2 = wedge(s.beta, s.beta);
  F beta3 = wedge(beta2, s.beta);
  const std::array<const F*, 3> alphas = {&s.alpha, &s.alpha1, &s.alpha2};

  std::vector<IdentityResult> out;
  auto check = [&out](const std::string& name, bool ok) { out.push_back({name, ok}); };

  check("*alpha = vol", star(s.alpha) == s.vol);
  check("*alpha1 = -mu^alpha2", star(s.alpha1) == -wedge(s.mu, s.alpha2));
  check("*alpha2 = mu^alpha1", star(s.alpha2) == wedge(s.mu, s.alpha1));
  check("*beta = -1/2 mu^beta^2", star(s.beta) == -(half * wedge(s.mu, beta2)));
  check("*beta^2 = -2 mu^beta", star(beta2) == -(two * wedge(s.mu, s.beta)));
  check("beta^3^mu = -6 Vol", wedge(beta3, s.mu) == -(six * full_vol));
  check("alpha1^alpha2 = 3*mu = -1/2 beta^3",
        wedge(s.alpha1, s.alpha2) == three * star(s.mu) &&
            wedge(s.alpha1, s.alpha2) == -(half * beta3));
  for (int i = 0; i < 3; ++i)
    check("beta^alpha" + std::to_string(i) + " = 0", wedge(s.beta, *alphas[i]).is_zero());
  for (int i = 0; i < 3; ++i)
    check("beta^*alpha" + std::to_string(i) + " = 0", wedge(s.beta, star(*alphas[i])).is_zero());
  for (int i = 0; i < 3; ++i)
    check("alpha^alpha" + std::to_string(i) + " = 0", wedge(s.alpha, *alphas[i]).is_zero());
  check("alpha^phi = 0", wedge(s.alpha, s.phi).is_zero());
  check("alpha2^phi = 0", wedge(s.alpha2, s.phi).is_zero());
  check("*alpha1^phi = 0", wedge(star(s.alpha1), s.phi).is_zero());
  check("*alpha^phi = Vol", wedge(star(s.alpha), s.phi) == full_vol);
  check("alpha^*phi = Vol", wedge(s.alpha, star(s.phi)) == full_vol);
  return out;
}

/// The almost-contact structure underlying the model.
template <class K>
struct AlmostContact {
  Vector7<K> xi;
  Form<K> eta;
  Endo7<K> varphi;
};

template <class K>
AlmostContact<K> almost_contact() {
  AlmostContact<K> ac;
  ac.xi = ring_traits<K>::from_int(2) * Vector7<K>::basis(0);
  ac.eta = ring_traits<K>::from_fraction(1, 2) * Form<K>::monomial({0});
  for (int i = 1; i <= 3; ++i) {
    ac.varphi(i + 3, i) = ring_traits<K>::from_int(1);
    ac.varphi(i, i + 3) = ring_traits<K>::from_int(-1);
  }
  return ac;
}

/// Checks eta(xi)=1, varphi(xi)=0 and varphi^2 = -1 + eta (x) xi on the basis.
template <class K>
std::vector<IdentityResult> almost_contact_check() {
  auto ac = almost_contact<K>();
  std::vector<IdentityResult> out;
  K eta_xi = ring_traits<K>::zero();
  for (int i = 0; i < kDim; ++i)
    eta_xi = eta_xi + ac.eta.coeff(MultiIndex(static_cast<std::uint8_t>(1u << i))) * ac.xi[i];
  out.push_back({"eta(xi) = 1", eta_xi == ring_traits<K>::from_int(1)});

  Vector7<K> vxi = ac.varphi.apply(ac.xi);
  bool xi_killed = true;
  for (int i = 0; i < kDim; ++i) xi_killed = xi_killed && vxi[i] == ring_traits<K>::zero();
  out.push_back({"varphi(xi) = 0", xi_killed});

  Endo7<K> sq = ac.varphi.compose(ac.varphi);
  bool ok = true;
  for (int j = 0; j < kDim; ++j) {
    Vector7<K> lhs = sq.apply(Vector7<K>::basis(j));
    K eta_ej = ac.eta.coeff(MultiIndex(static_cast<std::uint8_t>(1u << j)));
    Vector7<K> rhs = Vector7<K>::basis(j);
    for (int i = 0; i < kDim; ++i) rhs[i] = -rhs[i] + eta_ej * ac.xi[i];
    for (int i = 0; i < kDim; ++i) ok = ok && lhs[i] == rhs[i];
  }
  out.push_back({"varphi^2 = -1 + eta (x) xi", ok});
  return out;
}

}  // namespace gwistor
