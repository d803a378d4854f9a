#pragma once

#include <cstddef>
#include <vector>

#include "gwistor/g2.hpp"
#include "gwistor/linalg.hpp"
#include "gwistor/model.hpp"

namespace gwistor {

// ---------------------------------------------------------------------------
// Coordinates on the 24-dimensional torsion space: index = pair(i<j) * 4 + k
// with pairs ordered 01, 02, 03, 12, 13, 23.

inline constexpr int kTorsionDim = 24;

inline const std::array<std::array<int, 2>, 6>& torsion_pairs() {
  static const std::array<std::array<int, 2>, 6> pairs = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  return pairs;
}

template <class K>
std::vector<K> torsion_to_coords(const Torsion4<K>& T) {
  std::vector<K> v(kTorsionDim);
  for (int p = 0; p < 6; ++p)
    for (int k = 0; k < 4; ++k)
      v[p * 4 + k] = T(torsion_pairs()[p][0], torsion_pairs()[p][1], k);
  return v;
}

template <class K>
Torsion4<K> coords_to_torsion(const std::vector<K>& v) {
  Torsion4<K> T;
  for (int p = 0; p < 6; ++p)
    for (int k = 0; k < 4; ++k)
      T.set_component(torsion_pairs()[p][0], torsion_pairs()[p][1], k, v[p * 4 + k]);
  return T;
}

/// Applies the horizontal Hodge star in the 2-form slot (indices ij), k fixed.
template <class K>
Torsion4<K> slot_dual(const Torsion4<K>& T) {
  Torsion4<K> out;
  for (int k = 0; k < 4; ++k) {
    Form<K> slot(2);
    for (int p = 0; p < 6; ++p)
      slot.set(MultiIndex(static_cast<std::uint8_t>((1u << torsion_pairs()[p][0]) |
                                                    (1u << torsion_pairs()[p][1]))),
               T(torsion_pairs()[p][0], torsion_pairs()[p][1], k));
    Form<K> dual = hodge4_horizontal(slot);
    for (int p = 0; p < 6; ++p) {
      int i = torsion_pairs()[p][0], j = torsion_pairs()[p][1];
      out.set_component(i, j, k,
                        dual.coeff(MultiIndex(static_cast<std::uint8_t>((1u << i) | (1u << j)))));
    }
  }
  return out;
}

/// True iff the 2-form slot of T is (anti-)self-dual for sign = +1 (-1).
template <class K>
bool slot_selfdual(const Torsion4<K>& T, int sign) {
  Torsion4<K> d = slot_dual(T);
  return sign >= 0 ? d == T : d == ring_traits<K>::from_int(-1) * T;
}

// ---------------------------------------------------------------------------
// Cartan decomposition T = V(nu) + S(X) + A_+ + A_-

template <class K>
struct TorsionDecomposition {
  std::array<K, 4> nu{};
  std::array<K, 4> skew{};  // X with the totally skew part equal to X -| vol
  Torsion4<K> A_plus, A_minus;
};

template <class K>
TorsionDecomposition<K> cartan_decompose(const Torsion4<K>& T) {
  TorsionDecomposition<K> d;
  const K third = ring_traits<K>::from_fraction(1, 3);
  const K sixth = ring_traits<K>::from_fraction(1, 6);
  const K half = ring_traits<K>::from_fraction(1, 2);

  d.nu.fill(ring_traits<K>::zero());
  d.skew.fill(ring_traits<K>::zero());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d.nu[i] = d.nu[i] + third * T(i, j, j);

  // totally skew part is 1/3 of the cyclic sum; X_b = 1/6 sum eps_bijk (T3)_ijk
  Torsion4<K> T3;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        T3(i, j, k) = third * (T(i, j, k) + T(j, k, i) + T(k, i, j));
  for (int b = 0; b < 4; ++b) {
    K s = ring_traits<K>::zero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          int e = epsilon4(b, i, j, k);
          if (e == 1) s = s + T3(i, j, k);
          if (e == -1) s = s - T3(i, j, k);
        }
    d.skew[b] = sixth * s;
  }

  Torsion4<K> A = T - vectorial_torsion_tensor(d.nu) - skew_torsion_tensor(d.skew);
  // split by (1 +- ~*)/2 on the 2-form slot
  Torsion4<K> dual = slot_dual(A);
  d.A_plus = half * (A + dual);
  d.A_minus = half * (A - dual);
  return d;
}

template <class K>
Torsion4<K> recompose(const TorsionDecomposition<K>& d) {
  return vectorial_torsion_tensor(d.nu) + skew_torsion_tensor(d.skew) + d.A_plus + d.A_minus;
}

/// The one-parameter-per-nu families C_+- = { nu ^ 1 +- 2 nu# -| vol }.
/// The minus family is exactly the vectorial-plus-skew half of the anti-Z
/// torsions (the trace condition W = 6nu + 3X forces X = -2nu).
template <class K>
Torsion4<K> c_space_element(const std::array<K, 4>& nu, int sign) {
  const K two = ring_traits<K>::from_int(sign >= 0 ? 2 : -2);
  return vectorial_torsion_tensor(nu) + two * skew_torsion_tensor(nu);
}

// ---------------------------------------------------------------------------
// Solution spaces as exact null spaces over the 24 coordinates

enum class TorsionCondition { tau1_tors_zero, tau2_tors_zero, anti_Z };

template <class K>
struct SolutionSpace {
  std::vector<Torsion4<K>> basis;
  std::size_t dim = 0;
};

template <class K>
Matrix<K> condition_matrix(TorsionCondition cond) {
  std::vector<std::vector<K>> rows;
  for (int c = 0; c < kTorsionDim; ++c) {
    std::vector<K> unit(kTorsionDim, ring_traits<K>::zero());
    unit[c] = ring_traits<K>::from_int(1);
    Torsion4<K> T = coords_to_torsion(unit);
    std::vector<K> col;
    switch (cond) {
      case TorsionCondition::tau1_tors_zero: {
        auto td = tors_derived(T);
        col.assign(td.W.begin(), td.W.end());
        break;
      }
      case TorsionCondition::tau2_tors_zero: {
        auto [t1, t2] = tau_tors_closed(T);
        col = form_to_vec(t2);
        break;
      }
      case TorsionCondition::anti_Z: {
        for (const auto& o : direct_orderings()) col.push_back(z_coeff(T, o[0], o[1], o[2]));
        break;
      }
    }
    if (rows.empty()) rows.resize(col.size(), std::vector<K>(kTorsionDim));
    for (std::size_t r = 0; r < col.size(); ++r) rows[r][c] = col[r];
  }
  Matrix<K> m(rows.size(), kTorsionDim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < kTorsionDim; ++c) m(r, c) = rows[r][c];
  return m;
}

template <class K>
SolutionSpace<K> solution_space(TorsionCondition cond) {
  auto null = null_space(condition_matrix<K>(cond));
  SolutionSpace<K> out;
  out.dim = null.size();
  for (auto& v : null) out.basis.push_back(coords_to_torsion(v));
  return out;
}

// ---------------------------------------------------------------------------
// Component subspaces and their projectors

enum class CartanPart { vectorial, skew, a_plus, a_minus };

/// 24x24 matrix of the projector onto one Cartan component.
template <class K>
Matrix<K> cartan_projector(CartanPart part) {
  Matrix<K> m(kTorsionDim, kTorsionDim);
  for (int c = 0; c < kTorsionDim; ++c) {
    std::vector<K> unit(kTorsionDim, ring_traits<K>::zero());
    unit[c] = ring_traits<K>::from_int(1);
    auto d = cartan_decompose(coords_to_torsion(unit));
    Torsion4<K> image;
    switch (part) {
      case CartanPart::vectorial: image = vectorial_torsion_tensor(d.nu); break;
      case CartanPart::skew: image = skew_torsion_tensor(d.skew); break;
      case CartanPart::a_plus: image = d.A_plus; break;
      case CartanPart::a_minus: image = d.A_minus; break;
    }
    auto col = torsion_to_coords(image);
    for (int r = 0; r < kTorsionDim; ++r) m(r, c) = col[r];
  }
  return m;
}

/// Extracts a maximal independent subset of the given coordinate vectors.
template <class K>
std::vector<std::vector<K>> independent_subset(const std::vector<std::vector<K>>& vecs) {
  std::vector<std::vector<K>> kept;
  for (const auto& v : vecs) {
    Matrix<K> m(kept.size() + 1, kTorsionDim);
    for (std::size_t r = 0; r < kept.size(); ++r)
      for (int c = 0; c < kTorsionDim; ++c) m(r, c) = kept[r][c];
    for (int c = 0; c < kTorsionDim; ++c) m(kept.size(), c) = v[c];
    if (rank(m) == kept.size() + 1) kept.push_back(v);
  }
  return kept;
}

/// Basis of one Cartan component, as the independent projector images of the
/// 24 coordinate tensors.
template <class K>
std::vector<Torsion4<K>> cartan_part_basis(CartanPart part) {
  Matrix<K> p = cartan_projector<K>(part);
  std::vector<std::vector<K>> images;
  for (int c = 0; c < kTorsionDim; ++c) {
    std::vector<K> col(kTorsionDim);
    for (int r = 0; r < kTorsionDim; ++r) col[r] = p(r, c);
    images.push_back(std::move(col));
  }
  std::vector<Torsion4<K>> out;
  for (auto& v : independent_subset(images)) out.push_back(coords_to_torsion(v));
  return out;
}

// ---------------------------------------------------------------------------
// SO(4) rotation catalog from rational unit quaternions

/// Rotation of R^4 = H by x -> p x conj(q) for unit quaternions p, q; every
/// element of SO(4) arises this way. Quaternions as (w, x, y, z) = w + xi + yj + zk,
/// identified with frame coordinates (e_0, e_1, e_2, e_3).
template <class K>
Mat4<K> so4_from_quaternions(const std::array<K, 4>& p, const std::array<K, 4>& q) {
  auto qmul = [](const std::array<K, 4>& a, const std::array<K, 4>& b) {
    return std::array<K, 4>{
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
  };
  std::array<K, 4> qc = {q[0], -q[1], -q[2], -q[3]};
  Mat4<K> g{};
  for (int j = 0; j < 4; ++j) {
    std::array<K, 4> basis{};
    for (auto& v : basis) v = ring_traits<K>::zero();
    basis[j] = ring_traits<K>::from_int(1);
    auto img = qmul(qmul(p, basis), qc);
    for (int i = 0; i < 4; ++i) g[i][j] = img[i];
  }
  return g;
}

/// SO(3) rotation fixing e_0: conjugation x -> p x conj(p).
template <class K>
Mat4<K> so3_fixing_e0(const std::array<K, 4>& p) {
  return so4_from_quaternions(p, p);
}

template <class K>
std::array<K, 4> random_unit_quaternion(std::uint64_t seed) {
  return random_unit_vector<K>(seed);
}

}  // namespace gwistor
