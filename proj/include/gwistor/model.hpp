#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwistor/form.hpp"

namespace gwistor {

/// Pointwise curvature components R_ijkl = <R(e_i,e_j)e_k, e_l> in the
/// adapted frame (e_0 = u). Skew in ij and in kl; no pair symmetry or
/// Bianchi identity is assumed since the connection may carry torsion.
template <class K>
struct Curvature4 {
  std::array<K, 256> a{};

  Curvature4() { a.fill(ring_traits<K>::zero()); }
  K& operator()(int i, int j, int k, int l) { return a[((i * 4 + j) * 4 + k) * 4 + l]; }
  const K& operator()(int i, int j, int k, int l) const {
    return a[((i * 4 + j) * 4 + k) * 4 + l];
  }

  /// Sets the full skew orbit of one component.
  void set_component(int i, int j, int k, int l, const K& v) {
    (*this)(i, j, k, l) = v;
    (*this)(j, i, k, l) = -v;
    (*this)(i, j, l, k) = -v;
    (*this)(j, i, l, k) = v;
  }

  bool symmetries_hold(double tol = 0.0) const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double d1 = ring_traits<K>::abs_double((*this)(i, j, k, l) + (*this)(j, i, k, l));
            double d2 = ring_traits<K>::abs_double((*this)(i, j, k, l) + (*this)(i, j, l, k));
            if (d1 > tol || d2 > tol) return false;
          }
    return true;
  }
};

/// Pointwise torsion components T_ijk = <T(e_i,e_j), e_k>, skew in ij.
template <class K>
struct Torsion4 {
  std::array<K, 64> a{};

  Torsion4() { a.fill(ring_traits<K>::zero()); }
  K& operator()(int i, int j, int k) { return a[(i * 4 + j) * 4 + k]; }
  const K& operator()(int i, int j, int k) const { return a[(i * 4 + j) * 4 + k]; }

  void set_component(int i, int j, int k, const K& v) {
    (*this)(i, j, k) = v;
    (*this)(j, i, k) = -v;
  }

  bool symmetries_hold(double tol = 0.0) const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          if (ring_traits<K>::abs_double((*this)(i, j, k) + (*this)(j, i, k)) > tol) return false;
    return true;
  }

  friend Torsion4 operator+(Torsion4 x, const Torsion4& y) {
    for (int i = 0; i < 64; ++i) x.a[i] = x.a[i] + y.a[i];
    return x;
  }
  friend Torsion4 operator-(Torsion4 x, const Torsion4& y) {
    for (int i = 0; i < 64; ++i) x.a[i] = x.a[i] - y.a[i];
    return x;
  }
  friend Torsion4 operator*(const K& s, Torsion4 x) {
    for (int i = 0; i < 64; ++i) x.a[i] = s * x.a[i];
    return x;
  }
  bool operator==(const Torsion4& y) const { return a == y.a; }
};

template <class K>
struct PointModel {
  Curvature4<K> R;
  Torsion4<K> T;
  std::string label;
};

// ---------------------------------------------------------------------------
// Derived quantities

/// Ricci tensor r(X,Y) = Tr R(.,X)Y, i.e. r_jk = sum_i R_ijki.
template <class K>
std::array<std::array<K, 4>, 4> ricci(const Curvature4<K>& R) {
  std::array<std::array<K, 4>, 4> r{};
  for (auto& row : r) row.fill(ring_traits<K>::zero());
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i) r[j][k] = r[j][k] + R(i, j, k, i);
  return r;
}

template <class K>
struct CurvDerived {
  std::array<std::array<K, 4>, 4> ric{};
  K r_bar = ring_traits<K>::zero();      // r(U,U)
  Form<K> rho{1};                        // vertical 1-form sum R_ki0k e^{i+3}
  K l = ring_traits<K>::zero();          // R_1230 + R_2310 + R_3120
  Vector7<K> R_tilde;                    // supported on e_4,e_5,e_6
};

template <class K>
CurvDerived<K> curv_derived(const Curvature4<K>& R) {
  CurvDerived<K> d;
  d.ric = ricci(R);
  d.r_bar = d.ric[0][0];
  // rho: only k in 1..3 can contribute since R_0i00 = 0 by skewness, so summing
  // k over 0..3 is the same; we use the full range.
  for (int i = 1; i <= 3; ++i) {
    K c = ring_traits<K>::zero();
    for (int k = 0; k < 4; ++k) c = c + R(k, i, 0, k);
    d.rho.add(MultiIndex(static_cast<std::uint8_t>(1u << (i + 3))), c);
  }
  d.l = R(1, 2, 3, 0) + R(2, 3, 1, 0) + R(3, 1, 2, 0);
  d.R_tilde[4] = R(0, 2, 3, 0) + R(3, 0, 2, 0) + R(2, 1, 0, 2) + R(3, 1, 0, 3);
  d.R_tilde[5] = -R(0, 1, 3, 0) - R(3, 0, 1, 0) + R(1, 2, 0, 1) + R(3, 2, 0, 3);
  d.R_tilde[6] = R(0, 1, 2, 0) + R(2, 0, 1, 0) + R(1, 3, 0, 1) + R(2, 3, 0, 2);
  return d;
}

/// The 12 direct orderings (even permutations) of (0,1,2,3).
inline const std::vector<std::array<int, 4>>& direct_orderings() {
  static const std::vector<std::array<int, 4>> orderings = [] {
    std::vector<std::array<int, 4>> out;
    std::array<int, 4> p = {0, 1, 2, 3};
    std::vector<int> v(p.begin(), p.end());
    do {
      int inv = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (v[i] > v[j]) ++inv;
      if (inv % 2 == 0) out.push_back({v[0], v[1], v[2], v[3]});
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
  }();
  return orderings;
}

/// Z_ijk = T_ijj + T_ikk + T_jkl for (i,j,k,l) a direct ordering.
template <class K>
K z_coeff(const Torsion4<K>& T, int i, int j, int k) {
  int l = 6 - i - j - k;
  return T(i, j, j) + T(i, k, k) + T(j, k, l);
}

template <class K>
struct TorsDerived {
  K m = ring_traits<K>::zero();     // trace of T(e_0, . )
  std::array<K, 4> W{};             // W_i = Z_ijk + Z_ilj + Z_ikl
};

template <class K>
TorsDerived<K> tors_derived(const Torsion4<K>& T) {
  TorsDerived<K> d;
  d.W.fill(ring_traits<K>::zero());
  for (int j = 1; j <= 3; ++j) d.m = d.m + T(0, j, j);
  for (const auto& o : direct_orderings()) d.W[o[0]] = d.W[o[0]] + z_coeff(T, o[0], o[1], o[2]);
  return d;
}

// ---------------------------------------------------------------------------
// Frame rotation

template <class K>
using Mat4 = std::array<std::array<K, 4>, 4>;

template <class K>
bool is_special_orthogonal(const Mat4<K>& g, double tol = 0.0) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      K dot = ring_traits<K>::zero();
      for (int a = 0; a < 4; ++a) dot = dot + g[a][i] * g[a][j];
      K expect = (i == j) ? ring_traits<K>::from_int(1) : ring_traits<K>::zero();
      if (ring_traits<K>::abs_double(dot - expect) > tol) return false;
    }
  // det via permutation expansion
  K det = ring_traits<K>::zero();
  std::vector<int> p = {0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inv;
    K prod = ring_traits<K>::from_int(1);
    for (int i = 0; i < 4; ++i) prod = prod * g[i][p[i]];
    det = det + (inv % 2 == 0 ? prod : -prod);
  } while (std::next_permutation(p.begin(), p.end()));
  return ring_traits<K>::abs_double(det - ring_traits<K>::from_int(1)) <= tol;
}

/// Re-expresses the model in the rotated frame f_i = sum_a g[a][i] e_a.
template <class K>
PointModel<K> rotate_frame(const PointModel<K>& model, const Mat4<K>& g, double tol = 0.0) {
  if (!is_special_orthogonal(g, tol))
    throw std::invalid_argument("rotate_frame: matrix is not in SO(4)");
  PointModel<K> out;
  out.label = model.label + " (rotated)";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          K s = ring_traits<K>::zero();
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                  s = s + g[a][i] * g[b][j] * g[c][k] * g[d][l] * model.R(a, b, c, d);
          out.R(i, j, k, l) = s;
        }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        K s = ring_traits<K>::zero();
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) s = s + g[a][i] * g[b][j] * g[c][k] * model.T(a, b, c);
        out.T(i, j, k) = s;
      }
  return out;
}

/// Completes a rational unit vector u to a direct orthonormal frame using the
/// quaternionic rows of the canonical coframe; returns g with columns
/// (u, f_1, f_2, f_3). Requires |u| = 1 exactly (within tol for floats).
template <class K>
Mat4<K> frame_from_unit_vector(const std::array<K, 4>& u, double tol = 0.0) {
  K n = ring_traits<K>::zero();
  for (int i = 0; i < 4; ++i) n = n + u[i] * u[i];
  if (ring_traits<K>::abs_double(n - ring_traits<K>::from_int(1)) > tol)
    throw std::invalid_argument("frame_from_unit_vector: u is not a unit vector");
  Mat4<K> g{};
  std::array<std::array<K, 4>, 3> rows = {{{-u[1], u[0], -u[3], u[2]},
                                           {-u[2], u[3], u[0], -u[1]},
                                           {-u[3], -u[2], u[1], u[0]}}};
  for (int a = 0; a < 4; ++a) g[a][0] = u[a];
  for (int i = 1; i <= 3; ++i)
    for (int a = 0; a < 4; ++a) g[a][i] = rows[i - 1][a];
  return g;
}

// ---------------------------------------------------------------------------
// Constructor catalog

template <class K>
PointModel<K> constant_curvature(const K& c) {
  PointModel<K> m;
  m.label = "constant_curvature";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          K v = ring_traits<K>::zero();
          if (i == l && j == k) v = v + c;
          if (i == k && j == l) v = v - c;
          m.R(i, j, k, l) = v;
        }
  return m;
}

/// Vectorial torsion T = nu ^ 1, i.e. T_ijk = nu_i d_jk - nu_j d_ik.
template <class K>
Torsion4<K> vectorial_torsion_tensor(const std::array<K, 4>& nu) {
  Torsion4<K> T;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        K v = ring_traits<K>::zero();
        if (j == k) v = v + nu[i];
        if (i == k) v = v - nu[j];
        T(i, j, k) = v;
      }
  return T;
}

template <class K>
PointModel<K> vectorial_torsion(const std::array<K, 4>& nu) {
  PointModel<K> m;
  m.label = "vectorial_torsion";
  m.T = vectorial_torsion_tensor(nu);
  return m;
}

inline int epsilon4(int a, int b, int c, int d) {
  int p[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

/// Totally skew torsion T = X -| vol_M, i.e. T_ijk = sum_a X_a eps_aijk.
template <class K>
Torsion4<K> skew_torsion_tensor(const std::array<K, 4>& x) {
  Torsion4<K> T;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        K v = ring_traits<K>::zero();
        for (int a = 0; a < 4; ++a) {
          int e = epsilon4(a, i, j, k);
          if (e == 1) v = v + x[a];
          if (e == -1) v = v - x[a];
        }
        T(i, j, k) = v;
      }
  return T;
}

template <class K>
PointModel<K> skew_torsion(const std::array<K, 4>& x) {
  PointModel<K> m;
  m.label = "skew_torsion";
  m.T = skew_torsion_tensor(x);
  return m;
}

/// S^2(a) x S^2(b) in the product frame: factor planes span(e_0,e_1) and
/// span(e_2,e_3) with sectional curvatures 1/a^2 and 1/b^2.
template <class K>
PointModel<K> product_spheres(const K& a, const K& b) {
  if (!(ring_traits<K>::to_double(a) > 0 && ring_traits<K>::to_double(b) > 0))
    throw std::invalid_argument("product_spheres: radii must be positive");
  PointModel<K> m;
  m.label = "product_spheres";
  K ka = ring_traits<K>::from_int(1) / (a * a);
  K kb = ring_traits<K>::from_int(1) / (b * b);
  auto fill_block = [&m](int p, int q, const K& kappa) {
    // constant-curvature pattern restricted to the plane {p,q}
    m.R(p, q, q, p) = kappa;
    m.R(q, p, q, p) = -kappa;
    m.R(p, q, p, q) = -kappa;
    m.R(q, p, p, q) = kappa;
  };
  fill_block(0, 1, ka);
  fill_block(2, 3, kb);
  return m;
}

/// Deterministic 64-bit LCG; used for reproducible exact-arithmetic models.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) { next(); }
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return state_ >> 16;
  }
  /// Integer in [lo, hi].
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() % (1ull << 40)) /
                    static_cast<double>(1ull << 40);
  }

 private:
  std::uint64_t state_;
};

/// Random model with integer components in [-3,3], antisymmetrized.
template <class K>
PointModel<K> random_model(std::uint64_t seed) {
  Lcg rng(seed);
  PointModel<K> m;
  m.label = "random_model(seed=" + std::to_string(seed) + ")";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          m.R(i, j, k, l) = ring_traits<K>::from_int(rng.uniform_int(-3, 3));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) m.T(i, j, k) = ring_traits<K>::from_int(rng.uniform_int(-3, 3));
  // antisymmetrize: R in ij and kl, T in ij
  PointModel<K> out;
  out.label = m.label;
  const K quarter = ring_traits<K>::from_fraction(1, 4);
  const K half = ring_traits<K>::from_fraction(1, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l)
          out.R(i, j, k, l) = quarter * (m.R(i, j, k, l) - m.R(j, i, k, l) - m.R(i, j, l, k) +
                                         m.R(j, i, l, k));
        out.T(i, j, k) = half * (m.T(i, j, k) - m.T(j, i, k));
      }
  return out;
}

/// Random rational point on S^3 (stereographic image of a rational point).
template <class K>
std::array<K, 4> random_unit_vector(std::uint64_t seed) {
  Lcg rng(seed);
  std::array<K, 4> u;
  while (true) {
    K w1 = ring_traits<K>::from_fraction(rng.uniform_int(-8, 8), 4);
    K w2 = ring_traits<K>::from_fraction(rng.uniform_int(-8, 8), 4);
    K w3 = ring_traits<K>::from_fraction(rng.uniform_int(-8, 8), 4);
    K nsq = w1 * w1 + w2 * w2 + w3 * w3;
    K den = ring_traits<K>::from_int(1) + nsq;
    u[0] = (ring_traits<K>::from_int(1) - nsq) / den;
    u[1] = (ring_traits<K>::from_int(2) * w1) / den;
    u[2] = (ring_traits<K>::from_int(2) * w2) / den;
    u[3] = (ring_traits<K>::from_int(2) * w3) / den;
    bool generic = true;
    for (int i = 0; i < 4; ++i) generic = generic && u[i] != ring_traits<K>::zero();
    if (generic) return u;
  }
}

}  // namespace gwistor
