#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwistor/form.hpp"
#include "gwistor/model.hpp"
#include "gwistor/structure_forms.hpp"

namespace gwistor {
namespace flat {

/// Numeric differential forms on the 7-dim chart of R^4 x S^3: indices
/// 0..3 are dx_1..dx_4, indices 4..6 are dw_1..dw_3 (stereographic chart).
using NForm = Form<double>;

/// Chart point: base coordinates x, stereographic coordinates w of a point
/// of S^3 away from the pole axis `m` with sign `s`. The pole is part of the
/// chart, so coordinate fields stay smooth under finite-difference probing.
struct ChartPoint {
  std::array<double, 4> x{};
  std::array<double, 3> w{};
  int m = 0;   // pole axis, 0..3
  int s = 1;   // u_m = s (1-|w|^2) / (1+|w|^2)

  std::array<double, 4> u() const {
    double n = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    double D = 1.0 + n;
    std::array<double, 4> out{};
    out[m] = s * (1.0 - n) / D;
    int t = 0;
    for (int i = 0; i < 4; ++i)
      if (i != m) out[i] = 2.0 * w[t++] / D;
    return out;
  }

  /// du_i expressed over dw (4x3 Jacobian of u(w)).
  std::array<std::array<double, 3>, 4> jacobian() const {
    double n = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    double D = 1.0 + n;
    std::array<std::array<double, 3>, 4> J{};
    for (int k = 0; k < 3; ++k) J[m][k] = -4.0 * s * w[k] / (D * D);
    int t = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == m) continue;
      for (int k = 0; k < 3; ++k) J[i][k] = 2.0 * (t == k ? 1.0 : 0.0) / D - 4.0 * w[t] * w[k] / (D * D);
      ++t;
    }
    return J;
  }
};

/// Chart adapted to the given point of R^4 x S^3: pole axis by largest |u_i|.
inline ChartPoint chart_at(const std::array<double, 4>& x, const std::array<double, 4>& u) {
  double n = 0;
  for (double c : u) n += c * c;
  if (std::abs(n - 1.0) > 1e-12) throw std::invalid_argument("chart_at: u is not a unit vector");
  ChartPoint p;
  p.x = x;
  p.m = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(u[i]) > std::abs(u[p.m])) p.m = i;
  p.s = u[p.m] >= 0 ? 1 : -1;
  int t = 0;
  for (int i = 0; i < 4; ++i)
    if (i != p.m) p.w[t++] = u[i] / (1.0 + p.s * u[p.m]);
  return p;
}

inline ChartPoint random_chart_point(std::uint64_t seed) {
  Lcg rng(seed);
  std::array<double, 4> x{}, v{};
  double n = 0;
  for (auto& c : x) c = rng.uniform_real(-1.0, 1.0);
  for (auto& c : v) {
    c = rng.uniform_real(-1.0, 1.0);
    n += c * c;
  }
  n = std::sqrt(n);
  for (auto& c : v) c /= n;
  return chart_at(x, v);
}

/// du_i as a chart 1-form.
inline NForm du_form(const ChartPoint& p, int i) {
  auto J = p.jacobian();
  NForm f(1);
  for (int k = 0; k < 3; ++k)
    f.add(MultiIndex(static_cast<std::uint8_t>(1u << (4 + k))), J[i][k]);
  return f;
}

inline NForm dx_form(int i) { return NForm::monomial({i}); }

/// The adapted coframe e^0..e^6 at a chart point, rows over (dx, dw).
struct CoframeEval {
  std::array<NForm, kDim> e;
  std::array<std::array<double, kDim>, kDim> matrix{};  // row a = e^a over (dx,dw)
};

inline CoframeEval coframe_at(const ChartPoint& p) {
  auto u = p.u();
  const double rows[3][4] = {{-u[1], u[0], -u[3], u[2]},
                             {-u[2], u[3], u[0], -u[1]},
                             {-u[3], -u[2], u[1], u[0]}};
  CoframeEval c;
  c.e[0] = NForm(1);
  for (int i = 0; i < 4; ++i) c.e[0] += u[i] * dx_form(i);
  for (int r = 0; r < 3; ++r) {
    c.e[1 + r] = NForm(1);
    c.e[4 + r] = NForm(1);
    for (int i = 0; i < 4; ++i) {
      c.e[1 + r] += rows[r][i] * dx_form(i);
      c.e[4 + r] += rows[r][i] * du_form(p, i);
    }
  }
  for (int a = 0; a < kDim; ++a)
    for (int q = 0; q < kDim; ++q)
      c.matrix[a][q] = c.e[a].coeff(MultiIndex(static_cast<std::uint8_t>(1u << q)));
  return c;
}

/// Gram matrix of the coframe w.r.t. the pulled-back Sasaki metric
/// (identity on dx, J^T J on dw); orthonormality check.
inline std::array<std::array<double, kDim>, kDim> coframe_gram(const ChartPoint& p) {
  auto c = coframe_at(p);
  auto J = p.jacobian();
  // metric on chart tangents: block diag(I4, J^T J); 1-forms pair by inverse
  double jtj[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      jtj[a][b] = 0;
      for (int i = 0; i < 4; ++i) jtj[a][b] += J[i][a] * J[i][b];
    }
  // invert the 3x3 block by cofactors
  double det = jtj[0][0] * (jtj[1][1] * jtj[2][2] - jtj[1][2] * jtj[2][1]) -
               jtj[0][1] * (jtj[1][0] * jtj[2][2] - jtj[1][2] * jtj[2][0]) +
               jtj[0][2] * (jtj[1][0] * jtj[2][1] - jtj[1][1] * jtj[2][0]);
  double inv[3][3];
  inv[0][0] = (jtj[1][1] * jtj[2][2] - jtj[1][2] * jtj[2][1]) / det;
  inv[0][1] = (jtj[0][2] * jtj[2][1] - jtj[0][1] * jtj[2][2]) / det;
  inv[0][2] = (jtj[0][1] * jtj[1][2] - jtj[0][2] * jtj[1][1]) / det;
  inv[1][0] = (jtj[1][2] * jtj[2][0] - jtj[1][0] * jtj[2][2]) / det;
  inv[1][1] = (jtj[0][0] * jtj[2][2] - jtj[0][2] * jtj[2][0]) / det;
  inv[1][2] = (jtj[0][2] * jtj[1][0] - jtj[0][0] * jtj[1][2]) / det;
  inv[2][0] = (jtj[1][0] * jtj[2][1] - jtj[1][1] * jtj[2][0]) / det;
  inv[2][1] = (jtj[0][1] * jtj[2][0] - jtj[0][0] * jtj[2][1]) / det;
  inv[2][2] = (jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0]) / det;

  std::array<std::array<double, kDim>, kDim> gram{};
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      double s = 0;
      for (int i = 0; i < 4; ++i) s += c.matrix[a][i] * c.matrix[b][i];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += c.matrix[a][4 + i] * inv[i][j] * c.matrix[b][4 + j];
      gram[a][b] = s;
    }
  return gram;
}

/// Structure forms at a point, each by two routes that must agree:
/// wedges of the coframe vs the direct coordinate expansions.
struct StructureEval {
  NForm alpha{3}, mu_beta{3}, alpha2{3}, alpha1{3}, mu{1}, beta{2}, phi{3}, star_phi{4};
};

inline StructureEval eval_frame_route(const ChartPoint& p) {
  auto c = coframe_at(p);
  StructureEval s;
  s.mu = c.e[0];
  s.alpha = wedge(c.e[4], c.e[5], c.e[6]);
  s.beta = wedge(c.e[1], c.e[4]) + wedge(c.e[2], c.e[5]) + wedge(c.e[3], c.e[6]);
  s.mu_beta = wedge(s.mu, s.beta);
  s.alpha1 = wedge(c.e[1], c.e[5], c.e[6]) + wedge(c.e[2], c.e[6], c.e[4]) +
             wedge(c.e[3], c.e[4], c.e[5]);
  s.alpha2 = wedge(c.e[1], c.e[2], c.e[6]) + wedge(c.e[2], c.e[3], c.e[4]) +
             wedge(c.e[3], c.e[1], c.e[5]);
  s.phi = s.alpha + s.mu_beta - s.alpha2;
  s.star_phi = wedge(c.e[0], c.e[1], c.e[2], c.e[3]) - 0.5 * wedge(s.beta, s.beta) -
               wedge(s.mu, s.alpha1);
  return s;
}

inline StructureEval eval_coordinate_route(const ChartPoint& p) {
  auto u = p.u();
  std::array<NForm, 4> dx, du;
  for (int i = 0; i < 4; ++i) {
    dx[i] = dx_form(i);
    du[i] = du_form(p, i);
  }
  auto xi2 = [&](int i, int j, int k) { return wedge(dx[i - 1], dx[j - 1], du[k - 1]); };
  auto xi1 = [&](int i, int j, int k) { return wedge(dx[i - 1], du[j - 1], du[k - 1]); };
  auto duu = [&](int i, int j, int k) { return wedge(du[i - 1], du[j - 1], du[k - 1]); };

  StructureEval s;
  s.mu = NForm(1);
  for (int i = 0; i < 4; ++i) s.mu += u[i] * dx[i];
  s.alpha = u[0] * duu(2, 3, 4) - u[1] * duu(1, 3, 4) + u[2] * duu(1, 2, 4) - u[3] * duu(1, 2, 3);
  s.mu_beta = u[0] * (xi2(1, 2, 2) + xi2(1, 3, 3) + xi2(1, 4, 4)) +
              u[1] * (xi2(2, 1, 1) + xi2(2, 3, 3) + xi2(2, 4, 4)) +
              u[2] * (xi2(3, 1, 1) + xi2(3, 2, 2) + xi2(3, 4, 4)) +
              u[3] * (xi2(4, 1, 1) + xi2(4, 2, 2) + xi2(4, 3, 3));
  s.alpha2 = u[0] * (xi2(2, 3, 4) - xi2(2, 4, 3) + xi2(3, 4, 2)) -
             u[1] * (xi2(1, 3, 4) - xi2(1, 4, 3) + xi2(3, 4, 1)) +
             u[2] * (xi2(1, 2, 4) + xi2(2, 4, 1) - xi2(1, 4, 2)) -
             u[3] * (xi2(1, 2, 3) - xi2(1, 3, 2) + xi2(2, 3, 1));
  s.alpha1 = u[0] * (xi1(2, 3, 4) - xi1(3, 2, 4) + xi1(4, 2, 3)) -
             u[1] * (xi1(1, 3, 4) - xi1(3, 1, 4) + xi1(4, 1, 3)) +
             u[2] * (xi1(1, 2, 4) - xi1(2, 1, 4) + xi1(4, 1, 2)) -
             u[3] * (xi1(1, 2, 3) - xi1(2, 1, 3) + xi1(3, 1, 2));
  s.phi = s.alpha + s.mu_beta - s.alpha2;
  auto f = eval_frame_route(p);
  s.beta = f.beta;
  s.star_phi = f.star_phi;
  return s;
}

/// Central-difference exterior derivative of a chart form field.
inline NForm numeric_d(const std::function<NForm(const ChartPoint&)>& field, const ChartPoint& p,
                       double h) {
  if (h <= 0) throw std::invalid_argument("numeric_d: step must be positive");
  NForm base = field(p);
  NForm out(base.degree() + 1);
  for (int q = 0; q < kDim; ++q) {
    ChartPoint plus = p, minus = p;
    if (q < 4) {
      plus.x[q] += h;
      minus.x[q] -= h;
    } else {
      plus.w[q - 4] += h;
      minus.w[q - 4] -= h;
    }
    NForm diff = field(plus) - field(minus);
    NForm partial(base.degree());
    for (const auto& [m, c] : diff.terms()) partial.set(m, c / (2.0 * h));
    out += wedge(NForm::monomial({q}), partial);
  }
  return out;
}

struct FlatCheck {
  std::string name;
  double residual;
  bool pass;
};

/// The six flat structure equations, checked numerically at one point.
inline std::vector<FlatCheck> verify_flat_equations(const ChartPoint& p, double h, double tol) {
  auto fld = [](NForm StructureEval::* member) {
    return [member](const ChartPoint& q) { return eval_coordinate_route(q).*member; };
  };
  auto at = eval_coordinate_route(p);
  struct Item {
    const char* name;
    NForm d;
    NForm expect;
  };
  std::vector<Item> items;
  items.push_back({"d alpha = 0", numeric_d(fld(&StructureEval::alpha), p, h), NForm(4)});
  items.push_back({"d mu = -beta", numeric_d(fld(&StructureEval::mu), p, h), -at.beta});
  items.push_back({"d alpha2 = 2 mu^alpha1", numeric_d(fld(&StructureEval::alpha2), p, h),
                   2.0 * wedge(at.mu, at.alpha1)});
  items.push_back({"d alpha1 = 3 mu^alpha", numeric_d(fld(&StructureEval::alpha1), p, h),
                   3.0 * wedge(at.mu, at.alpha)});
  items.push_back({"d phi = -beta^2 - 2 mu^alpha1", numeric_d(fld(&StructureEval::phi), p, h),
                   -wedge(at.beta, at.beta) - 2.0 * wedge(at.mu, at.alpha1)});
  items.push_back({"d *phi = 0", numeric_d(fld(&StructureEval::star_phi), p, h), NForm(5)});
  std::vector<FlatCheck> out;
  for (auto& it : items) {
    double r = (it.d - it.expect).max_abs();
    out.push_back({it.name, r, r < tol});
  }
  return out;
}

/// Re-expresses a chart form over the moving frame by substituting
/// dq = sum_a (C^{-1})_{qa} e^a; used to compare the numeric d phi with the
/// algebraic flat-model output coefficient by coefficient.
inline NForm to_frame_components(const NForm& f, const ChartPoint& p) {
  auto c = coframe_at(p);
  // invert the 7x7 coframe matrix by Gauss-Jordan
  double a[kDim][2 * kDim];
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      a[i][j] = c.matrix[i][j];
      a[i][kDim + j] = i == j ? 1.0 : 0.0;
    }
  for (int col = 0; col < kDim; ++col) {
    int best = col;
    for (int r = col + 1; r < kDim; ++r)
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    for (int j = 0; j < 2 * kDim; ++j) std::swap(a[col][j], a[best][j]);
    double piv = a[col][col];
    for (int j = 0; j < 2 * kDim; ++j) a[col][j] /= piv;
    for (int r = 0; r < kDim; ++r) {
      if (r == col) continue;
      double fct = a[r][col];
      for (int j = 0; j < 2 * kDim; ++j) a[r][j] -= fct * a[col][j];
    }
  }
  // inv[q][a] = (C^{-1})_{qa}: coefficient of e^a in dq
  std::array<NForm, kDim> dq_in_frame;
  for (int q = 0; q < kDim; ++q) {
    // row q of C^{-1}: C matrix rows are frames over dq, so C^{-1} columns...
    // e^a = sum_q C[a][q] dq  =>  dq = sum_a (C^{-1})[q][a] e^a with
    // (C^{-1})[q][a] the inverse of the matrix C[a][q].
    dq_in_frame[q] = NForm(1);
    for (int t = 0; t < kDim; ++t)
      dq_in_frame[q].add(MultiIndex(static_cast<std::uint8_t>(1u << t)), a[q][kDim + t]);
  }
  NForm out(f.degree());
  for (const auto& [m, coeff] : f.terms()) {
    NForm prod(0);
    bool first = true;
    for (int i : m.indices()) {
      if (first) {
        prod = coeff * dq_in_frame[i];
        first = false;
      } else {
        prod = wedge(prod, dq_in_frame[i]);
      }
    }
    out += prod;
  }
  return out;
}

}  // namespace flat
}  // namespace gwistor
