#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwistor/scalar.hpp"

namespace gwistor {

inline constexpr int kDim = 7;
inline constexpr std::uint8_t kFullMask = 0x7F;        // e^{0123456}
inline constexpr std::uint8_t kHorizontalMask = 0x0F;  // e^{0123}

/// Strictly increasing multi-index over frame labels {0,...,6}, stored as a
/// bit mask. Sortedness and absence of duplicates are structural.
struct MultiIndex {
  std::uint8_t bits = 0;

  MultiIndex() = default;
  explicit MultiIndex(std::uint8_t b) : bits(b) {}

  int degree() const { return std::popcount(bits); }
  bool contains(int i) const { return (bits >> i) & 1; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 0; i < kDim; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  std::string name() const {
    std::string s = "e";
    for (int i : indices()) s += static_cast<char>('0' + i);
    return s;
  }

  auto operator<=>(const MultiIndex&) const = default;
};

namespace detail {

// Sign of sorting the concatenation (a, b) for disjoint masks, i.e. the sign
// s with e^a wedge e^b = s e^{a|b}.
inline int merge_sign(std::uint8_t a, std::uint8_t b) {
  int inversions = 0;
  for (int j = 0; j < kDim; ++j) {
    if (!((b >> j) & 1)) continue;
    inversions += std::popcount(static_cast<std::uint8_t>(a >> (j + 1)));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace detail

/// Sparse alternating form on the 7-dimensional model space. Zero
/// coefficients are purged on construction, so equality is structural.
template <class K>
class Form {
 public:
  explicit Form(int degree = 0) : degree_(degree) {
    if (degree < 0 || degree > kDim) throw std::invalid_argument("Form: degree out of range");
  }

  /// Monomial c e^{i0 i1 ...}; the index list may be unsorted (its
  /// permutation sign is absorbed into the coefficient), duplicates give 0.
  static Form monomial(std::initializer_list<int> idx, K coeff = ring_traits<K>::from_int(1)) {
    return monomial(std::vector<int>(idx), std::move(coeff));
  }
  static Form monomial(const std::vector<int>& idx, K coeff = ring_traits<K>::from_int(1)) {
    Form f(static_cast<int>(idx.size()));
    std::uint8_t bits = 0;
    int sign = 1;
    for (int i : idx) {
      if (i < 0 || i >= kDim) throw std::invalid_argument("Form: index out of range");
      std::uint8_t b = static_cast<std::uint8_t>(1u << i);
      if (bits & b) return f;  // repeated index
      sign *= detail::merge_sign(bits, b);
      bits |= b;
    }
    f.set(MultiIndex(bits), sign > 0 ? coeff : -coeff);
    return f;
  }

  static Form scalar(K value) {
    Form f(0);
    f.set(MultiIndex(0), std::move(value));
    return f;
  }

  int degree() const { return degree_; }
  const std::map<MultiIndex, K>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  K coeff(MultiIndex m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ring_traits<K>::zero() : it->second;
  }
  K coeff(std::initializer_list<int> idx) const {
    std::uint8_t bits = 0;
    for (int i : idx) bits |= static_cast<std::uint8_t>(1u << i);
    return coeff(MultiIndex(bits));
  }

  void set(MultiIndex m, K value) {
    if (m.degree() != degree_) throw std::invalid_argument("Form: multi-index degree mismatch");
    if (value == ring_traits<K>::zero())
      terms_.erase(m);
    else
      terms_[m] = std::move(value);
  }

  void add(MultiIndex m, const K& value) { set(m, coeff(m) + value); }

  Form& operator+=(const Form& o) {
    if (o.degree_ != degree_) throw std::invalid_argument("Form: degree mismatch in +");
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    if (o.degree_ != degree_) throw std::invalid_argument("Form: degree mismatch in -");
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  Form& operator*=(const K& s) {
    if (s == ring_traits<K>::zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c = c * s;
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator-(Form a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend Form operator*(K s, Form a) { return a *= s; }
  friend Form operator*(Form a, const K& s) { return a *= s; }

  bool operator==(const Form& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

  /// Largest coefficient magnitude, for float-ring thresholding.
  double max_abs() const {
    double m = 0.0;
    for (const auto& [idx, c] : terms_) {
      double v = ring_traits<K>::abs_double(c);
      if (v > m) m = v;
    }
    return m;
  }

  bool near_zero(double tol) const { return max_abs() <= tol; }

 private:
  int degree_;
  std::map<MultiIndex, K> terms_;
};

/// Vector in the adapted frame e_0,...,e_6.
template <class K>
struct Vector7 {
  std::array<K, kDim> c{};

  Vector7() { c.fill(ring_traits<K>::zero()); }
  static Vector7 basis(int i) {
    Vector7 v;
    v.c[i] = ring_traits<K>::from_int(1);
    return v;
  }

  K& operator[](int i) { return c[i]; }
  const K& operator[](int i) const { return c[i]; }

  friend Vector7 operator+(Vector7 a, const Vector7& b) {
    for (int i = 0; i < kDim; ++i) a.c[i] = a.c[i] + b.c[i];
    return a;
  }
  friend Vector7 operator*(const K& s, Vector7 a) {
    for (int i = 0; i < kDim; ++i) a.c[i] = s * a.c[i];
    return a;
  }

  /// Musical flat: the metric is Euclidean in the adapted frame.
  Form<K> flat() const {
    Form<K> f(1);
    for (int i = 0; i < kDim; ++i)
      f.add(MultiIndex(static_cast<std::uint8_t>(1u << i)), c[i]);
    return f;
  }
};

template <class K>
Vector7<K> sharp(const Form<K>& one_form) {
  if (one_form.degree() != 1) throw std::invalid_argument("sharp: expects a 1-form");
  Vector7<K> v;
  for (const auto& [m, coeff] : one_form.terms()) v[m.indices()[0]] = coeff;
  return v;
}

/// Endomorphism of the model space, column-acting: (Av)_i = sum_j A(i,j) v_j.
template <class K>
struct Endo7 {
  std::array<std::array<K, kDim>, kDim> m{};

  Endo7() {
    for (auto& row : m) row.fill(ring_traits<K>::zero());
  }
  static Endo7 identity() {
    Endo7 e;
    for (int i = 0; i < kDim; ++i) e.m[i][i] = ring_traits<K>::from_int(1);
    return e;
  }

  K& operator()(int i, int j) { return m[i][j]; }
  const K& operator()(int i, int j) const { return m[i][j]; }

  Vector7<K> apply(const Vector7<K>& v) const {
    Vector7<K> out;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) out[i] = out[i] + m[i][j] * v[j];
    return out;
  }

  Endo7 transpose() const {
    Endo7 t;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) t.m[i][j] = m[j][i];
    return t;
  }

  Endo7 compose(const Endo7& o) const {  // this after o
    Endo7 r;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k) r.m[i][j] = r.m[i][j] + m[i][k] * o.m[k][j];
    return r;
  }
};

// ---------------------------------------------------------------------------
// Operations

template <class K>
Form<K> wedge(const Form<K>& a, const Form<K>& b) {
  int deg = a.degree() + b.degree();
  if (deg > kDim) return Form<K>(kDim);  // clamped zero
  Form<K> out(deg);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma.bits & mb.bits) continue;
      int s = detail::merge_sign(ma.bits, mb.bits);
      K v = ca * cb;
      out.add(MultiIndex(static_cast<std::uint8_t>(ma.bits | mb.bits)), s > 0 ? v : -v);
    }
  return out;
}

template <class K, class... Rest>
Form<K> wedge(const Form<K>& a, const Form<K>& b, const Rest&... rest) {
  return wedge(wedge(a, b), rest...);
}

/// Hodge star on the full 7-dim space, volume form e^{0123456}.
template <class K>
Form<K> hodge7(const Form<K>& a) {
  Form<K> out(kDim - a.degree());
  for (const auto& [m, c] : a.terms()) {
    std::uint8_t comp = kFullMask & ~m.bits;
    int s = detail::merge_sign(m.bits, comp);
    out.add(MultiIndex(comp), s > 0 ? c : -c);
  }
  return out;
}

/// Pull-back of the base Hodge star: 4-dim star on indices {0,1,2,3} with
/// volume e^{0123}. Rejects forms with vertical indices.
template <class K>
Form<K> hodge4_horizontal(const Form<K>& a) {
  Form<K> out(4 - a.degree());
  for (const auto& [m, c] : a.terms()) {
    if (m.bits & ~kHorizontalMask)
      throw std::invalid_argument("hodge4_horizontal: form has vertical indices");
    std::uint8_t comp = kHorizontalMask & ~m.bits;
    int s = detail::merge_sign(m.bits, comp);
    out.add(MultiIndex(comp), s > 0 ? c : -c);
  }
  return out;
}

/// Interior product v contracted into a; antiderivation of degree -1.
template <class K>
Form<K> interior(const Vector7<K>& v, const Form<K>& a) {
  if (a.degree() == 0) return Form<K>(0);
  Form<K> out(a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    int pos = 0;
    for (int i = 0; i < kDim; ++i) {
      if (!m.contains(i)) continue;
      if (v[i] != ring_traits<K>::zero()) {
        K val = v[i] * c;
        out.add(MultiIndex(static_cast<std::uint8_t>(m.bits & ~(1u << i))),
                (pos % 2 == 0) ? val : -val);
      }
      ++pos;
    }
  }
  return out;
}

namespace detail {

// Multilinear evaluation of a form on p vectors (Leibniz determinant per term).
template <class K>
K evaluate(const Form<K>& a, const std::vector<Vector7<K>>& v) {
  int p = a.degree();
  K total = ring_traits<K>::zero();
  std::array<int, kDim> idx{};
  for (const auto& [m, c] : a.terms()) {
    auto ind = m.indices();
    for (int t = 0; t < p; ++t) idx[t] = ind[t];
    // det of [v_a(e_{idx_b})]_{a,b} by permutation expansion (p <= 7, tiny)
    std::array<int, kDim> perm{};
    for (int t = 0; t < p; ++t) perm[t] = t;
    K det = ring_traits<K>::zero();
    // iterate permutations via std::next_permutation with sign tracking
    std::vector<int> pv(perm.begin(), perm.begin() + p);
    std::sort(pv.begin(), pv.end());
    do {
      int sign = 1;
      for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
          if (pv[i] > pv[j]) sign = -sign;
      K prod = ring_traits<K>::from_int(1);
      for (int row = 0; row < p; ++row) prod = prod * v[row][idx[pv[row]]];
      det = det + (sign > 0 ? prod : -prod);
    } while (std::next_permutation(pv.begin(), pv.end()));
    total = total + c * det;
  }
  return total;
}

}  // namespace detail

/// The contraction eta o (B_1 ^ ... ^ B_p): alternated composition with a
/// list of endomorphisms, returned as a form (the result is alternating).
template <class K>
Form<K> contract(const Form<K>& eta, const std::vector<Endo7<K>>& b) {
  int p = eta.degree();
  if (static_cast<int>(b.size()) != p)
    throw std::invalid_argument("contract: endomorphism count must equal the degree");
  if (p == 0) return eta;
  Form<K> out(p);
  // iterate over sorted p-subsets of {0..6}
  for (std::uint8_t mask = 0; mask <= kFullMask; ++mask) {
    if (std::popcount(mask) != p) continue;
    MultiIndex J(mask);
    auto base = J.indices();
    std::vector<int> sigma(p);
    for (int t = 0; t < p; ++t) sigma[t] = t;
    K coeff = ring_traits<K>::zero();
    do {
      int sign = 1;
      for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
          if (sigma[i] > sigma[j]) sign = -sign;
      std::vector<Vector7<K>> args;
      args.reserve(p);
      for (int t = 0; t < p; ++t) args.push_back(b[t].apply(Vector7<K>::basis(base[sigma[t]])));
      K val = detail::evaluate(eta, args);
      coeff = coeff + (sign > 0 ? val : -val);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    out.add(J, coeff);
  }
  return out;
}

/// Coefficient inner product over sorted multi-indices.
template <class K>
K inner(const Form<K>& a, const Form<K>& b) {
  K s = ring_traits<K>::zero();
  for (const auto& [m, c] : a.terms()) s = s + c * b.coeff(m);
  return s;
}

/// |a|^2 = *(a ^ *a), which equals the coefficient sum of squares.
template <class K>
K norm_sq(const Form<K>& a) {
  Form<K> top = wedge(a, hodge7(a));
  return top.coeff(MultiIndex(kFullMask));
}

}  // namespace gwistor
