#pragma once

// Polynomials in t of bounded degree with character coefficients. The degree
// bound is the complex dimension of the model; positivity of a polynomial
// means positivity of every t-coefficient within its window.

#include <utility>
#include <vector>

#include "eqmorse/character.hpp"

namespace eqmorse {

template <class Coeff>
class TPolyT {
 public:
  TPolyT() : c_(1) {}
  explicit TPolyT(int degree_bound) : c_(static_cast<std::size_t>(degree_bound) + 1) {}

  int degree_bound() const { return static_cast<int>(c_.size()) - 1; }

  CharacterT<Coeff>& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const CharacterT<Coeff>& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }

  TPolyT& operator+=(const TPolyT& o) {
    if (o.degree_bound() > degree_bound()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  TPolyT& operator-=(const TPolyT& o) {
    if (o.degree_bound() > degree_bound()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend TPolyT operator+(TPolyT a, const TPolyT& b) { return a += b; }
  friend TPolyT operator-(TPolyT a, const TPolyT& b) { return a -= b; }

  // Product in t; the degree bounds add (Kuenneth products of series).
  friend TPolyT operator*(const TPolyT& a, const TPolyT& b) {
    TPolyT r(a.degree_bound() + b.degree_bound());
    for (int i = 0; i <= a.degree_bound(); ++i)
      for (int j = 0; j <= b.degree_bound(); ++j) r[i + j] += a[i] * b[j];
    return r;
  }

  TPolyT scaled(const CharacterT<Coeff>& s) const {
    TPolyT r(degree_bound());
    for (int k = 0; k <= degree_bound(); ++k) r[k] = c_[static_cast<std::size_t>(k)] * s;
    return r;
  }

  TPolyT mirrored() const {
    TPolyT r(degree_bound());
    for (int k = 0; k <= degree_bound(); ++k) r[k] = c_[static_cast<std::size_t>(k)].mirrored();
    return r;
  }

  TPolyT truncated_above(Weight hi) const {
    TPolyT r(degree_bound());
    for (int k = 0; k <= degree_bound(); ++k)
      r[k] = c_[static_cast<std::size_t>(k)].truncated_above(hi);
    return r;
  }

  // Alternating sum of the t-coefficients (evaluation at t = -1).
  CharacterT<Coeff> eval_minus_one() const {
    CharacterT<Coeff> r;
    for (int k = 0; k <= degree_bound(); ++k) {
      if (k % 2 == 0)
        r += c_[static_cast<std::size_t>(k)];
      else
        r -= c_[static_cast<std::size_t>(k)];
    }
    return r;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& ch : c_) m = std::max(m, ch.max_abs_coefficient());
    return m;
  }

 private:
  std::vector<CharacterT<Coeff>> c_;
};

using TPoly = TPolyT<Rational>;
using FloatTPoly = TPolyT<double>;

inline FloatTPoly to_float(const TPoly& p) {
  FloatTPoly r(p.degree_bound());
  for (int k = 0; k <= p.degree_bound(); ++k) r[k] = to_float(p[k]);
  return r;
}

template <class Coeff>
struct DivisionResult {
  TPolyT<Coeff> quotient;
  CharacterT<Coeff> remainder;
};

// Synthetic division P = (1+t) Q + remainder, descending in t:
//   Q_{n-1} = P_n,  Q_{k-1} = P_k - Q_k  (k = n-1..1),  remainder = P_0 - Q_0.
// The identity holds exactly on the tracked windows; a nonzero remainder
// means P is not a (1+t)-multiple.
template <class Coeff>
DivisionResult<Coeff> tpoly_div_1_plus_t(const TPolyT<Coeff>& p) {
  const int n = p.degree_bound();
  if (n == 0) return {TPolyT<Coeff>(0), p[0]};
  TPolyT<Coeff> q(n - 1);
  q[n - 1] = p[n];
  for (int k = n - 1; k >= 1; --k) q[k - 1] = p[k] - q[k];
  return {q, p[0] - q[0]};
}

template <class Coeff>
struct TPolyNonneg {
  bool ok = true;
  int degree = 0;
  Weight weight = 0;
  Coeff value = Coeff(0);
};

template <class Coeff>
TPolyNonneg<Coeff> tpoly_is_nonneg(const TPolyT<Coeff>& p, double tol = 0.0) {
  for (int k = 0; k <= p.degree_bound(); ++k) {
    const auto r = char_nonneg(p[k], tol);
    if (!r.ok) return {false, k, r.weight, r.rhs};
  }
  return {};
}

}  // namespace eqmorse
