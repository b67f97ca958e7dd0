#pragma once

// Windowed arithmetic for formal characters of the circle,
//
//   q(theta) = sum_m q_m e^{i m theta},
//
// stored as a dense coefficient block together with the weight window on
// which the coefficients are certified. Outside the window the series is
// unknown; an infinite window end means the series is known (and eventually
// zero) in that direction. A truncated ascending expansion therefore has
// window (-inf, hi]: it vanishes below its lowest stored weight and is exact
// up to hi. Weight negation flips the window, giving descending series.
//
// Exact coefficients are GMP rationals; the finite-temperature series use
// doubles. The two never mix implicitly: convert with to_float().

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eqmorse/kernels.hpp"

namespace eqmorse {

using Rational = mpq_class;
using Weight = std::int64_t;

inline constexpr Weight kWeightNegInf = std::numeric_limits<Weight>::min() / 4;
inline constexpr Weight kWeightPosInf = std::numeric_limits<Weight>::max() / 4;

// Saturating addition of weights; infinities absorb.
inline Weight weight_add(Weight a, Weight b) {
  if (a <= kWeightNegInf || b <= kWeightNegInf) return kWeightNegInf;
  if (a >= kWeightPosInf || b >= kWeightPosInf) return kWeightPosInf;
  return a + b;
}

inline Weight weight_neg(Weight a) {
  if (a <= kWeightNegInf) return kWeightPosInf;
  if (a >= kWeightPosInf) return kWeightNegInf;
  return -a;
}

// Raised when an operation would need coefficients outside the windows of
// its operands (disjoint windows, incompatible expansion directions, or a
// comparison window that misses data it must see).
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool coeff_is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool coeff_is_zero(double c) { return c == 0.0; }

template <class Coeff>
class CharacterT {
 public:
  // Zero character, certified on the whole weight line.
  CharacterT() = default;

  static CharacterT zero() { return CharacterT(); }

  static CharacterT monomial(Weight m, Coeff c = Coeff(1)) {
    CharacterT r;
    r.lo_ = m;
    r.coeffs_ = {std::move(c)};
    r.normalize();
    return r;
  }

  // Dense coefficients c[0..] for weights lo, lo+1, ..., valid on
  // [win_lo, win_hi].
  static CharacterT dense(Weight lo, std::vector<Coeff> coeffs, Weight win_lo = kWeightNegInf,
                          Weight win_hi = kWeightPosInf) {
    CharacterT r;
    r.lo_ = lo;
    r.coeffs_ = std::move(coeffs);
    r.win_lo_ = win_lo;
    r.win_hi_ = win_hi;
    r.normalize();
    return r;
  }

  static CharacterT from_terms(const std::vector<std::pair<Weight, Coeff>>& terms,
                               Weight win_lo = kWeightNegInf, Weight win_hi = kWeightPosInf) {
    CharacterT r;
    r.win_lo_ = win_lo;
    r.win_hi_ = win_hi;
    if (!terms.empty()) {
      Weight lo = terms.front().first, hi = terms.front().first;
      for (const auto& [w, c] : terms) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
      r.lo_ = lo;
      r.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), Coeff(0));
      for (const auto& [w, c] : terms) r.coeffs_[static_cast<std::size_t>(w - lo)] += c;
    }
    r.normalize();
    return r;
  }

  // A character carrying no certified coefficients at all.
  static CharacterT no_data() {
    CharacterT r;
    r.win_lo_ = 0;
    r.win_hi_ = -1;
    return r;
  }

  Weight window_lo() const { return win_lo_; }
  Weight window_hi() const { return win_hi_; }
  bool window_empty() const { return win_lo_ > win_hi_; }
  bool ascending() const { return win_lo_ == kWeightNegInf && !window_empty(); }
  bool descending() const { return win_hi_ == kWeightPosInf && !window_empty(); }
  bool everywhere_valid() const { return ascending() && descending(); }

  bool support_empty() const { return coeffs_.empty(); }
  Weight support_lo() const { return lo_; }
  Weight support_hi() const { return lo_ + static_cast<Weight>(coeffs_.size()) - 1; }

  // True when the character is the zero series on a nonempty window.
  bool is_zero_on_window() const { return coeffs_.empty() && !window_empty(); }

  bool known(Weight m) const { return m >= win_lo_ && m <= win_hi_; }

  Coeff at(Weight m) const {
    if (coeffs_.empty() || m < lo_ || m > support_hi()) return Coeff(0);
    return coeffs_[static_cast<std::size_t>(m - lo_)];
  }

  const std::vector<Coeff>& coefficients() const { return coeffs_; }

  // Weights of the first possibly-nonzero coefficient in each direction;
  // used by the product window rule.
  Weight first_unknown_above() const { return weight_add(win_hi_, 1); }
  Weight effective_lo() const { return coeffs_.empty() ? first_unknown_above() : lo_; }

  CharacterT& operator+=(const CharacterT& o) {
    *this = binary_add(*this, o, /*negate_rhs=*/false);
    return *this;
  }
  CharacterT& operator-=(const CharacterT& o) {
    *this = binary_add(*this, o, /*negate_rhs=*/true);
    return *this;
  }
  friend CharacterT operator+(CharacterT a, const CharacterT& b) { return binary_add(a, b, false); }
  friend CharacterT operator-(CharacterT a, const CharacterT& b) { return binary_add(a, b, true); }

  CharacterT operator-() const {
    CharacterT r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  CharacterT scaled(const Coeff& s) const {
    CharacterT r = *this;
    if (coeff_is_zero(s)) {
      r.coeffs_.clear();
      r.lo_ = 0;
      return r;
    }
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  // Multiplication by e^{i s theta}: shifts every weight by s.
  CharacterT shifted(Weight s) const {
    CharacterT r = *this;
    if (!r.coeffs_.empty()) r.lo_ += s;
    r.win_lo_ = weight_add(r.win_lo_, s);
    r.win_hi_ = weight_add(r.win_hi_, s);
    return r;
  }

  // Weight negation theta -> -theta. An involution; swaps ascending and
  // descending series.
  CharacterT mirrored() const {
    CharacterT r;
    r.win_lo_ = weight_neg(win_hi_);
    r.win_hi_ = weight_neg(win_lo_);
    if (!coeffs_.empty()) {
      r.lo_ = -support_hi();
      r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    }
    r.normalize();
    return r;
  }

  // Cauchy product. Both operands must expand in the same direction (an
  // everywhere-valid character qualifies for either). The certified window
  // of the result follows the rule
  //   hi = min(hi_a + lo_b, hi_b + lo_a)
  // for ascending operands, mirrored for descending ones. A product with an
  // uncertified operand carries no data.
  friend CharacterT operator*(const CharacterT& a, const CharacterT& b) {
    if (a.window_empty() || b.window_empty()) return no_data();
    if (a.ascending() && b.ascending()) return mul_ascending(a, b);
    if (a.descending() && b.descending())
      return mul_ascending(a.mirrored(), b.mirrored()).mirrored();
    throw WindowError("cannot multiply characters expanded in opposite directions");
  }
  CharacterT& operator*=(const CharacterT& o) {
    *this = *this * o;
    return *this;
  }

  // Restrict the certified window from above / below.
  CharacterT truncated_above(Weight hi) const {
    CharacterT r = *this;
    r.win_hi_ = std::min(r.win_hi_, hi);
    r.normalize();
    return r;
  }
  CharacterT truncated_below(Weight lo) const {
    CharacterT r = *this;
    r.win_lo_ = std::max(r.win_lo_, lo);
    r.normalize();
    return r;
  }

  bool identical(const CharacterT& o) const {
    return lo_ == o.lo_ && win_lo_ == o.win_lo_ && win_hi_ == o.win_hi_ && coeffs_ == o.coeffs_;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& c : coeffs_) {
      const double v = coeff_to_double(c);
      m = std::max(m, v < 0 ? -v : v);
    }
    return m;
  }

 private:
  static double coeff_to_double(const Rational& c) { return c.get_d(); }
  static double coeff_to_double(double c) { return c; }

  static CharacterT binary_add(const CharacterT& a, const CharacterT& b, bool negate_rhs) {
    CharacterT r;
    r.win_lo_ = std::max(a.win_lo_, b.win_lo_);
    r.win_hi_ = std::min(a.win_hi_, b.win_hi_);
    if (r.win_lo_ > r.win_hi_) return no_data();
    if (a.coeffs_.empty() && b.coeffs_.empty()) return r;
    Weight lo = a.coeffs_.empty() ? b.lo_ : (b.coeffs_.empty() ? a.lo_ : std::min(a.lo_, b.lo_));
    Weight hi = a.coeffs_.empty() ? b.support_hi()
                                  : (b.coeffs_.empty() ? a.support_hi()
                                                       : std::max(a.support_hi(), b.support_hi()));
    r.lo_ = lo;
    r.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), Coeff(0));
    for (Weight m = lo; m <= hi; ++m) {
      Coeff v = a.at(m);
      if (negate_rhs)
        v -= b.at(m);
      else
        v += b.at(m);
      r.coeffs_[static_cast<std::size_t>(m - lo)] = std::move(v);
    }
    r.normalize();
    return r;
  }

  static CharacterT mul_ascending(const CharacterT& a, const CharacterT& b) {
    CharacterT r;
    r.win_lo_ = kWeightNegInf;
    r.win_hi_ = std::min(weight_add(a.win_hi_, b.effective_lo()),
                         weight_add(b.win_hi_, a.effective_lo()));
    if (r.win_lo_ > r.win_hi_) return no_data();
    if (!a.coeffs_.empty() && !b.coeffs_.empty()) {
      r.lo_ = a.lo_ + b.lo_;
      r.coeffs_ = kernels::convolve(a.coeffs_, b.coeffs_);
    }
    r.normalize();
    return r;
  }

  // Drop stored coefficients outside the window and zero ends of the block.
  void normalize() {
    if (win_lo_ > win_hi_) {
      coeffs_.clear();
      lo_ = 0;
      win_lo_ = 0;
      win_hi_ = -1;
      return;
    }
    if (!coeffs_.empty()) {
      const Weight keep_lo = std::max(lo_, win_lo_);
      const Weight keep_hi = std::min(support_hi(), win_hi_);
      if (keep_lo > keep_hi) {
        coeffs_.clear();
      } else {
        if (keep_lo > lo_ || keep_hi < support_hi()) {
          std::vector<Coeff> kept(coeffs_.begin() + static_cast<std::ptrdiff_t>(keep_lo - lo_),
                                  coeffs_.begin() + static_cast<std::ptrdiff_t>(keep_hi - lo_ + 1));
          coeffs_ = std::move(kept);
          lo_ = keep_lo;
        }
      }
    }
    std::size_t head = 0;
    while (head < coeffs_.size() && coeff_is_zero(coeffs_[head])) ++head;
    if (head == coeffs_.size()) {
      coeffs_.clear();
    } else {
      std::size_t tail = coeffs_.size();
      while (tail > head && coeff_is_zero(coeffs_[tail - 1])) --tail;
      if (head > 0 || tail < coeffs_.size()) {
        std::vector<Coeff> kept(coeffs_.begin() + static_cast<std::ptrdiff_t>(head),
                                coeffs_.begin() + static_cast<std::ptrdiff_t>(tail));
        coeffs_ = std::move(kept);
        lo_ += static_cast<Weight>(head);
      }
    }
    if (coeffs_.empty()) lo_ = 0;
  }

  Weight lo_ = 0;
  std::vector<Coeff> coeffs_;
  Weight win_lo_ = kWeightNegInf;
  Weight win_hi_ = kWeightPosInf;
};

using Character = CharacterT<Rational>;
using FloatCharacter = CharacterT<double>;

inline FloatCharacter to_float(const Character& c) {
  std::vector<double> v;
  v.reserve(c.coefficients().size());
  for (const auto& x : c.coefficients()) v.push_back(x.get_d());
  return FloatCharacter::dense(c.support_lo(), std::move(v), c.window_lo(), c.window_hi());
}

enum class Side { Minus, Plus };

// Expansion of a single fixed-point denominator factor, certified up to
// |weight| <= order:
//   minus side, lambda > 0:  q^lambda + q^{2 lambda} + ...   (window (-inf, order])
//   minus side, lambda < 0:  1 + q^{|lambda|} + ...          (window (-inf, order])
// The plus side is the weight negation of the minus side.
template <class Coeff = Rational>
CharacterT<Coeff> geometric_factor(int lambda, Side side, Weight order) {
  if (lambda == 0) throw std::invalid_argument("geometric_factor: zero weight");
  if (order < 0) throw std::invalid_argument("geometric_factor: negative order");
  const Weight step = lambda > 0 ? lambda : -static_cast<Weight>(lambda);
  const Weight start = lambda > 0 ? step : 0;
  std::vector<std::pair<Weight, Coeff>> terms;
  for (Weight w = start; w <= order; w += step) terms.emplace_back(w, Coeff(1));
  auto minus = CharacterT<Coeff>::from_terms(terms, kWeightNegInf, order);
  return side == Side::Minus ? minus : minus.mirrored();
}

template <class Coeff>
struct LeqResult {
  bool ok = true;
  Weight weight = 0;  // first offending weight when !ok
  Coeff lhs = Coeff(0);
  Coeff rhs = Coeff(0);
};

// Coefficientwise a <= b on the overlap of the two windows. In float mode a
// slack of tol absorbs roundoff; exact mode passes tol = 0.
template <class Coeff>
LeqResult<Coeff> char_leq(const CharacterT<Coeff>& a, const CharacterT<Coeff>& b,
                          double tol = 0.0) {
  const Weight wlo = std::max(a.window_lo(), b.window_lo());
  const Weight whi = std::min(a.window_hi(), b.window_hi());
  if (wlo > whi) throw WindowError("char_leq: windows are disjoint");
  if (a.support_empty() && b.support_empty()) return {};
  Weight lo = kWeightPosInf, hi = kWeightNegInf;
  if (!a.support_empty()) {
    lo = std::min(lo, a.support_lo());
    hi = std::max(hi, a.support_hi());
  }
  if (!b.support_empty()) {
    lo = std::min(lo, b.support_lo());
    hi = std::max(hi, b.support_hi());
  }
  lo = std::max(lo, wlo);
  hi = std::min(hi, whi);
  const Coeff slack(tol);
  for (Weight m = lo; m <= hi; ++m) {
    if (b.at(m) - a.at(m) < -slack) return {false, m, a.at(m), b.at(m)};
  }
  return {};
}

// Float mode compares against -1e-9 by default; roundoff must not flip a
// true zero into a violation.
inline LeqResult<double> char_leq(const FloatCharacter& a, const FloatCharacter& b,
                                  double tol = 1e-9) {
  return char_leq<double>(a, b, tol);
}

template <class Coeff>
LeqResult<Coeff> char_nonneg(const CharacterT<Coeff>& a, double tol = 0.0) {
  return char_leq<Coeff>(CharacterT<Coeff>::zero(), a, tol);
}

inline LeqResult<double> char_nonneg(const FloatCharacter& a, double tol = 1e-9) {
  return char_nonneg<double>(a, tol);
}

template <class Coeff>
struct MatchResult {
  bool ok = true;
  Weight weight = 0;
  Coeff lhs = Coeff(0);
  Coeff rhs = Coeff(0);
};

// Exact coefficient equality on the overlap of the windows.
template <class Coeff>
MatchResult<Coeff> char_match(const CharacterT<Coeff>& a, const CharacterT<Coeff>& b) {
  const Weight wlo = std::max(a.window_lo(), b.window_lo());
  const Weight whi = std::min(a.window_hi(), b.window_hi());
  if (wlo > whi) throw WindowError("char_match: windows are disjoint");
  Weight lo = kWeightPosInf, hi = kWeightNegInf;
  for (const auto* c : {&a, &b}) {
    if (!c->support_empty()) {
      lo = std::min(lo, c->support_lo());
      hi = std::max(hi, c->support_hi());
    }
  }
  if (lo > hi) return {};
  lo = std::max(lo, wlo);
  hi = std::min(hi, whi);
  for (Weight m = lo; m <= hi; ++m) {
    if (a.at(m) != b.at(m)) return {false, m, a.at(m), b.at(m)};
  }
  return {};
}

}  // namespace eqmorse
