#pragma once

// Fixed-point data of a circle action on a compact Kaehler manifold, and the
// series that data determines: the t-graded fixed-point series on either
// side, the alternating fixed-point sum, a finite-temperature deformation
// that converges to the minus side, and verifiers that certify supplied
// cohomology characters against all of them.
//
// The minus side is the canonical internal representation (ascending
// series, support bounded below); the plus side is always produced by
// reversing the action and negating weights.

#include <string>
#include <vector>

#include "eqmorse/character.hpp"
#include "eqmorse/tpoly.hpp"

namespace eqmorse {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FixedPoint {
  std::string name;
  std::vector<int> weights;  // isotropy weights, all nonzero
  Character fiber;           // finite fiber character, nonnegative integer multiplicities
};

// Number of strictly negative isotropy weights at a fixed point. The Morse
// index of the moment map there is 2(n - orientation_index).
int orientation_index(const std::vector<int>& weights);

struct ManifoldModel {
  int dim = 0;
  std::vector<FixedPoint> points;

  // Throws ModelError unless the fixed-point set is nonempty, every point
  // carries exactly dim nonzero weights, and the fibers are finite
  // characters of one common dimension with nonnegative integer
  // multiplicities.
  void validate() const;
};

struct CohomologyData {
  std::vector<Character> by_degree;  // H^0 .. H^n, finite characters
};

// Negates every isotropy weight and mirrors every fiber character. An
// involution; orientation indices map to n - index.
ManifoldModel reverse_action(const ManifoldModel& m);

// Kuenneth product: pairs of fixed points, concatenated weights, multiplied
// fibers.
ManifoldModel product_model(const ManifoldModel& a, const ManifoldModel& b);
CohomologyData product_cohomology(const CohomologyData& a, const CohomologyData& b);

// The CP^1 oracle family: a degree-k line bundle with rotation speed
// lambda0, normalized so the fiber character at the weight +lambda0 point is
// 1. Cohomology comes from enumerating monomial sections: for k >= 0, H^0
// carries weights {0, -lambda0, ..., -k lambda0}; for k <= -2, H^1 carries
// {lambda0, ..., (|k|-1) lambda0}; k = -1 has none.
struct Cp1Bundle {
  ManifoldModel model;
  CohomologyData cohomology;
  int k = 0;
  int lambda0 = 1;
};
Cp1Bundle cp1_model(int k, int lambda0 = 1);

// Minus-side contribution of one fixed point, without its t power:
//   E_p(theta) prod_{l>0} q^l/(1-q^l) prod_{l<0} 1/(1-q^{|l|}),
// expanded so the certified window reaches `order`.
Character strong_point_term(const FixedPoint& p, Weight order);

// The t-graded fixed-point series. On the minus side the fixed point p
// contributes at t^(n - orientation_index); the plus side is the weight
// negation of the minus-side series of the reversed action.
TPoly strong_series(const ManifoldModel& m, Side side, Weight order);

// t^k coefficient of strong_series: the upper bound for H^k. Note the minus
// side selects fixed points with n - orientation_index == k.
Character weak_bound(const ManifoldModel& m, int k, Side side, Weight order);

// Alternating sum of the strong series coefficients (t = -1); equals the
// alternating cohomology character when the data is consistent.
Character atiyah_bott_series(const ManifoldModel& m, Weight order);
Character alternating_cohomology(const CohomologyData& coh);

template <class Coeff>
struct VerdictT {
  TPolyT<Coeff> quotient;
  CharacterT<Coeff> remainder;
  bool divisible = false;  // remainder vanishes on its (nonempty) window
  TPolyNonneg<Coeff> nonneg;
  Side side = Side::Minus;

  bool pass() const { return divisible && nonneg.ok; }
};
using Verdict = VerdictT<Rational>;
using FloatVerdict = VerdictT<double>;

// Subtracts sum_k t^k H^k from the strong series and divides by (1+t). A
// nonzero remainder means the cohomology data is inconsistent with the
// fixed-point data; the quotient must be coefficientwise nonnegative.
// Throws WindowError when `order` is too small to see all cohomology
// weights.
Verdict verify_strong(const ManifoldModel& m, const CohomologyData& coh, Side side, Weight order);

struct WeakVerdict {
  bool ok = false;
  int degree = 0;
  Side side = Side::Minus;
  Weight weight = 0;  // witness on failure
  Rational lhs, rhs;
  Character bound;
};
WeakVerdict verify_weak(const ManifoldModel& m, const CohomologyData& coh, int k, Side side,
                        Weight order);

struct AtiyahBottReport {
  bool ok = false;
  Weight weight = 0;  // witness on failure
  Rational lhs, rhs;
  Character series;    // alternating fixed-point sum
  Character expected;  // alternating cohomology character
};
AtiyahBottReport verify_atiyah_bott(const ManifoldModel& m, const CohomologyData& coh,
                                    Weight order);

// ---- finite-temperature layer (float coefficients) ----

// Per-unit-T exponent of the real prefactor of the (p, I) term, I given as a
// bitmask over the weights. Zero exactly when I selects the positive
// weights; strictly negative otherwise.
Weight finite_T_prefactor_exponent(const std::vector<int>& weights, unsigned mask);

// The deformed series at temperature parameter T > 0: every pair (p, I)
// contributes at t^|I| with real prefactor e^{T r(p,I)}, ascending factors
// 1/(1 - q^{|l|}), and descending factors expanded until their geometric
// coefficients drop below tail_eps. Converges coefficientwise to the
// minus-side strong series as T grows.
FloatTPoly finite_T_series(const ManifoldModel& m, double T, Weight order,
                           double tail_eps = 1e-12);

// Verdict for the finite-temperature series against supplied cohomology;
// float tolerances apply to both the remainder and the positivity check.
FloatVerdict finite_T_verdict(const ManifoldModel& m, const CohomologyData& coh, double T,
                              Weight order, double tol = 1e-9, double tail_eps = 1e-12);

// Difference finite_T_series - strong_series restricted to one fixed point,
// accumulated term by term so no cancellation occurs: every coefficient of
// the result is a sum of nonnegative contributions of size O(e^{-2T}).
// Accurate far below double roundoff of the series themselves.
FloatTPoly finite_T_point_difference(const FixedPoint& p, double T, Weight order,
                                     double tail_eps = 1e-12);

// Max-norm of (finite_T_series - strong_series) over all t-degrees and
// weights certified through `order`.
double finite_T_distance(const ManifoldModel& m, double T, Weight order,
                         double tail_eps = 1e-12);

// Smallest |weight| over the model; 0 for a zero-dimensional model.
int smallest_weight_magnitude(const ManifoldModel& m);

}  // namespace eqmorse
