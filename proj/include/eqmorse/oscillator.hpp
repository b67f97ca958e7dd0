#pragma once

// Numerical verification of the linearized heat-trace layer: closed-form
// equivariant traces of the two-dimensional oscillator, an independent
// spectral-sum oracle, polar quadrature of the Mehler kernel, the n-factor
// model trace at a fixed point, its large-T limit, and the trace comparison
// of the two flat model operators related by a quarter rotation.

#include <complex>
#include <vector>

#include "eqmorse/geometry.hpp"

namespace eqmorse::osc {

// Data of one oscillator factor: rotation weight, deformation parameter,
// angle, anti-holomorphic form degree (0 or 1), and the spectral-sum level
// bound. The cutoff must satisfy e^{-T|lambda| cutoff} < 1e-13; pass
// cutoff = 0 to pick one from the tail target automatically.
struct OscillatorSpec {
  int lambda;
  double T;
  double theta;
  int form_degree;
  int cutoff;

  OscillatorSpec(int lambda_, double T_, double theta_, int form_degree_, int cutoff_ = 0);
};

struct TraceValue {
  std::complex<double> value;
  double tail_bound = 0.0;  // a priori truncation error bound
};

// Closed form for one factor:
//   degree 0:  e^{-T|l| - T l} / D,   degree 1:  e^{-T|l| + i l theta} / D,
//   D = (1 - e^{-(T - i theta)|l|})(1 - e^{-(T + i theta)|l|}).
TraceValue mehler_trace_factor(const OscillatorSpec& spec);

// Independent oracle: the two-dimensional oscillator of frequency T|l| has
// states (a, b) with energy T|l|(a+b+1) and rotation weight |l|(a-b); degree
// 0 adds the energy shift T l, degree 1 the phase e^{i l theta}. Summed over
// a + b <= cutoff with a geometric bound on the dropped tail.
TraceValue spectral_trace_factor(const OscillatorSpec& spec);

// Heat kernel of the scalar oscillator of frequency T|l| on C.
double mehler_kernel(std::complex<double> z, std::complex<double> zp, double T, int lambda);

// Polar-grid integral of mehler_kernel(e^{-i l theta} z, z): Gauss-Legendre
// radial nodes, uniform angular nodes, `nodes` of each (at least 64). Pass
// radius = 0 to derive it from the Gaussian tail target 1e-12.
TraceValue kernel_trace_quadrature(int lambda, double T, double theta, double radius = 0.0,
                                   int nodes = 128);

// Equivariant trace over anti-holomorphic k-forms of the model operator at
// a fixed point: sum over index sets I of size k of the products of
// single-factor traces (degree 1 inside I, degree 0 outside).
TraceValue model_trace(const FixedPoint& p, double T, double theta, int k);

// The surviving large-T datum of a fixed point: the index set of positive
// weights, the t-exponent (its size), and the limiting character
//   E_p q^{sum_{l>0} l} prod_k 1/(1 - q^{|l_k|})
// expanded through `order`.
struct LimitTerm {
  std::vector<int> indices;
  int t_exponent = 0;
  Character term;
};
LimitTerm strong_limit_term(const FixedPoint& p, Weight order);

// Full equivariant traces of exp(-B) and exp(-C) over all (p,q)-forms on
// C^n, where B and C share the bosonic oscillator part and carry the two
// zero-order fiber couplings from fiber_algebra. The couplings are conjugate
// under S_2(-pi/2), so the traces agree; both are computed independently
// (spectral bosonic factors, exponentiated fiber matrices). n <= 2.
struct ConjugationTraces {
  TraceValue b;
  TraceValue c;
};
ConjugationTraces conjugation_trace_check(const std::vector<int>& weights, double T, double theta,
                                          int cutoff = 0);

}  // namespace eqmorse::osc
