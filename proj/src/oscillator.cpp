#include "eqmorse/oscillator.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eqmorse/fiber_algebra.hpp"
#include "eqmorse/kernels.hpp"

namespace eqmorse::osc {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double abs_weight(int lambda) { return std::abs(static_cast<double>(lambda)); }

int minimal_cutoff(int lambda, double T) {
  // smallest c with e^{-T|l| c} < 1e-13
  return static_cast<int>(std::floor(std::log(1e13) / (T * abs_weight(lambda)))) + 1;
}

int default_cutoff(int lambda, double T) {
  const int target = static_cast<int>(std::ceil(std::log(1e15) / (T * abs_weight(lambda)))) + 2;
  return std::max(minimal_cutoff(lambda, T), target);
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

std::complex<double> factor_denominator(int lambda, double T, double theta) {
  const double aw = abs_weight(lambda);
  const std::complex<double> d1 = 1.0 - std::exp(-(T - kI * theta) * aw);
  const std::complex<double> d2 = 1.0 - std::exp(-(T + kI * theta) * aw);
  return d1 * d2;
}

}  // namespace

OscillatorSpec::OscillatorSpec(int lambda_, double T_, double theta_, int form_degree_,
                               int cutoff_)
    : lambda(lambda_), T(T_), theta(theta_), form_degree(form_degree_), cutoff(cutoff_) {
  if (lambda == 0) throw std::invalid_argument("OscillatorSpec: zero weight");
  if (!(T > 0)) throw std::invalid_argument("OscillatorSpec: T must be positive");
  if (form_degree != 0 && form_degree != 1)
    throw std::invalid_argument("OscillatorSpec: form degree must be 0 or 1");
  if (cutoff == 0) cutoff = default_cutoff(lambda, T);
  if (cutoff < minimal_cutoff(lambda, T))
    throw std::invalid_argument("OscillatorSpec: cutoff too small for the 1e-13 tail target");
}

TraceValue mehler_trace_factor(const OscillatorSpec& spec) {
  const double aw = abs_weight(spec.lambda);
  std::complex<double> num;
  if (spec.form_degree == 0) {
    num = std::exp(-spec.T * aw - spec.T * static_cast<double>(spec.lambda));
  } else {
    num = std::exp(-spec.T * aw + kI * (static_cast<double>(spec.lambda) * spec.theta));
  }
  return {num / factor_denominator(spec.lambda, spec.T, spec.theta), 0.0};
}

namespace {

// Equivariant trace of the scalar oscillator without any form-degree
// factor: sum over states (a, b) with a + b <= cutoff.
TraceValue scalar_spectral_trace(int lambda, double T, double theta, int cutoff) {
  const double aw = abs_weight(lambda);
  // one slot per total level s = a + b, summed over a ascending
  auto levels = kernels::map_indexed<std::complex<double>>(
      static_cast<std::size_t>(cutoff) + 1, [&](std::size_t s) {
        std::complex<double> acc = 0.0;
        const double energy = std::exp(-T * aw * (static_cast<double>(s) + 1.0));
        for (std::size_t a = 0; a <= s; ++a) {
          const double w = aw * (2.0 * static_cast<double>(a) - static_cast<double>(s));
          acc += energy * std::exp(kI * (w * theta));
        }
        return acc;
      });
  // dropped tail: sum_{m >= c+2} m x^m with x = e^{-T|l|}
  const double x = std::exp(-T * aw);
  const double m0 = static_cast<double>(cutoff) + 2.0;
  const double tail = std::pow(x, m0) * (m0 - (m0 - 1.0) * x) / ((1.0 - x) * (1.0 - x));
  return {kernels::pairwise_sum(levels), tail};
}

}  // namespace

TraceValue spectral_trace_factor(const OscillatorSpec& spec) {
  const std::complex<double> shift =
      spec.form_degree == 0
          ? std::complex<double>(std::exp(-spec.T * static_cast<double>(spec.lambda)))
          : std::exp(kI * (static_cast<double>(spec.lambda) * spec.theta));
  const auto scalar = scalar_spectral_trace(spec.lambda, spec.T, spec.theta, spec.cutoff);
  return {scalar.value * shift, scalar.tail_bound * std::abs(shift)};
}

double mehler_kernel(std::complex<double> z, std::complex<double> zp, double T, int lambda) {
  if (lambda == 0) throw std::invalid_argument("mehler_kernel: zero weight");
  if (!(T > 0)) throw std::invalid_argument("mehler_kernel: T must be positive");
  const double f = T * abs_weight(lambda);
  const double pref = f / (2.0 * std::numbers::pi * std::sinh(f));
  const double quad = (std::norm(z) + std::norm(zp)) / (2.0 * std::tanh(f)) -
                      std::real(std::conj(z) * zp) / std::sinh(f);
  return pref * std::exp(-f * quad);
}

TraceValue kernel_trace_quadrature(int lambda, double T, double theta, double radius,
                                   int nodes) {
  if (nodes < 64) throw std::invalid_argument("kernel_trace_quadrature: need >= 64 nodes");
  const double f = T * abs_weight(lambda);
  // K(e^{-i l theta} z, z) = pref * exp(-c(theta) |z|^2) with
  // c(theta) >= f tanh(f/2) > 0
  const double cmin = f * std::tanh(f / 2.0);
  if (radius == 0.0) radius = std::sqrt(35.0 / cmin);
  const double pref = f / (2.0 * std::numbers::pi * std::sinh(f));
  const double tail_bound = pref * std::numbers::pi / cmin * std::exp(-cmin * radius * radius);

  std::vector<double> gl_x, gl_w;
  gauss_legendre(nodes, gl_x, gl_w);
  const std::complex<double> rot = std::exp(-kI * (static_cast<double>(lambda) * theta));
  const double dphi = 2.0 * std::numbers::pi / nodes;
  const std::size_t total = static_cast<std::size_t>(nodes) * static_cast<std::size_t>(nodes);
  auto values = kernels::map_indexed<double>(total, [&](std::size_t idx) {
    const std::size_t i = idx / static_cast<std::size_t>(nodes);
    const std::size_t j = idx % static_cast<std::size_t>(nodes);
    const double r = 0.5 * radius * (gl_x[i] + 1.0);
    const double wr = 0.5 * radius * gl_w[i];
    const double phi = dphi * static_cast<double>(j);
    const std::complex<double> z = std::polar(r, phi);
    return wr * dphi * r * mehler_kernel(rot * z, z, T, lambda);
  });
  return {kernels::pairwise_sum(values), tail_bound};
}

TraceValue model_trace(const FixedPoint& p, double T, double theta, int k) {
  const int n = static_cast<int>(p.weights.size());
  if (k < 0 || k > n) throw std::invalid_argument("model_trace: degree out of range");
  std::complex<double> denom = 1.0;
  double abs_sum = 0.0;
  for (int w : p.weights) {
    denom *= factor_denominator(w, T, theta);
    abs_sum += abs_weight(w);
  }
  std::complex<double> total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    double real_exp = -T * abs_sum;
    double phase = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = static_cast<double>(p.weights[static_cast<std::size_t>(j)]);
      if (mask & (1u << j))
        phase += w * theta;
      else
        real_exp -= T * w;
    }
    total += std::exp(std::complex<double>(real_exp, phase));
  }
  return {total / denom, 0.0};
}

LimitTerm strong_limit_term(const FixedPoint& p, Weight order) {
  LimitTerm out;
  Weight shift = 0;
  for (std::size_t k = 0; k < p.weights.size(); ++k) {
    if (p.weights[k] > 0) {
      out.indices.push_back(static_cast<int>(k));
      shift += p.weights[k];
    }
  }
  out.t_exponent = static_cast<int>(out.indices.size());
  const Weight sum_lo = (p.fiber.support_empty() ? 0 : p.fiber.support_lo()) + shift;
  const Weight hi = order + std::max<Weight>(0, -sum_lo);
  Character term = p.fiber.shifted(shift);
  for (int w : p.weights) {
    const int aw = w > 0 ? w : -w;
    term *= geometric_factor(-aw, Side::Minus, hi);
  }
  out.term = term.everywhere_valid() ? term : term.truncated_above(order);
  return out;
}

ConjugationTraces conjugation_trace_check(const std::vector<int>& weights, double T, double theta,
                                          int cutoff) {
  const int n = static_cast<int>(weights.size());
  if (n < 1 || n > 2)
    throw std::invalid_argument("conjugation_trace_check: supported for 1 or 2 weights");
  std::complex<double> bosonic = 1.0;
  double rel_tail = 0.0;
  for (int w : weights) {
    const OscillatorSpec spec(w, T, theta, 0, cutoff);  // validates the cutoff
    const auto factor = scalar_spectral_trace(w, T, theta, spec.cutoff);
    bosonic *= factor.value;
    rel_tail += factor.tail_bound / std::abs(factor.value);
  }
  const auto rot = fiber::fiber_rotation(weights, theta);
  const auto eb = fiber::hermitian_exp(fiber::fermion_coupling_b(weights), -T);
  const auto ec = fiber::hermitian_exp(fiber::fermion_coupling_c(weights), -T);
  const std::complex<double> fb = (rot * eb).trace();
  const std::complex<double> fc = (rot * ec).trace();
  ConjugationTraces out;
  out.b = {bosonic * fb, std::abs(bosonic * fb) * rel_tail};
  out.c = {bosonic * fc, std::abs(bosonic * fc) * rel_tail};
  return out;
}

}  // namespace eqmorse::osc
