#pragma once

// Data-parallel inner loops shared by the series and trace code.
//
// Every kernel keeps a serial reference implementation next to the OpenMP
// path. The two must agree exactly: each output slot is produced by one
// thread with a fixed accumulation order, so results are independent of the
// thread count (bitwise for doubles, exact for rationals). The kernel tests
// and tools/bench_kernels compare the two paths.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace eqmorse::kernels {

// Process-wide switch between the serial and OpenMP paths. Defaults to the
// OpenMP path; set EQMORSE_SERIAL=1 in the environment (or call
// set_parallel(false)) to force the reference path.
bool parallel_enabled();
void set_parallel(bool on);

// out[m] = sum_j a[j] * b[m-j], sizes |a|+|b|-1. Per-slot sums run over
// ascending j in both variants.
template <class T>
std::vector<T> convolve_serial(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t m = 0; m < out.size(); ++m) {
    const std::size_t jlo = m >= b.size() ? m - (b.size() - 1) : 0;
    const std::size_t jhi = std::min(m, a.size() - 1);
    T acc(0);
    for (std::size_t j = jlo; j <= jhi; ++j) acc += a[j] * b[m - j];
    out[m] = acc;
  }
  return out;
}

template <class T>
std::vector<T> convolve_parallel(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  const long long n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
  for (long long mi = 0; mi < n; ++mi) {
    const std::size_t m = static_cast<std::size_t>(mi);
    const std::size_t jlo = m >= b.size() ? m - (b.size() - 1) : 0;
    const std::size_t jhi = std::min(m, a.size() - 1);
    T acc(0);
    for (std::size_t j = jlo; j <= jhi; ++j) acc += a[j] * b[m - j];
    out[m] = acc;
  }
  return out;
}

template <class T>
std::vector<T> convolve(const std::vector<T>& a, const std::vector<T>& b) {
  return parallel_enabled() ? convolve_parallel(a, b) : convolve_serial(a, b);
}

// Deterministic pairwise reduction; the tree shape depends only on the
// length, never on the thread count.
template <class T>
T pairwise_sum(const T* data, std::size_t n) {
  if (n == 0) return T(0);
  if (n <= 8) {
    T acc = data[0];
    for (std::size_t i = 1; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

// Fills out[i] = f(i); slots are independent, so the parallel fill is
// deterministic as well.
template <class R, class F>
std::vector<R> map_indexed_serial(std::size_t n, F&& f) {
  std::vector<R> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  return out;
}

template <class R, class F>
std::vector<R> map_indexed_parallel(std::size_t n, F&& f) {
  std::vector<R> out(n);
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < nn; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  return out;
}

template <class R, class F>
std::vector<R> map_indexed(std::size_t n, F&& f) {
  return parallel_enabled() ? map_indexed_parallel<R>(n, f) : map_indexed_serial<R>(n, f);
}

}  // namespace eqmorse::kernels
