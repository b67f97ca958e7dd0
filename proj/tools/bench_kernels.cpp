// Wall-clock comparison of the serial reference kernels and their OpenMP
// counterparts, on inputs sized well past the desk-scale workloads. Also
// cross-checks that both paths produce identical output.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "eqmorse/kernels.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s %10.2f ms %10.2f ms %8.2fx  %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, equal ? "outputs equal" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
  using namespace eqmorse;
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> a(16384), b(16384);
    for (auto& x : a) x = dist(rng);
    for (auto& x : b) x = dist(rng);
    std::vector<double> rs, rp;
    const double ts = best_of(3, [&] { rs = kernels::convolve_serial(a, b); });
    const double tp = best_of(3, [&] { rp = kernels::convolve_parallel(a, b); });
    report("convolve<double> 16k x 16k", ts, tp, rs == rp);
  }

  {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    std::vector<mpq_class> a(2048), b(2048);
    for (auto& x : a) {
      x = mpq_class(num(rng), den(rng));
      x.canonicalize();
    }
    for (auto& x : b) {
      x = mpq_class(num(rng), den(rng));
      x.canonicalize();
    }
    std::vector<mpq_class> rs, rp;
    const double ts = best_of(3, [&] { rs = kernels::convolve_serial(a, b); });
    const double tp = best_of(3, [&] { rp = kernels::convolve_parallel(a, b); });
    report("convolve<rational> 2k x 2k", ts, tp, rs == rp);
  }

  {
    const std::size_t side = 1024;
    auto eval = [&](std::size_t idx) {
      const double r = 6.0 * static_cast<double>(idx / side) / side;
      const double phi = 6.28318530717958647692 * static_cast<double>(idx % side) / side;
      return r * std::exp(-r * r + 0.1 * std::cos(phi));
    };
    double vs = 0.0, vp = 0.0;
    const double ts = best_of(3, [&] {
      vs = kernels::pairwise_sum(kernels::map_indexed_serial<double>(side * side, eval));
    });
    const double tp = best_of(3, [&] {
      vp = kernels::pairwise_sum(kernels::map_indexed_parallel<double>(side * side, eval));
    });
    report("grid fill + pairwise 1024^2", ts, tp, vs == vp);
  }

  return 0;
}
