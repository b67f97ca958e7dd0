#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "eqmorse/fiber_algebra.hpp"

using namespace eqmorse;
using fiber::Matrix;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double anticommutation_defect(int n) {
  const auto ops = fiber::build_fermion_ops(n);
  const int dim = fiber::fiber_dimension(n);
  const Matrix id = Matrix::Identity(dim, dim);
  double defect = 0.0;
  auto anti = [](const Matrix& a, const Matrix& b) { return a * b + b * a; };
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const Matrix delta = k == l ? id : Matrix(Matrix::Zero(dim, dim));
      defect = std::max(defect, max_abs(anti(ops.wedge[k], ops.contract[l]) - delta));
      defect = std::max(defect, max_abs(anti(ops.wedge_bar[k], ops.contract_bar[l]) - delta));
      // all other pairs vanish
      defect = std::max(defect, max_abs(anti(ops.wedge[k], ops.wedge[l])));
      defect = std::max(defect, max_abs(anti(ops.wedge[k], ops.wedge_bar[l])));
      defect = std::max(defect, max_abs(anti(ops.wedge[k], ops.contract_bar[l])));
      defect = std::max(defect, max_abs(anti(ops.contract[k], ops.contract_bar[l])));
      defect = std::max(defect, max_abs(anti(ops.contract[k], ops.contract[l])));
      defect = std::max(defect, max_abs(anti(ops.wedge_bar[k], ops.wedge_bar[l])));
    }
  }
  return defect;
}

}  // namespace

TEST_CASE("creation and annihilation satisfy the anti-commutation table") {
  for (int n = 1; n <= 4; ++n) CHECK(anticommutation_defect(n) < 1e-14);

  const auto ops1 = fiber::build_fermion_ops(1);
  const Matrix id = Matrix::Identity(4, 4);
  CHECK(max_abs(ops1.wedge[0] * ops1.contract[0] + ops1.contract[0] * ops1.wedge[0] - id) == 0.0);
  CHECK(max_abs(ops1.wedge[0] * ops1.wedge[0]) == 0.0);

  const auto ops2 = fiber::build_fermion_ops(2);
  CHECK(max_abs(ops2.wedge[0] * ops2.contract[1] + ops2.contract[1] * ops2.wedge[0]) == 0.0);

  CHECK_THROWS_AS(fiber::build_fermion_ops(0), std::invalid_argument);
  CHECK_THROWS_AS(fiber::build_fermion_ops(5), std::invalid_argument);
}

TEST_CASE("lambda operators of the standard form") {
  const auto l = fiber::lambda_ops(fiber::standard_kahler_form(1));
  // eigenvalues of L_3 on the (p,q) basis: -1/2, 0, 0, 1/2
  CHECK(l.three(0, 0) == std::complex<double>(-0.5, 0.0));
  CHECK(l.three(1, 1) == std::complex<double>(0.0, 0.0));
  CHECK(l.three(2, 2) == std::complex<double>(0.0, 0.0));
  CHECK(l.three(3, 3) == std::complex<double>(0.5, 0.0));
  CHECK(std::abs(l.three.trace()) == 0.0);

  const auto l2 = fiber::lambda_ops(fiber::standard_kahler_form(2));
  const int top = fiber::fiber_dimension(2) - 1;  // (p,q) = (2,2)
  CHECK(l2.three(top, top) == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(l2.three.trace()) < 1e-14);
}

TEST_CASE("minus operator is the adjoint of plus") {
  for (int n : {1, 2, 3}) {
    for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
      const auto l = fiber::lambda_ops(fiber::random_sigma(n, seed));
      CHECK(max_abs(Matrix(l.minus - l.plus.adjoint())) < 1e-14);
    }
  }
}

TEST_CASE("definition and component formula of L_3 agree") {
  for (int n : {1, 2}) {
    const auto std_ops = fiber::lambda_ops(fiber::standard_kahler_form(n));
    for (std::uint64_t seed : {11ull, 12ull}) {
      const auto sig = fiber::lambda_ops(fiber::random_sigma(n, seed));
      const Matrix bracket =
          0.5 * (std_ops.plus * sig.minus - sig.minus * std_ops.plus);
      CHECK(max_abs(Matrix(bracket - sig.three)) < 1e-13);
    }
  }
}

TEST_CASE("su(2) commutators close for the standard and random forms") {
  for (int n : {1, 2, 3}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
      CHECK(fiber::su2_commutator_defect(n, seed) < 1e-12);
  }
}

TEST_CASE("grading operator acts by (p+q-n)/2") {
  for (int n : {1, 2, 3}) {
    CHECK(fiber::lambda3_grading_check(n));
    CHECK(fiber::lambda3_grading_defect(n) < 1e-12);
  }
}

TEST_CASE("rotations are unitary") {
  for (int n : {1, 2}) {
    const int dim = fiber::fiber_dimension(n);
    const Matrix id = Matrix::Identity(dim, dim);
    for (int a : {1, 2, 3}) {
      for (double alpha : {0.3, -std::numbers::pi / 2, 1.9}) {
        const Matrix s = fiber::su2_rotation(a, alpha, n);
        CHECK(max_abs(Matrix(s * s.adjoint() - id)) < 1e-12);
      }
    }
  }
}

TEST_CASE("the two flat-model couplings are conjugate under a quarter turn") {
  // n = 1, unit weight: the B coupling equals 2 L_1 of the standard form
  const auto l = fiber::lambda_ops(fiber::standard_kahler_form(1));
  const Matrix b1 = fiber::fermion_coupling_b({1});
  CHECK(max_abs(Matrix(b1 - 2.0 * l.one)) < 1e-14);

  for (const auto& weights : {std::vector<int>{1}, {-2}, {3, -1}, {2, 2}}) {
    const int n = static_cast<int>(weights.size());
    const Matrix b = fiber::fermion_coupling_b(weights);
    const Matrix c = fiber::fermion_coupling_c(weights);
    CHECK(max_abs(Matrix(b - b.adjoint())) < 1e-14);
    CHECK(max_abs(Matrix(c - c.adjoint())) < 1e-14);
    const Matrix s = fiber::su2_rotation(2, -std::numbers::pi / 2, n);
    CHECK(max_abs(Matrix(s.adjoint() * c * s - b)) < 1e-12);
  }
}
