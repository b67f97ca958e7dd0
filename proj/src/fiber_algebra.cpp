#include "eqmorse/fiber_algebra.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace eqmorse::fiber {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

int popcount_below(unsigned mask, int k) {
  return std::popcount(mask & ((1u << k) - 1u));
}

}  // namespace

int fiber_dimension(int n) { return 1 << (2 * n); }

int bidegree_p(int n, int index) { return std::popcount(static_cast<unsigned>(index) >> n); }

int bidegree_q(int n, int index) {
  return std::popcount(static_cast<unsigned>(index) & ((1u << n) - 1u));
}

FermionOps build_fermion_ops(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("build_fermion_ops: n must be in 1..4");
  const int dim = fiber_dimension(n);
  FermionOps ops;
  ops.n = n;
  ops.wedge.assign(n, Matrix::Zero(dim, dim));
  ops.wedge_bar.assign(n, Matrix::Zero(dim, dim));
  ops.contract.assign(n, Matrix::Zero(dim, dim));
  ops.contract_bar.assign(n, Matrix::Zero(dim, dim));
  for (int idx = 0; idx < dim; ++idx) {
    const unsigned s = static_cast<unsigned>(idx) >> n;
    const unsigned sb = static_cast<unsigned>(idx) & ((1u << n) - 1u);
    for (int k = 0; k < n; ++k) {
      const unsigned bit = 1u << k;
      // holomorphic block: signs count earlier dz factors only
      const double hsign = popcount_below(s, k) % 2 == 0 ? 1.0 : -1.0;
      if (!(s & bit)) {
        const int to = static_cast<int>(((s | bit) << n) | sb);
        ops.wedge[k](to, idx) = hsign;
      } else {
        const int to = static_cast<int>(((s & ~bit) << n) | sb);
        ops.contract[k](to, idx) = hsign;
      }
      // anti-holomorphic block: cross the whole holomorphic block first
      const double bsign =
          (std::popcount(s) + popcount_below(sb, k)) % 2 == 0 ? 1.0 : -1.0;
      if (!(sb & bit)) {
        const int to = static_cast<int>((s << n) | (sb | bit));
        ops.wedge_bar[k](to, idx) = bsign;
      } else {
        const int to = static_cast<int>((s << n) | (sb & ~bit));
        ops.contract_bar[k](to, idx) = bsign;
      }
    }
  }
  return ops;
}

double anticommutation_defect(int n) {
  const auto ops = build_fermion_ops(n);
  const int dim = fiber_dimension(n);
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix* families[4] = {ops.wedge.data(), ops.wedge_bar.data(), ops.contract.data(),
                               ops.contract_bar.data()};
  auto anti = [](const Matrix& a, const Matrix& b) { return Matrix(a * b + b * a); };
  double defect = 0.0;
  for (int fa = 0; fa < 4; ++fa) {
    for (int fb = fa; fb < 4; ++fb) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Matrix expected = Matrix::Zero(dim, dim);
          const bool pairs = (fa == 0 && fb == 2) || (fa == 1 && fb == 3);
          if (pairs && k == l) expected = id;
          defect = std::max(
              defect, (anti(families[fa][k], families[fb][l]) - expected).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  return defect;
}

SigmaForm::SigmaForm(int n_, Matrix entries_) : n(n_), entries(std::move(entries_)) {
  if (entries.rows() != n || entries.cols() != n)
    throw std::invalid_argument("SigmaForm: entry matrix must be n x n");
  const Matrix h = kI * entries;
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("SigmaForm: i*sigma must be Hermitian");
}

SigmaForm standard_kahler_form(int n) {
  return SigmaForm(n, kI * Matrix::Identity(n, n));
}

SigmaForm random_sigma(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix h(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) h(r, c) = std::complex<double>(dist(rng), dist(rng));
  const Matrix herm = (h + h.adjoint()) / 2.0;  // i*sigma
  return SigmaForm(n, -kI * herm);
}

LambdaOps lambda_ops(const SigmaForm& sigma) {
  const auto ops = build_fermion_ops(sigma.n);
  const int dim = fiber_dimension(sigma.n);
  LambdaOps l{Matrix::Zero(dim, dim), Matrix::Zero(dim, dim), Matrix::Zero(dim, dim),
              Matrix::Zero(dim, dim), Matrix::Zero(dim, dim)};
  // identity metric: i^k = i_kbar and i^lbar = i_l
  for (int k = 0; k < sigma.n; ++k) {
    for (int m = 0; m < sigma.n; ++m) {
      const std::complex<double> c = sigma.entries(k, m);
      if (c == 0.0) continue;
      l.plus += c * ops.wedge[k] * ops.wedge_bar[m];
      l.minus -= c * ops.contract_bar[k] * ops.contract[m];
      l.three += (-kI / 4.0) * c *
                 (ops.wedge[k] * ops.contract[m] - ops.contract[m] * ops.wedge[k] +
                  ops.wedge_bar[m] * ops.contract_bar[k] - ops.contract_bar[k] * ops.wedge_bar[m]);
    }
  }
  l.one = (l.plus + l.minus) / 2.0;
  l.two = -kI / 2.0 * (l.plus - l.minus);
  return l;
}

namespace {

double commutator_defect(const LambdaOps& base, const LambdaOps& target) {
  const Matrix* a[3] = {&base.one, &base.two, &base.three};
  const Matrix* t[3] = {&target.one, &target.two, &target.three};
  double defect = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Matrix expected = Matrix::Zero(base.one.rows(), base.one.cols());
      // i eps_{abc} L_c
      const int k = 3 - i - j;
      if (i != j && k >= 0 && k <= 2) {
        const double eps = ((i + 1) % 3 == j) ? 1.0 : -1.0;
        expected = kI * eps * (*t[k]);
      }
      const Matrix comm = (*a[i]) * (*t[j]) - (*t[j]) * (*a[i]);
      defect = std::max(defect, (comm - expected).cwiseAbs().maxCoeff());
    }
  }
  return defect;
}

}  // namespace

double su2_commutator_defect(int n, std::uint64_t seed) {
  const auto std_ops = lambda_ops(standard_kahler_form(n));
  double defect = commutator_defect(std_ops, std_ops);
  const auto rnd_ops = lambda_ops(random_sigma(n, seed));
  defect = std::max(defect, commutator_defect(std_ops, rnd_ops));
  return defect;
}

double lambda3_grading_defect(int n) {
  const auto l = lambda_ops(standard_kahler_form(n));
  const int dim = fiber_dimension(n);
  double defect = 0.0;
  for (int idx = 0; idx < dim; ++idx) {
    const double expected = 0.5 * (bidegree_p(n, idx) + bidegree_q(n, idx) - n);
    for (int jdx = 0; jdx < dim; ++jdx) {
      const std::complex<double> want = idx == jdx ? expected : 0.0;
      defect = std::max(defect, std::abs(l.three(jdx, idx) - want));
    }
  }
  const Matrix c_plus = l.three * l.plus - l.plus * l.three - l.plus;
  const Matrix c_minus = l.three * l.minus - l.minus * l.three + l.minus;
  defect = std::max({defect, c_plus.cwiseAbs().maxCoeff(), c_minus.cwiseAbs().maxCoeff()});
  return defect;
}

bool lambda3_grading_check(int n) {
  const auto l = lambda_ops(standard_kahler_form(n));
  const int dim = fiber_dimension(n);
  for (int idx = 0; idx < dim; ++idx) {
    const double expected = 0.5 * (bidegree_p(n, idx) + bidegree_q(n, idx) - n);
    if (l.three(idx, idx) != std::complex<double>(expected, 0.0)) return false;
    for (int jdx = 0; jdx < dim; ++jdx)
      if (jdx != idx && l.three(jdx, idx) != 0.0) return false;
  }
  const Matrix c_plus = l.three * l.plus - l.plus * l.three - l.plus;
  const Matrix c_minus = l.three * l.minus - l.minus * l.three + l.minus;
  return c_plus.cwiseAbs().maxCoeff() < 1e-12 && c_minus.cwiseAbs().maxCoeff() < 1e-12;
}

Matrix su2_rotation(int a, double alpha, int n) {
  if (a < 1 || a > 3) throw std::invalid_argument("su2_rotation: a must be 1, 2 or 3");
  const auto l = lambda_ops(standard_kahler_form(n));
  const Matrix* pick[3] = {&l.one, &l.two, &l.three};
  return hermitian_exp(*pick[a - 1], kI * alpha);
}

Matrix fermion_coupling_b(const std::vector<int>& weights) {
  const int n = static_cast<int>(weights.size());
  const auto ops = build_fermion_ops(n);
  Matrix b = Matrix::Zero(fiber_dimension(n), fiber_dimension(n));
  for (int k = 0; k < n; ++k) {
    // raised indices: i^k = i_kbar, i^kbar = i_k
    b += kI * static_cast<double>(weights[static_cast<std::size_t>(k)]) *
         (ops.wedge[k] * ops.wedge_bar[k] - ops.contract_bar[k] * ops.contract[k]);
  }
  return b;
}

Matrix fermion_coupling_c(const std::vector<int>& weights) {
  const int n = static_cast<int>(weights.size());
  const auto ops = build_fermion_ops(n);
  Matrix c = Matrix::Zero(fiber_dimension(n), fiber_dimension(n));
  for (int k = 0; k < n; ++k) {
    const Matrix h = ops.wedge[k] * ops.contract[k] - ops.contract[k] * ops.wedge[k];
    const Matrix hb =
        ops.wedge_bar[k] * ops.contract_bar[k] - ops.contract_bar[k] * ops.wedge_bar[k];
    c -= 0.5 * static_cast<double>(weights[static_cast<std::size_t>(k)]) * (h + hb);
  }
  return c;
}

Matrix fiber_rotation(const std::vector<int>& weights, double theta) {
  const int n = static_cast<int>(weights.size());
  const int dim = fiber_dimension(n);
  Matrix r = Matrix::Zero(dim, dim);
  for (int idx = 0; idx < dim; ++idx) {
    const unsigned s = static_cast<unsigned>(idx) >> n;
    const unsigned sb = static_cast<unsigned>(idx) & ((1u << n) - 1u);
    double w = 0.0;
    for (int k = 0; k < n; ++k) {
      if (sb & (1u << k)) w += weights[static_cast<std::size_t>(k)];
      if (s & (1u << k)) w -= weights[static_cast<std::size_t>(k)];
    }
    r(idx, idx) = std::exp(kI * (theta * w));
  }
  return r;
}

Matrix hermitian_exp(const Matrix& h, std::complex<double> scale) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_exp: eigendecomposition failed");
  const auto& v = solver.eigenvectors();
  Eigen::VectorXcd d(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    d(i) = std::exp(scale * solver.eigenvalues()(i));
  return v * d.asDiagonal() * v.adjoint();
}

}  // namespace eqmorse::fiber
