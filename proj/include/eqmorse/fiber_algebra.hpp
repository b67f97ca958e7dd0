#pragma once

// Finite-dimensional exterior-algebra operator calculus at a point: wedge
// and contraction operators on forms over C^n, the su(2) family built from a
// (1,1)-form, and the zero-order couplings of the two flat model operators.
//
// Basis convention for the 4^n-dimensional space of (p,q)-forms: a monomial
// is indexed by a pair of bitmasks (s, sbar) over {0..n-1} and stands for
//   dz^{i1} ^ ... ^ dz^{ip} ^ dzbar^{j1} ^ ... ^ dzbar^{jq}
// with ascending factors inside each block and the holomorphic block first.
// The basis index is (s << n) | sbar. Operator signs follow from moving a
// factor to its slot past earlier ones; anti-holomorphic operators cross the
// whole holomorphic block first.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace eqmorse::fiber {

using Matrix = Eigen::MatrixXcd;

int fiber_dimension(int n);  // 4^n

// Bidegree of a basis monomial.
int bidegree_p(int n, int index);
int bidegree_q(int n, int index);

struct FermionOps {
  int n = 0;
  std::vector<Matrix> wedge;         // e^k: wedge by dz^k
  std::vector<Matrix> wedge_bar;     // e^kbar: wedge by dzbar^k
  std::vector<Matrix> contract;      // i_k: contraction dual to dz^k
  std::vector<Matrix> contract_bar;  // i_kbar: contraction dual to dzbar^k
};

// Supported for 1 <= n <= 4. The operators satisfy
//   {e^k, i_l} = delta_{kl},  {e^kbar, i_lbar} = delta_{kl},
// and every other anti-commutator vanishes.
FermionOps build_fermion_ops(int n);

// Largest violation of the anti-commutation table over all operator pairs.
double anticommutation_defect(int n);

// A real-valued (1,1)-form at the point: entries sigma_{k lbar} with
// i*sigma Hermitian (purely imaginary diagonal). The metric is normalized
// to the identity, so index raising swaps barred and unbarred contractions.
struct SigmaForm {
  int n = 0;
  Matrix entries;  // n x n, sigma_{k lbar}

  SigmaForm(int n_, Matrix entries_);
};

SigmaForm standard_kahler_form(int n);        // sigma_{k lbar} = i delta_{kl}
SigmaForm random_sigma(int n, std::uint64_t seed);

struct LambdaOps {
  Matrix plus;   // sigma_{k lbar} e^k e^lbar
  Matrix minus;  // adjoint of plus
  Matrix one;    // (plus + minus)/2
  Matrix two;    // -i (plus - minus)/2
  Matrix three;  // -(i/4) sigma_{k lbar} ([e^k, i^lbar] + [e^lbar, i^k])
};

LambdaOps lambda_ops(const SigmaForm& sigma);

// Largest max-entry defect over both commutator families,
//   [L_a, L_b] = i eps_{abc} L_c           (standard form)
//   [L_a, L_b(sigma)] = i eps_{abc} L_c(sigma)  (triplet law, random sigma)
// for the standard form and one seeded random sigma.
double su2_commutator_defect(int n, std::uint64_t seed = 1);

// L_3 of the standard form is diagonal with eigenvalue (p+q-n)/2 on the
// (p,q) monomials, and [L_3, L_pm] = pm L_pm. Returns true when both hold
// (the eigenvalues exactly, the commutators to 1e-12).
bool lambda3_grading_check(int n);
double lambda3_grading_defect(int n);

// Group elements S_a(alpha) = exp(i alpha L_a) of the standard form.
Matrix su2_rotation(int a, double alpha, int n);

// Zero-order fiber couplings of the two flat model operators, per unit of
// the deformation parameter:
//   B: sum_k i w_k (e^k e^kbar - i^k i^kbar)   (raised indices)
//   C: -(1/2) sum_k w_k ([e^k, i_k] + [e^kbar, i_kbar])
// Both are Hermitian; conjugation by S_2(-pi/2) carries C to B.
Matrix fermion_coupling_b(const std::vector<int>& weights);
Matrix fermion_coupling_c(const std::vector<int>& weights);

// Diagonal circle action on the fiber: the monomial (s, sbar) picks up the
// phase e^{i theta (sum_{sbar} w_k - sum_s w_k)}.
Matrix fiber_rotation(const std::vector<int>& weights, double theta);

// exp(scale * H) for Hermitian H, via the spectral decomposition.
Matrix hermitian_exp(const Matrix& h, std::complex<double> scale);

}  // namespace eqmorse::fiber
