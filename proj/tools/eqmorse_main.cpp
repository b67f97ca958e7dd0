// Command-line verifier: parses fixed-point model files, checks the series
// identities and inequalities they determine, and prints deterministic
// coefficient tables. Exit codes: 0 pass, 1 verified failure, 2 input error.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <iostream>
#include <string>
#include <vector>

#include "eqmorse/fiber_algebra.hpp"
#include "eqmorse/geometry.hpp"
#include "eqmorse/model_io.hpp"
#include "eqmorse/oscillator.hpp"

namespace {

using namespace eqmorse;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

std::string complex_string(std::complex<double> v) {
  return "(" + float_string(v.real()) + ", " + float_string(v.imag()) + ")";
}

Side parse_side(const std::string& s) { return s == "plus" ? Side::Plus : Side::Minus; }

struct MinCoefficient {
  double value = 0.0;
  int degree = 0;
  Weight weight = 0;
  bool seen = false;
};

MinCoefficient min_coefficient(const FloatTPoly& p) {
  MinCoefficient out;
  for (int k = 0; k <= p.degree_bound(); ++k) {
    const auto& c = p[k];
    if (c.support_empty()) continue;
    for (Weight m = c.support_lo(); m <= c.support_hi(); ++m) {
      const double v = c.at(m);
      if (!out.seen || v < out.value) {
        out = {v, k, m, true};
      }
    }
  }
  return out;
}

int run_verify(const std::string& file, const std::string& side_name, Weight order, int weak) {
  const auto parsed = load_model_file(file);
  if (!parsed.cohomology)
    throw ModelError(file + ": verify needs a cohomology block");
  const Side side = parse_side(side_name);
  if (weak > parsed.model.dim)
    throw ModelError("weak degree " + std::to_string(weak) + " out of range 0.." +
                     std::to_string(parsed.model.dim));
  std::cout << "model: " << file << "\n";
  std::cout << "dim: " << parsed.model.dim << "  fixed points: " << parsed.model.points.size()
            << "\n";
  if (weak >= 0) {
    std::cout << "check: weak  degree: " << weak << "  side: " << side_name
              << "  order: " << order << "\n";
    std::cout << "selector: fixed points with "
              << (side == Side::Minus ? "n - orientation_index == k" : "orientation_index == k")
              << "\n";
    const auto v = verify_weak(parsed.model, *parsed.cohomology, weak, side, order);
    std::cout << "bound window " << window_string(v.bound) << "\n";
    print_character(std::cout, v.bound);
    if (v.ok) {
      std::cout << "verdict: PASS\n";
      return kPass;
    }
    std::cout << "witness: weight " << v.weight << ", cohomology " << rational_string(v.lhs)
              << ", bound " << rational_string(v.rhs) << "\n";
    std::cout << "verdict: FAIL\n";
    return kFail;
  }
  std::cout << "check: strong  side: " << side_name << "  order: " << order << "\n";
  const auto v = verify_strong(parsed.model, *parsed.cohomology, side, order);
  std::cout << "remainder window " << window_string(v.remainder) << "\n";
  print_character(std::cout, v.remainder);
  std::cout << "divisible: " << (v.divisible ? "yes" : "no") << "\n";
  if (v.nonneg.ok) {
    std::cout << "nonnegative: yes\n";
  } else {
    std::cout << "nonnegative: no (t^" << v.nonneg.degree << ", weight " << v.nonneg.weight
              << ", value " << rational_string(v.nonneg.value) << ")\n";
  }
  std::cout << "quotient:\n";
  print_tpoly(std::cout, v.quotient);
  std::cout << "verdict: " << (v.pass() ? "PASS" : "FAIL") << "\n";
  return v.pass() ? kPass : kFail;
}

int run_ab(const std::string& file, Weight order) {
  const auto parsed = load_model_file(file);
  std::cout << "model: " << file << "\n";
  std::cout << "check: alternating fixed-point sum  order: " << order << "\n";
  const auto series = atiyah_bott_series(parsed.model, order);
  std::cout << "series window " << window_string(series) << "\n";
  print_character(std::cout, series);
  if (!parsed.cohomology) {
    std::cout << "no cohomology block; nothing to verify\n";
    return kPass;
  }
  const auto rep = verify_atiyah_bott(parsed.model, *parsed.cohomology, order);
  std::cout << "expected (alternating cohomology):\n";
  print_character(std::cout, rep.expected);
  if (rep.ok) {
    std::cout << "verdict: PASS\n";
    return kPass;
  }
  std::cout << "witness: weight " << rep.weight << ", series " << rational_string(rep.lhs)
            << ", expected " << rational_string(rep.rhs) << "\n";
  std::cout << "verdict: FAIL\n";
  return kFail;
}

int run_heat(int lambda, double T, double theta, int degree, bool oracle, int cutoff,
             double tol) {
  const osc::OscillatorSpec spec(lambda, T, theta, degree, cutoff);
  std::cout << "lambda: " << lambda << "  T: " << float_string(T)
            << "  theta: " << float_string(theta) << "  degree: " << degree << "\n";
  const auto closed = osc::mehler_trace_factor(spec);
  std::cout << "closed form: " << complex_string(closed.value) << "\n";
  if (!oracle) return kPass;
  const auto spectral = osc::spectral_trace_factor(spec);
  std::cout << "spectral oracle: " << complex_string(spectral.value) << "  cutoff: " << spec.cutoff
            << "  tail bound: " << float_string(spectral.tail_bound) << "\n";
  const double diff = std::abs(closed.value - spectral.value);
  std::cout << "|difference|: " << float_string(diff) << "\n";
  std::cout << "verdict: " << (diff <= tol ? "PASS" : "FAIL") << "\n";
  return diff <= tol ? kPass : kFail;
}

int run_scan_t(const std::string& file, const std::vector<double>& temps, Weight order,
               double tol, double tail_eps) {
  const auto parsed = load_model_file(file);
  if (!parsed.cohomology)
    throw ModelError(file + ": scan-t needs a cohomology block");
  std::cout << "model: " << file << "\n";
  std::cout << "order: " << order << "  tail-eps: " << float_string(tail_eps) << "\n";
  bool all_ok = true;
  for (double T : temps) {
    if (!(T > 0)) throw ModelError("scan-t: temperatures must be positive");
    const auto v = finite_T_verdict(parsed.model, *parsed.cohomology, T, order, tol, tail_eps);
    const auto mc = min_coefficient(v.quotient);
    const double dist = finite_T_distance(parsed.model, T, order, 1e-30);
    std::cout << "T = " << float_string(T) << "\n";
    if (mc.seen) {
      std::cout << "  min quotient coefficient: " << float_string(mc.value) << "  (t^"
                << mc.degree << ", weight " << mc.weight << ")\n";
    } else {
      std::cout << "  min quotient coefficient: none (zero quotient)\n";
    }
    std::cout << "  max |remainder|: " << float_string(v.remainder.max_abs_coefficient()) << "\n";
    std::cout << "  distance to limit: " << float_string(dist) << "\n";
    const bool ok = v.nonneg.ok && v.divisible;
    std::cout << "  nonnegative within tolerance: " << (ok ? "yes" : "no") << "\n";
    all_ok = all_ok && ok;
  }
  std::cout << "verdict: " << (all_ok ? "PASS" : "FAIL") << "\n";
  return all_ok ? kPass : kFail;
}

int run_algebra(int n, std::uint64_t seed, double tol) {
  std::cout << "n: " << n << "  seeds: " << seed << ".." << seed + 9 << "\n";
  double su2 = 0.0;
  for (std::uint64_t s = seed; s < seed + 10; ++s)
    su2 = std::max(su2, fiber::su2_commutator_defect(n, s));
  const double anti = fiber::anticommutation_defect(n);
  const double grading = fiber::lambda3_grading_defect(n);
  const bool exact = fiber::lambda3_grading_check(n);
  std::cout << "anti-commutation defect: " << float_string(anti) << "\n";
  std::cout << "su(2) commutator defect: " << float_string(su2) << "\n";
  std::cout << "grading eigenvalues exact: " << (exact ? "yes" : "no") << "\n";
  std::cout << "grading commutator defect: " << float_string(grading) << "\n";
  const bool ok = exact && anti < 1e-14 && su2 < tol && grading < tol;
  std::cout << "verdict: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-point series verifier for circle actions"};
  app.require_subcommand(1);

  std::string model_file, side_name = "minus";
  Weight order = 64;
  double tol = 1e-9, tail_eps = 1e-12, T = 1.0, theta = 0.0;
  int weak = -1, lambda = 1, degree = 0, cutoff = 0, n = 1;
  std::uint64_t seed = 1;
  bool oracle = false;
  std::vector<double> temps;

  auto* verify = app.add_subcommand("verify", "strong or weak inequality verdict + slack table");
  verify->add_option("--model", model_file, "model file")->required();
  verify->add_option("--side", side_name)->check(CLI::IsMember({"plus", "minus"}));
  verify->add_option("--order", order, "expansion order");
  verify->add_option("--weak", weak, "check the weak bound for this degree only");

  auto* ab = app.add_subcommand("ab", "alternating fixed-point sum, verified when possible");
  ab->add_option("--model", model_file, "model file")->required();
  ab->add_option("--order", order, "expansion order");

  auto* heat = app.add_subcommand("heat", "single-factor heat trace, closed form vs oracle");
  heat->add_option("--lambda", lambda, "rotation weight")->required();
  heat->add_option("--T", T, "deformation parameter")->required();
  heat->add_option("--theta", theta, "angle");
  heat->add_option("--degree", degree, "form degree 0 or 1")->check(CLI::IsMember({0, 1}));
  heat->add_flag("--oracle", oracle, "also run the spectral oracle");
  heat->add_option("--cutoff", cutoff, "spectral level bound (0 = automatic)");
  heat->add_option("--tol", tol);

  auto* scan = app.add_subcommand("scan-t", "finite-temperature slack minima and distances");
  scan->add_option("--model", model_file, "model file")->required();
  scan->add_option("--T", temps, "temperatures")->required()->delimiter(',');
  scan->add_option("--order", order, "expansion order");
  scan->add_option("--tol", tol);
  scan->add_option("--tail-eps", tail_eps);

  auto* algebra = app.add_subcommand("algebra", "operator-algebra defect report");
  algebra->add_option("--n", n, "fiber parameter")->required()->check(CLI::Range(1, 4));
  algebra->add_option("--seed", seed, "base seed for random forms");
  algebra->add_option("--tol", tol)->default_val(1e-12);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (verify->parsed()) return run_verify(model_file, side_name, order, weak);
    if (ab->parsed()) return run_ab(model_file, order);
    if (heat->parsed()) return run_heat(lambda, T, theta, degree, oracle, cutoff, tol);
    if (scan->parsed()) return run_scan_t(model_file, temps, order, tol, tail_eps);
    if (algebra->parsed()) return run_algebra(n, seed, tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
