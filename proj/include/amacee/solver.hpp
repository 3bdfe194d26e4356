#ifndef AMACEE_SOLVER_HPP_
#define AMACEE_SOLVER_HPP_

#include <array>
#include <map>
#include <optional>

#include "amacee/prob.hpp"

namespace amacee {

/// Fixed single-letter marginals defining the feasible set
/// P* = { V : V^X = px, V^Y = py }.
struct MarginalConstraint {
  Dist px;
  Dist py;
};

struct SolverConfig {
  double objective_tol = 1e-11;   // bits; stop when the decrease falls below
  double marginal_tol = 1e-9;     // L-inf residual on the fixed marginals
  int max_iterations = 100000;
  double r_tol = 1e-8;            // bits; bisection target on sum_i beta_i I^i
  int max_bisections = 60;
  double oracle_step = 0.002;
  unsigned threads = 0;           // 0 = hardware default
};

struct SubproblemSolution {
  Joint3 v_star;
  double divergence_term = 0.0;  // D(V*||P) in bits
  double info_term = 0.0;        // I^i(V*) in bits
  int iterations = 0;
  double residual = 0.0;
  double objective(double lambda) const {
    return divergence_term + lambda * info_term;
  }
};

/// Minimizes D(V||p_xyz) + lambda * I_V^which over V in P*.
///
/// The minimizer solves the stationarity condition
///   V^(1+lambda) prop p_xyz * G^lambda * A(x) B(y),
/// where G is the marginal fixed by `which` (YZ, XZ or Z) and A, B are the
/// marginal multipliers, realized by alternating the exponential-family
/// update with iterative proportional fitting; steps that fail to decrease
/// the objective are halved toward the previous iterate.
///
/// lambda in [0,1] covers the Lagrangian range of the error-exponent case
/// split; larger lambda values are accepted (used by the sphere-packing
/// wrapper).
SubproblemSolution minimize_div_plus_info(const Joint3& p_xyz,
                                          const MarginalConstraint& constraint,
                                          int which, double lambda,
                                          const SolverConfig& cfg = {});

enum class Regime { kZero, kLinear, kCurved };

struct CaseSplitResult {
  double exponent = 0.0;
  Regime regime = Regime::kZero;
  double r_hat = 0.0;          // sum_i beta_i I^i at the lambda=1 minimizers
  double r_zero = 0.0;         // sum_i beta_i I^i at P (positivity boundary)
  double lambda = 0.0;         // multiplier reached in the curved regime
  std::array<std::optional<SubproblemSolution>, 3> witnesses;  // i = 1,2,12
};

/// Evaluates the exponent min over V_1,V_2,V_12 in P* of
///   sum_i beta_i D(V_i||P) + | sum_i beta_i I^i(V_i) - r_target |^+
/// by its case split: zero when r_target >= sum beta_i I_P^i, affine with
/// slope -1 below r_hat, otherwise the constrained minimum reached by
/// bisecting the shared multiplier lambda in (0,1).
CaseSplitResult solve_case_split(const Joint3& p_xyz,
                                 const MarginalConstraint& constraint,
                                 const std::array<double, 3>& betas,
                                 double r_target, const SolverConfig& cfg = {});

/// Independent validation oracle: exhaustive grid search over the free
/// coordinates of the marginal polytope, refined down to `step`.
/// Requires |X||Y||Z| <= 12 and step >= 1e-3.
double brute_force_oracle(const Joint3& p_xyz,
                          const MarginalConstraint& constraint, int which,
                          double lambda, double step);

}  // namespace amacee

#endif  // AMACEE_SOLVER_HPP_
