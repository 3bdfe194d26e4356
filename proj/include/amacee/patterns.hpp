#ifndef AMACEE_PATTERNS_HPP_
#define AMACEE_PATTERNS_HPP_

#include <set>
#include <utility>
#include <vector>

#include "amacee/prob.hpp"
#include "amacee/solver.hpp"

namespace amacee {

/// Weights attached to the three minimizing distributions of an error
/// pattern; derived deterministically from (L, j, alpha).
struct BetaCoefficients {
  double b1 = 0.0, b2 = 0.0, b12 = 0.0;
  std::array<double, 3> as_array() const { return {b1, b2, b12}; }
};

/// Subblock weight e_k: 1-alpha for odd k, alpha for even k (k is 1-based).
double subblock_weight(int k, double alpha);

/// Coefficients of the irreducible pattern of length L starting with
/// sender j, at subblock-delay fraction alpha.
BetaCoefficients beta_coefficients(int L, int j, double alpha);

/// The subblock index sets (S1, S2, S12) of the irreducible pattern with
/// support {k0, .., k0+L}; j is determined by the parity of k0.
struct IrreducibleSets {
  std::set<int> s1, s2, s12;
  int j = 1;
};
IrreducibleSets irreducible_sets(int k0, int L);

struct ExponentQuery {
  double alpha = 0.5;
  Dist px, py;
  MacChannel w;
  double r1 = 0.0, r2 = 0.0;
  int L = 1, j = 1;
};

struct PatternExponent {
  double value = 0.0;
  Regime regime = Regime::kZero;
  double r = 0.0;       // beta-weighted rate combination
  double r_hat = 0.0;   // linear/curved threshold
  double r_zero = 0.0;  // positivity boundary
};

/// E^alpha(L,j) for the query's channel, inputs and rate pair.
PatternExponent pattern_exponent(const ExponentQuery& q, const SolverConfig& cfg = {});

struct EnvelopeResult {
  double value = 0.0;
  int dominant_L = 1;
  int dominant_j = 1;
  Regime regime = Regime::kZero;
  // all (L,j) within 1e-9 of the minimum, to make grid artifacts visible
  std::vector<std::pair<int, int>> ties;
};

/// E^{alpha,M}: minimum of E^alpha(L,j) over L in [M], j in {1,2};
/// dominant pattern ties break toward smaller L, then j=1.
EnvelopeResult envelope_exponent(const ExponentQuery& q_template, int M,
                                 const SolverConfig& cfg = {});

struct SweepRow {
  double rate = 0.0;       // nominal per-sender rate (R1 = R2 = rate)
  double rate_eff = 0.0;   // rate * (1 - 1/K)
  double exponent = 0.0;
  int dominant_L = 1;
  int dominant_j = 1;
  Regime regime = Regime::kZero;
  std::vector<std::pair<int, int>> ties;
  bool error = false;      // solver failure on this row
  std::string error_message;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int K = 0;
  int M = 0;
  double alpha = 0.5;
  // midpoint of the bracketing grid cells around the zero crossing
  bool has_r_sup = false;
  double r_sup_nominal = 0.0;
  double r_sup_effective = 0.0;
};

/// Sweeps the symmetric rate ray R1 = R2 = R over [r_start, r_stop] in
/// steps of r_step, evaluating the envelope at each grid point.
SweepResult rate_sweep(const ExponentQuery& q_template, double r_start,
                       double r_stop, double r_step, int M, int K,
                       const SolverConfig& cfg = {});

/// E^alpha(S) for a general error pattern S = (S1, S2, S12): disjoint
/// subsets of [2K]; beta_i = sum of e_k over S_i.
double general_pattern_exponent(const std::set<int>& s1, const std::set<int>& s2,
                                const std::set<int>& s12, double alpha,
                                const Dist& px, const Dist& py, const MacChannel& w,
                                double r1, double r2, int K,
                                const SolverConfig& cfg = {});

struct BestWorstResult {
  double worst = 0.0;       // min over alpha of E^{alpha, 2K-2}
  double worst_alpha = 0.0;
  double best = 0.0;        // max over alpha of E^{alpha, K}
  double best_alpha = 0.0;
};

/// Worst-delay and best-delay exponent guarantees at fixed inputs and rates;
/// alpha optimized by grid search plus golden-section refinement.
BestWorstResult best_worst_delay(const ExponentQuery& q_template, int K,
                                 double alpha_step = 0.01,
                                 const SolverConfig& cfg = {});

}  // namespace amacee

#endif  // AMACEE_PATTERNS_HPP_
