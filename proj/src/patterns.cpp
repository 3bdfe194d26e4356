#include "amacee/patterns.hpp"

#include <algorithm>
#include <cmath>

namespace amacee {

double subblock_weight(int k, double alpha) {
  if (k < 1) throw std::invalid_argument("subblock_weight: k is 1-based");
  return (k % 2 == 1) ? 1.0 - alpha : alpha;
}

BetaCoefficients beta_coefficients(int L, int j, double alpha) {
  if (L < 1) throw std::invalid_argument("beta_coefficients: L must be >= 1");
  if (j != 1 && j != 2) throw std::invalid_argument("beta_coefficients: j must be 1 or 2");
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("beta_coefficients: alpha must be in [0,1]");
  BetaCoefficients b;
  if (L % 2 == 1) {
    b.b12 = (L - 1) / 2.0;
    if (j == 1)
      b.b1 = 1.0;
    else
      b.b2 = 1.0;
  } else if (j == 1) {
    b.b1 = b.b2 = 1.0 - alpha;
    b.b12 = alpha + L / 2.0 - 1.0;
  } else {
    b.b1 = b.b2 = alpha;
    b.b12 = L / 2.0 - alpha;
  }
  return b;
}

IrreducibleSets irreducible_sets(int k0, int L) {
  if (k0 < 1 || L < 1) throw std::invalid_argument("irreducible_sets: bad support");
  IrreducibleSets s;
  s.j = (k0 % 2 == 1) ? 1 : 2;
  for (int k = k0 + 1; k < k0 + L; ++k) s.s12.insert(k);
  // endpoint ownership: an odd first subblock is sender 1's, an odd last
  // subblock sender 2's, and vice versa for even ones
  auto owner_first = (k0 % 2 == 1) ? &s.s1 : &s.s2;
  auto owner_last = ((k0 + L) % 2 == 1) ? &s.s2 : &s.s1;
  owner_first->insert(k0);
  owner_last->insert(k0 + L);
  return s;
}

PatternExponent pattern_exponent(const ExponentQuery& q, const SolverConfig& cfg) {
  if (q.r1 < 0.0 || q.r2 < 0.0)
    throw std::invalid_argument("pattern_exponent: rates must be nonnegative");
  BetaCoefficients b = beta_coefficients(q.L, q.j, q.alpha);
  double r = b.b1 * q.r1 + b.b2 * q.r2 + b.b12 * (q.r1 + q.r2);
  Joint3 p = compose(Joint2::product(q.px, q.py), q.w);
  auto split = solve_case_split(p, {q.px, q.py}, b.as_array(), r, cfg);
  return {split.exponent, split.regime, r, split.r_hat, split.r_zero};
}

EnvelopeResult envelope_exponent(const ExponentQuery& q_template, int M,
                                 const SolverConfig& cfg) {
  if (M < 1) throw std::invalid_argument("envelope_exponent: M must be >= 1");
  EnvelopeResult best;
  best.value = kInf;
  ExponentQuery q = q_template;
  for (int L = 1; L <= M; ++L) {
    for (int j = 1; j <= 2; ++j) {
      q.L = L;
      q.j = j;
      PatternExponent e = pattern_exponent(q, cfg);
      if (e.value < best.value - 1e-9) {
        best.value = e.value;
        best.dominant_L = L;
        best.dominant_j = j;
        best.regime = e.regime;
        best.ties = {{L, j}};
      } else if (e.value <= best.value + 1e-9) {
        best.ties.emplace_back(L, j);
        if (e.value < best.value) best.value = e.value;
      }
    }
  }
  return best;
}

SweepResult rate_sweep(const ExponentQuery& q_template, double r_start,
                       double r_stop, double r_step, int M, int K,
                       const SolverConfig& cfg) {
  if (r_step <= 0.0 || r_stop < r_start)
    throw std::invalid_argument("rate_sweep: grid must be monotone");
  if (K < 2) throw std::invalid_argument("rate_sweep: K must be >= 2");
  SweepResult out;
  out.K = K;
  out.M = M;
  out.alpha = q_template.alpha;
  int npoints = static_cast<int>(std::floor((r_stop - r_start) / r_step + 1e-9)) + 1;
  out.rows.resize(npoints);

  parallel_for(npoints, [&](std::size_t i) {
    double rate = r_start + static_cast<double>(i) * r_step;
    SweepRow& row = out.rows[i];
    row.rate = rate;
    row.rate_eff = rate * (1.0 - 1.0 / K);
    ExponentQuery q = q_template;
    q.r1 = q.r2 = rate;
    try {
      EnvelopeResult env = envelope_exponent(q, M, cfg);
      row.exponent = env.value;
      row.dominant_L = env.dominant_L;
      row.dominant_j = env.dominant_j;
      row.regime = env.regime;
      row.ties = std::move(env.ties);
    } catch (const std::exception& e) {
      row.error = true;
      row.error_message = e.what();
    }
  }, cfg.threads);

  for (int i = 0; i + 1 < npoints; ++i) {
    const SweepRow& a = out.rows[i];
    const SweepRow& b = out.rows[i + 1];
    if (!a.error && !b.error && a.exponent > 0.0 && b.exponent == 0.0) {
      out.has_r_sup = true;
      out.r_sup_nominal = 0.5 * (a.rate + b.rate);
      out.r_sup_effective = out.r_sup_nominal * (1.0 - 1.0 / K);
      break;
    }
  }
  return out;
}

double general_pattern_exponent(const std::set<int>& s1, const std::set<int>& s2,
                                const std::set<int>& s12, double alpha,
                                const Dist& px, const Dist& py, const MacChannel& w,
                                double r1, double r2, int K,
                                const SolverConfig& cfg) {
  if (K < 2) throw std::invalid_argument("general_pattern_exponent: K must be >= 2");
  auto check = [&](const std::set<int>& s) {
    for (int k : s)
      if (k < 1 || k > 2 * K)
        throw std::invalid_argument("general_pattern_exponent: index outside [2K]");
  };
  check(s1);
  check(s2);
  check(s12);
  for (int k : s1)
    if (s2.count(k) || s12.count(k))
      throw std::invalid_argument("general_pattern_exponent: overlapping sets");
  for (int k : s2)
    if (s12.count(k))
      throw std::invalid_argument("general_pattern_exponent: overlapping sets");

  auto weight = [&](const std::set<int>& s) {
    double b = 0.0;
    for (int k : s) b += subblock_weight(k, alpha);
    return b;
  };
  std::array<double, 3> betas{weight(s1), weight(s2), weight(s12)};
  double r = betas[0] * r1 + betas[1] * r2 + betas[2] * (r1 + r2);
  Joint3 p = compose(Joint2::product(px, py), w);
  return solve_case_split(p, {px, py}, betas, r, cfg).exponent;
}

namespace {

double envelope_value(const ExponentQuery& q_template, double alpha, int M,
                      const SolverConfig& cfg) {
  ExponentQuery q = q_template;
  q.alpha = alpha;
  return envelope_exponent(q, M, cfg).value;
}

// golden-section refinement of an extremum bracketed on [lo, hi]
template <typename F>
std::pair<double, double> golden_max(const F& f, double lo, double hi, int iters) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace

BestWorstResult best_worst_delay(const ExponentQuery& q_template, int K,
                                 double alpha_step, const SolverConfig& cfg) {
  if (K < 2) throw std::invalid_argument("best_worst_delay: K must be >= 2");
  BestWorstResult res;
  int n = static_cast<int>(std::round(1.0 / alpha_step));

  double worst_val = kInf, worst_alpha = 0.0;
  double best_val = -kInf, best_alpha = 0.0;
  std::vector<double> worst_grid(n + 1), best_grid(n + 1);
  parallel_for(n + 1, [&](std::size_t k) {
    double a = std::min(1.0, k * alpha_step);
    worst_grid[k] = envelope_value(q_template, a, 2 * K - 2, cfg);
    best_grid[k] = envelope_value(q_template, a, K, cfg);
  }, cfg.threads);
  for (int k = 0; k <= n; ++k) {
    double a = std::min(1.0, k * alpha_step);
    if (worst_grid[k] < worst_val) {
      worst_val = worst_grid[k];
      worst_alpha = a;
    }
    if (best_grid[k] > best_val) {
      best_val = best_grid[k];
      best_alpha = a;
    }
  }

  auto neg_worst = [&](double a) {
    return -envelope_value(q_template, a, 2 * K - 2, cfg);
  };
  auto best_fn = [&](double a) { return envelope_value(q_template, a, K, cfg); };

  auto [wa, wv] = golden_max(neg_worst, std::max(0.0, worst_alpha - alpha_step),
                             std::min(1.0, worst_alpha + alpha_step), 30);
  auto [ba, bv] = golden_max(best_fn, std::max(0.0, best_alpha - alpha_step),
                             std::min(1.0, best_alpha + alpha_step), 30);
  res.worst = std::min(worst_val, -wv);
  res.worst_alpha = (-wv <= worst_val) ? wa : worst_alpha;
  res.best = std::max(best_val, bv);
  res.best_alpha = (bv >= best_val) ? ba : best_alpha;
  return res;
}

}  // namespace amacee
