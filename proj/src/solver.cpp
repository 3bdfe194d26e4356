#include "amacee/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace amacee {
namespace {

constexpr double kLn2 = 0.6931471805599453;

int which_slot(int which) {
  switch (which) {
    case 1: return 0;
    case 2: return 1;
    case 12: return 2;
  }
  throw std::invalid_argument("which must be 1, 2 or 12");
}

struct Shape {
  int nx, ny, nz;
  std::size_t cells() const { return static_cast<std::size_t>(nx) * ny * nz; }
  std::size_t idx(int x, int y, int z) const {
    return (static_cast<std::size_t>(x) * ny + y) * nz + z;
  }
};

double entropy_nats(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

double divergence_nats(const std::vector<double>& v, const std::vector<double>& p) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > 0.0) d += v[i] * std::log(v[i] / p[i]);
  return d > 0.0 ? d : 0.0;
}

// Everything below works on flat row-major tensors to keep the inner loops
// allocation-free where it matters.

struct Marginals {
  std::vector<double> mx, my, mz, myz, mxz;
};

void compute_marginals(const std::vector<double>& v, const Shape& s, Marginals* m) {
  m->mx.assign(s.nx, 0.0);
  m->my.assign(s.ny, 0.0);
  m->mz.assign(s.nz, 0.0);
  m->myz.assign(static_cast<std::size_t>(s.ny) * s.nz, 0.0);
  m->mxz.assign(static_cast<std::size_t>(s.nx) * s.nz, 0.0);
  std::size_t i = 0;
  for (int x = 0; x < s.nx; ++x)
    for (int y = 0; y < s.ny; ++y)
      for (int z = 0; z < s.nz; ++z, ++i) {
        double t = v[i];
        m->mx[x] += t;
        m->my[y] += t;
        m->mz[z] += t;
        m->myz[y * s.nz + z] += t;
        m->mxz[x * s.nz + z] += t;
      }
}

// I^which in nats
double info_nats(const std::vector<double>& v, const Shape& s, int which) {
  Marginals m;
  compute_marginals(v, s, &m);
  double hv = entropy_nats(v);
  if (which == 1) return entropy_nats(m.mx) + entropy_nats(m.myz) - hv;
  if (which == 2) return entropy_nats(m.my) + entropy_nats(m.mxz) - hv;
  return entropy_nats(m.mx) + entropy_nats(m.my) + entropy_nats(m.mz) - hv;
}

// L-inf distance of V's single-letter marginals from the constraint
double marginal_residual(const std::vector<double>& v, const Shape& s,
                         const std::vector<double>& px, const std::vector<double>& py) {
  double r = 0.0;
  for (int x = 0; x < s.nx; ++x) {
    double sum = 0.0;
    for (int y = 0; y < s.ny; ++y)
      for (int z = 0; z < s.nz; ++z) sum += v[s.idx(x, y, z)];
    r = std::max(r, std::fabs(sum - px[x]));
  }
  for (int y = 0; y < s.ny; ++y) {
    double sum = 0.0;
    for (int x = 0; x < s.nx; ++x)
      for (int z = 0; z < s.nz; ++z) sum += v[s.idx(x, y, z)];
    r = std::max(r, std::fabs(sum - py[y]));
  }
  return r;
}

// Alternating KL projection onto {V^X = px} and {V^Y = py}; exact for one
// marginal per pass, iterated until both fit.
void ipf(std::vector<double>* v, const Shape& s, const std::vector<double>& px,
         const std::vector<double>& py) {
  for (int round = 0; round < 500; ++round) {
    for (int x = 0; x < s.nx; ++x) {
      double sum = 0.0;
      for (int y = 0; y < s.ny; ++y)
        for (int z = 0; z < s.nz; ++z) sum += (*v)[s.idx(x, y, z)];
      double f = sum > 0.0 ? px[x] / sum : 0.0;
      for (int y = 0; y < s.ny; ++y)
        for (int z = 0; z < s.nz; ++z) (*v)[s.idx(x, y, z)] *= f;
    }
    double res = 0.0;
    for (int y = 0; y < s.ny; ++y) {
      double sum = 0.0;
      for (int x = 0; x < s.nx; ++x)
        for (int z = 0; z < s.nz; ++z) sum += (*v)[s.idx(x, y, z)];
      double f = sum > 0.0 ? py[y] / sum : 0.0;
      res = std::max(res, std::fabs(sum - py[y]));
      for (int x = 0; x < s.nx; ++x)
        for (int z = 0; z < s.nz; ++z) (*v)[s.idx(x, y, z)] *= f;
    }
    if (res < 1e-14) break;
  }
}

}  // namespace

SubproblemSolution minimize_div_plus_info(const Joint3& p_xyz,
                                          const MarginalConstraint& constraint,
                                          int which, double lambda,
                                          const SolverConfig& cfg) {
  which_slot(which);
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  Shape s{p_xyz.nx(), p_xyz.ny(), p_xyz.nz()};
  if (constraint.px.size() != s.nx || constraint.py.size() != s.ny)
    throw DimensionError("minimize_div_plus_info: constraint alphabet mismatch");

  const std::vector<double>& p = p_xyz.probs();
  const std::vector<double>& px = constraint.px.probs();
  const std::vector<double>& py = constraint.py.probs();
  {
    double res = marginal_residual(p, s, px, py);
    if (res > 1e-9)
      throw std::invalid_argument(
          "minimize_div_plus_info: p_xyz marginals do not match the constraint");
  }

  if (lambda == 0.0) {
    SubproblemSolution sol{p_xyz, 0.0, info_nats(p, s, which) / kLn2, 0, 0.0};
    return sol;
  }

  std::vector<double> logp(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    logp[i] = p[i] > 0.0 ? std::log(p[i]) : 0.0;

  const double expo = 1.0 / (1.0 + lambda);
  const double obj_tol = cfg.objective_tol * kLn2;

  std::vector<double> v = p;  // feasible interior start
  std::vector<double> cand(p.size()), g;
  double obj_prev = divergence_nats(v, p) + lambda * info_nats(v, s, which);

  int it = 0;
  bool converged = false;
  double residual = 0.0;
  for (it = 1; it <= cfg.max_iterations; ++it) {
    // tilted exponential-family update, then marginal fit
    if (which == 1) {
      g.assign(static_cast<std::size_t>(s.ny) * s.nz, 0.0);
      for (int x = 0; x < s.nx; ++x)
        for (int y = 0; y < s.ny; ++y)
          for (int z = 0; z < s.nz; ++z) g[y * s.nz + z] += v[s.idx(x, y, z)];
    } else if (which == 2) {
      g.assign(static_cast<std::size_t>(s.nx) * s.nz, 0.0);
      for (int x = 0; x < s.nx; ++x)
        for (int y = 0; y < s.ny; ++y)
          for (int z = 0; z < s.nz; ++z) g[x * s.nz + z] += v[s.idx(x, y, z)];
    } else {
      g.assign(s.nz, 0.0);
      for (std::size_t i = 0; i < v.size(); ++i) g[i % s.nz] += v[i];
    }
    std::size_t i = 0;
    for (int x = 0; x < s.nx; ++x)
      for (int y = 0; y < s.ny; ++y)
        for (int z = 0; z < s.nz; ++z, ++i) {
          if (p[i] <= 0.0) {
            cand[i] = 0.0;
            continue;
          }
          double gv = (which == 1) ? g[y * s.nz + z]
                     : (which == 2) ? g[x * s.nz + z]
                                    : g[z];
          double lg = gv > 0.0 ? std::log(gv) : -700.0;
          cand[i] = std::exp(expo * (logp[i] + lambda * lg));
        }
    ipf(&cand, s, px, py);

    double obj = divergence_nats(cand, p) + lambda * info_nats(cand, s, which);
    int halvings = 0;
    while (obj > obj_prev + 1e-15 && halvings < 40) {
      for (std::size_t c = 0; c < cand.size(); ++c) cand[c] = 0.5 * (cand[c] + v[c]);
      obj = divergence_nats(cand, p) + lambda * info_nats(cand, s, which);
      ++halvings;
    }
    v.swap(cand);
    residual = marginal_residual(v, s, px, py);
    if (obj_prev - obj < obj_tol && residual < cfg.marginal_tol) {
      obj_prev = obj;
      converged = true;
      break;
    }
    obj_prev = obj;
  }
  if (!converged)
    throw ConvergenceError("minimize_div_plus_info: no convergence within iteration cap",
                           residual, it);

  SubproblemSolution sol{Joint3(s.nx, s.ny, s.nz, v),
                         divergence_nats(v, p) / kLn2,
                         info_nats(v, s, which) / kLn2, it, residual};
  return sol;
}

CaseSplitResult solve_case_split(const Joint3& p_xyz,
                                 const MarginalConstraint& constraint,
                                 const std::array<double, 3>& betas,
                                 double r_target, const SolverConfig& cfg) {
  for (double b : betas)
    if (b < 0.0) throw std::invalid_argument("solve_case_split: negative beta");
  if (r_target < 0.0) throw std::invalid_argument("solve_case_split: negative r_target");

  const int whiches[3] = {1, 2, 12};
  CaseSplitResult res;

  double r_zero = 0.0;
  for (int slot = 0; slot < 3; ++slot)
    if (betas[slot] > 0.0) r_zero += betas[slot] * info(p_xyz, whiches[slot]);
  res.r_zero = r_zero;

  // positivity boundary: the exponent is identically zero at and beyond it
  if (r_target >= r_zero - 1e-12) {
    res.exponent = 0.0;
    res.regime = Regime::kZero;
    res.r_hat = r_zero;
    return res;
  }

  double r_hat = 0.0, lin = 0.0;
  for (int slot = 0; slot < 3; ++slot) {
    if (betas[slot] <= 0.0) continue;
    auto sol = minimize_div_plus_info(p_xyz, constraint, whiches[slot], 1.0, cfg);
    r_hat += betas[slot] * sol.info_term;
    lin += betas[slot] * (sol.divergence_term + sol.info_term);
    res.witnesses[slot] = std::move(sol);
  }
  res.r_hat = r_hat;

  if (r_target <= r_hat + cfg.r_tol) {
    res.exponent = lin - r_target;
    res.regime = Regime::kLinear;
    res.lambda = 1.0;
    return res;
  }

  // curved regime: bisect the shared multiplier so that sum_i beta_i I^i
  // meets r_target; the |.|+ term vanishes there and the exponent is the
  // weighted divergence sum.
  double lo = 0.0, hi = 1.0;
  double h_lo = r_zero, h_hi = r_hat;
  double lam = 0.5, h = 0.0, d = 0.0;
  std::array<std::optional<SubproblemSolution>, 3> wit;
  for (int step = 0; step < cfg.max_bisections; ++step) {
    lam = 0.5 * (lo + hi);
    h = 0.0;
    d = 0.0;
    for (int slot = 0; slot < 3; ++slot) {
      if (betas[slot] <= 0.0) continue;
      auto sol = minimize_div_plus_info(p_xyz, constraint, whiches[slot], lam, cfg);
      h += betas[slot] * sol.info_term;
      d += betas[slot] * sol.divergence_term;
      wit[slot] = std::move(sol);
    }
    // bracketing sanity: tiny wiggles at the solver's own noise floor are
    // expected once the bracket collapses, so only flag real violations
    double mono_tol = 1e-6 * std::max(1.0, h_lo);
    if (h > h_lo + mono_tol || h < h_hi - mono_tol) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "solve_case_split: lambda-sweep monotonicity violated, bracket ["
          << lo << "," << hi << "] values [" << h_lo << "," << h_hi
          << "] got " << h << " at lambda=" << lam;
      throw ConvergenceError(msg.str(), h - r_target, step);
    }
    if (std::fabs(h - r_target) < cfg.r_tol || hi - lo < 1e-13) break;
    if (h > r_target) {
      lo = lam;
      h_lo = h;
    } else {
      hi = lam;
      h_hi = h;
    }
  }
  res.exponent = d;
  res.regime = Regime::kCurved;
  res.lambda = lam;
  res.witnesses = std::move(wit);
  return res;
}

namespace {

// ---- brute-force oracle ----
//
// V is parameterized as V(x,y,z) = T(x,y) q_xy(z). The free coordinates are
// the (nx-1)(ny-1) interior cells of the contingency table T with margins
// (px, py), plus nz-1 conditional weights per (x,y) cell. Cells where the
// reference P vanishes are pinned to zero up front. The search runs an
// exhaustive grid at a coarse step and re-grids twice around the incumbent
// down to the requested step.

struct OracleProblem {
  Shape s;
  const std::vector<double>* p;
  std::vector<double> px, py;
  std::vector<double> logp_;
  int which = 1;
  double lambda = 0.0;

  // free coordinate descriptors
  struct Coord {
    bool is_table;   // true: T(x,y) interior cell; false: conditional weight
    int x, y, z;     // z used for conditionals
  };
  std::vector<Coord> coords;
  std::vector<char> xy_support;           // P^{XY}(x,y) > 0
  std::vector<std::vector<int>> z_support;  // allowed z per (x,y)

  double best = kInf;
  std::vector<double> best_point;

  void build_coords() {
    logp_.assign(s.cells(), 0.0);
    for (std::size_t c = 0; c < s.cells(); ++c)
      logp_[c] = (*p)[c] > 0.0 ? std::log((*p)[c]) : 0.0;
    xy_support.assign(static_cast<std::size_t>(s.nx) * s.ny, 0);
    z_support.assign(static_cast<std::size_t>(s.nx) * s.ny, {});
    for (int x = 0; x < s.nx; ++x)
      for (int y = 0; y < s.ny; ++y) {
        double m = 0.0;
        for (int z = 0; z < s.nz; ++z) {
          double c = (*p)[s.idx(x, y, z)];
          m += c;
          if (c > 0.0) z_support[x * s.ny + y].push_back(z);
        }
        xy_support[x * s.ny + y] = m > 0.0;
      }
    for (int x = 0; x < s.nx - 1; ++x)
      for (int y = 0; y < s.ny - 1; ++y)
        if (xy_support[x * s.ny + y]) coords.push_back({true, x, y, -1});
    for (int x = 0; x < s.nx; ++x)
      for (int y = 0; y < s.ny; ++y) {
        const auto& zs = z_support[x * s.ny + y];
        for (std::size_t i = 0; i + 1 < zs.size(); ++i)
          coords.push_back({false, x, y, zs[i]});
      }
  }

  // scratch buffers reused across leaf evaluations (cells <= 12)
  mutable std::array<double, 12> table_{}, v_{};
  mutable std::array<double, 12 * 12> cond_{};

  // Builds the full tensor from a free point; returns false if infeasible.
  bool assemble(const std::vector<double>& f) const {
    auto& table = table_;
    auto& cond = cond_;
    table.fill(0.0);
    cond.fill(0.0);
    std::size_t fi = 0;
    for (const auto& c : coords) {
      if (c.is_table) table[c.x * s.ny + c.y] = f[fi];
      ++fi;
    }
    // dependent table cells from the margins
    for (int x = 0; x < s.nx - 1; ++x) {
      double rest = px[x];
      for (int y = 0; y < s.ny - 1; ++y) rest -= table[x * s.ny + y];
      if (rest < -1e-12) return false;
      table[x * s.ny + (s.ny - 1)] = std::max(rest, 0.0);
    }
    for (int y = 0; y < s.ny; ++y) {
      double rest = py[y];
      for (int x = 0; x < s.nx - 1; ++x) rest -= table[x * s.ny + y];
      if (rest < -1e-12) return false;
      table[(s.nx - 1) * s.ny + y] = std::max(rest, 0.0);
    }
    for (int x = 0; x < s.nx; ++x)
      for (int y = 0; y < s.ny; ++y)
        if (!xy_support[x * s.ny + y] && table[x * s.ny + y] > 1e-12) return false;

    fi = 0;
    for (const auto& c : coords) {
      if (!c.is_table) cond[s.idx(c.x, c.y, c.z)] = f[fi];
      ++fi;
    }
    for (int x = 0; x < s.nx; ++x)
      for (int y = 0; y < s.ny; ++y) {
        const auto& zs = z_support[x * s.ny + y];
        if (zs.empty()) continue;
        double rest = 1.0;
        for (std::size_t i = 0; i + 1 < zs.size(); ++i)
          rest -= cond[s.idx(x, y, zs[i])];
        if (rest < -1e-12) return false;
        cond[s.idx(x, y, zs.back())] = std::max(rest, 0.0);
      }

    for (int x = 0; x < s.nx; ++x)
      for (int y = 0; y < s.ny; ++y)
        for (int z = 0; z < s.nz; ++z)
          v_[s.idx(x, y, z)] = table[x * s.ny + y] * cond[s.idx(x, y, z)];
    return true;
  }

  // objective of the assembled tensor, allocation-free; multi-information is
  // nonnegative, so the divergence term alone prunes against the incumbent
  double evaluate() const {
    const auto& v = v_;
    double d = 0.0, hv = 0.0;
    for (std::size_t c = 0, e = s.cells(); c < e; ++c) {
      double t = v[c];
      if (t > 0.0) {
        double lt = std::log(t);
        hv -= t * lt;
        d += t * (lt - logp_[c]);
      }
    }
    if (d < 0.0) d = 0.0;
    if (d >= best * kLn2) return kInf;
    if (lambda == 0.0) return d / kLn2;

    std::array<double, 12> mx{}, my{}, mz{}, myz{}, mxz{};
    for (int x = 0; x < s.nx; ++x)
      for (int y = 0; y < s.ny; ++y)
        for (int z = 0; z < s.nz; ++z) {
          double t = v[s.idx(x, y, z)];
          mx[x] += t;
          my[y] += t;
          mz[z] += t;
          myz[y * s.nz + z] += t;
          mxz[x * s.nz + z] += t;
        }
    auto ent = [](const std::array<double, 12>& m, int n) {
      double h = 0.0;
      for (int i = 0; i < n; ++i)
        if (m[i] > 0.0) h -= m[i] * std::log(m[i]);
      return h;
    };
    double info;
    if (which == 1)
      info = ent(mx, s.nx) + ent(myz, s.ny * s.nz) - hv;
    else if (which == 2)
      info = ent(my, s.ny) + ent(mxz, s.nx * s.nz) - hv;
    else
      info = ent(mx, s.nx) + ent(my, s.ny) + ent(mz, s.nz) - hv;
    return (d + lambda * info) / kLn2;
  }

  void grid_scan(double step, const std::vector<double>& center, double radius) {
    std::vector<double> f(coords.size(), 0.0);
    scan_rec(0, step, center, radius, &f);
  }

  void scan_rec(std::size_t ci, double step, const std::vector<double>& center,
                double radius, std::vector<double>* f) {
    if (ci == coords.size()) {
      if (!assemble(*f)) return;
      double obj = evaluate();
      if (obj < best) {
        best = obj;
        best_point = *f;
      }
      return;
    }
    double hi_cap = coords[ci].is_table
                        ? std::min(px[coords[ci].x], py[coords[ci].y])
                        : 1.0;
    double lo = std::max(0.0, center[ci] - radius);
    double hi = std::min(hi_cap, center[ci] + radius);
    if (lo > hi) lo = hi;
    double first = std::ceil(lo / step - 1e-9) * step;
    if (first > hi + 1e-12) {
      (*f)[ci] = 0.5 * (lo + hi);
      scan_rec(ci + 1, step, center, radius, f);
      return;
    }
    for (double val = first; val <= hi + 1e-12; val += step) {
      (*f)[ci] = std::min(val, hi);
      scan_rec(ci + 1, step, center, radius, f);
    }
  }
};

}  // namespace

double brute_force_oracle(const Joint3& p_xyz, const MarginalConstraint& constraint,
                          int which, double lambda, double step) {
  which_slot(which);
  Shape s{p_xyz.nx(), p_xyz.ny(), p_xyz.nz()};
  if (s.cells() > 12)
    throw std::domain_error("brute_force_oracle: alphabet too large (|X||Y||Z| > 12)");
  if (step < 1e-3) throw std::invalid_argument("brute_force_oracle: step below 1e-3");

  OracleProblem prob;
  prob.s = s;
  prob.p = &p_xyz.probs();
  prob.px = constraint.px.probs();
  prob.py = constraint.py.probs();
  prob.which = which;
  prob.lambda = lambda;
  prob.build_coords();

  // level plan: coarse full-range pass, then refine around the incumbent
  std::vector<double> steps;
  double h = std::max(step, 0.0625);
  for (;;) {
    steps.push_back(h);
    if (h <= step * (1.0 + 1e-9)) break;
    h = std::max(step, h / 4.0);
  }

  std::vector<double> center(prob.coords.size(), 0.5);
  double radius = 1.0;
  for (std::size_t lvl = 0; lvl < steps.size(); ++lvl) {
    prob.grid_scan(steps[lvl], center, radius);
    if (prob.best_point.empty()) break;  // fully pinned problem
    center = prob.best_point;
    radius = 1.6 * steps[lvl];
  }
  // valley-following polish: re-scan a small window at the final step,
  // re-centering while it improves, so curved flat valleys are traversed
  for (int moves = 0; moves < 400 && !prob.best_point.empty(); ++moves) {
    double before = prob.best;
    prob.grid_scan(step, center, 2.5 * step);
    if (prob.best >= before - 1e-13) break;
    center = prob.best_point;
  }
  if (prob.best == kInf) {
    // no free coordinates at all: the constraint pins V completely
    std::vector<double> f;
    if (prob.assemble(f)) prob.best = prob.evaluate();
  }
  return prob.best;
}

}  // namespace amacee
