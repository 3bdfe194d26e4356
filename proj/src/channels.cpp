#include "amacee/channels.hpp"

#include <algorithm>
#include <cmath>

namespace amacee {

SingleUserChannel z_channel(double sigma) {
  if (sigma < 0.0 || sigma > 1.0)
    throw std::invalid_argument("z_channel: sigma must be in [0,1]");
  return SingleUserChannel(2, 2, {1.0, 0.0, sigma, 1.0 - sigma});
}

SingleUserChannel bsc(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("bsc: p must be in [0,1]");
  return SingleUserChannel(2, 2, {1.0 - p, p, p, 1.0 - p});
}

MacChannel xor_mac(const SingleUserChannel& w1) {
  if (w1.nx() != 2)
    throw std::invalid_argument("xor_mac: base channel must be binary-input");
  int nz = w1.nz();
  std::vector<double> rows(static_cast<std::size_t>(4) * nz);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < nz; ++z) rows[(x * 2 + y) * nz + z] = w1.at(x ^ y, z);
  return MacChannel(2, 2, nz, std::move(rows), "xor-then-single-user");
}

CapacityResult capacity(const SingleUserChannel& w, double tol, int max_iterations) {
  if (tol <= 0.0) throw std::invalid_argument("capacity: tol must be positive");
  const int nx = w.nx(), nz = w.nz();
  std::vector<double> q(nx, 1.0 / nx), out(nz), dkl(nx);
  double lower = 0.0, upper = kInf;
  for (int it = 1; it <= max_iterations; ++it) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int x = 0; x < nx; ++x)
      for (int z = 0; z < nz; ++z) out[z] += q[x] * w.at(x, z);
    for (int x = 0; x < nx; ++x) {
      double d = 0.0;
      for (int z = 0; z < nz; ++z) {
        double t = xlog2_ratio(w.at(x, z), out[z]);
        if (t == kInf) { d = kInf; break; }
        d += t;
      }
      dkl[x] = d;
    }
    lower = 0.0;
    upper = 0.0;
    for (int x = 0; x < nx; ++x) {
      if (q[x] > 0.0 && dkl[x] == kInf)
        throw ConvergenceError("capacity: divergent support", kInf, it);
      lower += q[x] * (dkl[x] == kInf ? 0.0 : dkl[x]);
      upper = std::max(upper, dkl[x]);
    }
    if (upper - lower < tol)
      return {lower, Dist::normalized(q), it};
    double norm = 0.0;
    for (int x = 0; x < nx; ++x) {
      q[x] *= std::exp2(dkl[x] == kInf ? -1074.0 : dkl[x] - upper);
      norm += q[x];
    }
    for (int x = 0; x < nx; ++x) q[x] /= norm;
  }
  throw ConvergenceError("capacity: bracket " + std::to_string(lower) + ".." +
                             std::to_string(upper) + " did not close within cap",
                         upper - lower, max_iterations);
}

Dist xor_preimage_input(const Dist& q) {
  if (q.size() != 2)
    throw std::invalid_argument("xor_preimage_input: binary target required");
  double q1 = q[1];
  if (q1 > 0.5 + kProbTol)
    throw std::domain_error("xor_preimage_input: q(1) > 1/2 is infeasible");
  q1 = std::min(q1, 0.5);
  double p1 = (1.0 - std::sqrt(1.0 - 2.0 * q1)) / 2.0;
  return Dist({1.0 - p1, p1});
}

namespace {

// |Y|=1 lift of a single-user channel: P(x,0,z) = p(x) W(z|x). On the lift,
// I^12 is exactly I(P,V) and D(V||P^XYZ) over fixed-X-marginal V is D(V||W|P).
Joint3 lift(const Dist& p, const SingleUserChannel& w) {
  std::vector<double> cells(static_cast<std::size_t>(w.nx()) * w.nz());
  for (int x = 0; x < w.nx(); ++x)
    for (int z = 0; z < w.nz(); ++z) cells[x * w.nz() + z] = p[x] * w.at(x, z);
  return Joint3(w.nx(), 1, w.nz(), std::move(cells));
}

}  // namespace

double sphere_packing_inner(const SingleUserChannel& w, const Dist& p, double r,
                            const SolverConfig& cfg) {
  if (r < 0.0) throw std::invalid_argument("sphere_packing_inner: r must be >= 0");
  Joint3 pxz = lift(p, w);
  MarginalConstraint con{p, Dist({1.0})};
  double ip = info12(pxz);
  if (ip <= r + 1e-12) return 0.0;

  if (r <= 1e-12) {
    // I(P,V)=0 forces a shared output law q; the minimum over q of
    // sum_x P(x) D(q || W(.|x)) is -log2 sum_z prod_x W(z|x)^P(x)
    double total = 0.0;
    for (int z = 0; z < w.nz(); ++z) {
      double g = 1.0;
      for (int x = 0; x < w.nx(); ++x) {
        if (p[x] <= 0.0) continue;
        if (w.at(x, z) <= 0.0) { g = 0.0; break; }
        g *= std::pow(w.at(x, z), p[x]);
      }
      total += g;
    }
    return total > 0.0 ? -std::log2(total) : kInf;
  }

  // grow lambda until the tilted info drops to r, then bisect
  double lam_hi = 1.0, info_hi = 0.0;
  for (int k = 0; k < 64; ++k) {
    auto sol = minimize_div_plus_info(pxz, con, 12, lam_hi, cfg);
    info_hi = sol.info_term;
    if (info_hi <= r) break;
    lam_hi *= 2.0;
    if (lam_hi > 1e9)
      return minimize_div_plus_info(pxz, con, 12, lam_hi, cfg).divergence_term;
  }
  double lam_lo = 0.0;
  double d = 0.0;
  for (int step = 0; step < cfg.max_bisections + 20; ++step) {
    double lam = 0.5 * (lam_lo + lam_hi);
    auto sol = minimize_div_plus_info(pxz, con, 12, lam, cfg);
    d = sol.divergence_term;
    if (std::fabs(sol.info_term - r) < cfg.r_tol) break;
    if (sol.info_term > r)
      lam_lo = lam;
    else
      lam_hi = lam;
  }
  return d;
}

double sphere_packing_exponent(const SingleUserChannel& w, double r, double p_step,
                               const SolverConfig& cfg) {
  if (r < 0.0) throw std::invalid_argument("sphere_packing_exponent: r must be >= 0");
  if (w.nx() != 2)
    throw std::invalid_argument(
        "sphere_packing_exponent: only binary-input channels are supported");
  if (p_step <= 0.0 || p_step > 0.5)
    throw std::invalid_argument("sphere_packing_exponent: bad grid step");

  int n = static_cast<int>(std::round(1.0 / p_step));
  double best = 0.0;
  for (int k = 0; k <= n; ++k) {
    double p1 = std::min(1.0, k * p_step);
    double v = sphere_packing_inner(w, Dist({1.0 - p1, p1}), r, cfg);
    if (v != kInf && v > best) best = v;
  }
  return best;
}

}  // namespace amacee
