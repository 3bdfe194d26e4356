// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the checks themselves.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "amacee/channels.hpp"
#include "amacee/patterns.hpp"
#include "amacee/region.hpp"
#include "amacee/sim.hpp"
#include "amacee/subtypes.hpp"

using namespace amacee;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

struct SweepArtifacts {
  SweepResult sweep;
  std::vector<double> esp;  // E_sp(2 * effective rate) per row
  Dist pstar{std::vector<double>{0.5, 0.5}};
  double capacity_w1 = 0.0;
};

}  // namespace

// 1. Z-channel capacity and maximizing input
static void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  CapacityResult cap = capacity(z_channel(0.101), 1e-9);
  double dt = seconds_since(t0);
  bool ok = std::fabs(cap.capacity - 0.761167) <= 1e-4 &&
            std::fabs(cap.input[0] - 0.543959) <= 1e-4 &&
            std::fabs(cap.input[1] - 0.456041) <= 1e-4 && dt < 1.0;
  report(1, ok,
         fmt("C(Z(0.101)) = %.6f, input = {%.6f, %.6f}, %.3f s", cap.capacity,
             cap.input[0], cap.input[1], dt));
}

// 2. XOR-preimage input distribution
static void criterion_2() {
  Dist q = capacity(z_channel(0.101), 1e-10).input;
  Dist pstar = xor_preimage_input(q);
  double identity = 2.0 * pstar[1] * (1.0 - pstar[1]);
  bool ok = std::fabs(pstar[1] - 0.351746) <= 1e-5 &&
            std::fabs(identity - q[1]) <= 1e-10;
  report(2, ok,
         fmt("P*(1) = %.6f, 2p(1-p) = %.6f vs Q(1) = %.6f", pstar[1], identity, q[1]));
}

// 3. Pentagon sum-rate equals the single-user capacity
static void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  CapacityResult cap = capacity(z_channel(0.101), 1e-10);
  Dist pstar = xor_preimage_input(cap.input);
  Pentagon pent = pentagon(pstar, pstar, xor_mac(z_channel(0.101)));
  double dt = seconds_since(t0);
  bool ok = std::fabs(pent.i12 - cap.capacity) <= 1e-4 && dt < 1.0;
  report(3, ok, fmt("I12 = %.6f vs C(W1) = %.6f, %.3f s", pent.i12, cap.capacity, dt));
}

// 4-6 share the full study sweep with the synchronous bound column
static SweepArtifacts run_sweep_artifacts() {
  SweepArtifacts art;
  SingleUserChannel w1 = z_channel(0.101);
  CapacityResult cap = capacity(w1, 1e-10);
  art.capacity_w1 = cap.capacity;
  art.pstar = xor_preimage_input(cap.input);
  MacChannel mac = xor_mac(w1);
  ExponentQuery q{0.5, art.pstar, art.pstar, mac, 0.0, 0.0, 1, 1};
  art.sweep = rate_sweep(q, 0.0, 0.40, 0.002, 40, 40);
  art.esp.resize(art.sweep.rows.size());
  for (std::size_t i = 0; i < art.sweep.rows.size(); ++i)
    art.esp[i] = sphere_packing_exponent(w1, 2.0 * art.sweep.rows[i].rate_eff, 1e-3);
  return art;
}

static void criterion_4(const SweepArtifacts& art, double dt) {
  const SweepResult& s = art.sweep;
  bool ok = s.has_r_sup &&
            std::fabs(s.r_sup_nominal - 0.38889) <= 0.002 &&
            std::fabs(s.r_sup_effective - 0.37917) <= 0.002 &&
            s.r_sup_effective < art.capacity_w1 / 2.0 &&
            art.capacity_w1 / 2.0 < s.r_sup_nominal && dt < 600.0;
  report(4, ok,
         fmt("R_sup nominal %.5f (target 0.38889), effective %.5f (target 0.37917), "
             "C/2 = %.5f, sweep+bound %.1f s",
             s.r_sup_nominal, s.r_sup_effective, art.capacity_w1 / 2.0, dt));
}

static void criterion_5(const SweepArtifacts& art) {
  bool low_ok = true;
  for (const SweepRow& row : art.sweep.rows) {
    if (row.rate > 0.29 + 1e-12) break;
    if (row.dominant_L != 1) low_ok = false;
  }
  int last_positive_L = 0;
  for (const SweepRow& row : art.sweep.rows)
    if (row.exponent > 0.0) last_positive_L = row.dominant_L;
  bool ok = low_ok && last_positive_L == 40;
  report(5, ok,
         fmt("L_dom = 1 on [0, 0.29]: %s; L_dom at last positive point = %d",
             low_ok ? "yes" : "no", last_positive_L));
}

static void criterion_6(const SweepArtifacts& art) {
  // crossover of the asynchronous exponent (on the effective-rate axis)
  // against the synchronous sphere-packing bound at the same sum rate
  double lo = -1.0, hi = -1.0;
  for (std::size_t i = 0; i < art.sweep.rows.size(); ++i) {
    const SweepRow& row = art.sweep.rows[i];
    if (row.exponent > art.esp[i] + 1e-9 && row.exponent > 0.0) {
      if (lo < 0) lo = row.rate_eff;
      hi = row.rate_eff;
    }
  }
  bool ok = lo >= 0.0;
  report(6, ok,
         ok ? fmt("asynchronism beats E_sp(2R) on effective rates [%.4f, %.4f]", lo, hi)
            : std::string("no grid rate with E^{1/2,40} > E_sp(2R)"));
}

// 7. linearity of E^{1/2}(1) with slope -1 on [0, 0.29]
static void criterion_7() {
  SingleUserChannel w1 = z_channel(0.101);
  Dist pstar = xor_preimage_input(capacity(w1, 1e-10).input);
  MacChannel mac = xor_mac(w1);
  double e0 = 0.0, e_end = 0.0;
  std::vector<double> values;
  for (int k = 0; k * 0.002 <= 0.29 + 1e-12; ++k) {
    double r = k * 0.002;
    ExponentQuery q{0.5, pstar, pstar, mac, r, r, 1, 1};
    double v = pattern_exponent(q).value;
    values.push_back(v);
    if (k == 0) e0 = v;
    e_end = v;
  }
  double span = 0.002 * (values.size() - 1);
  double slope = (e_end - e0) / span;
  double max_dev = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    double secant = e0 + slope * (0.002 * k);
    max_dev = std::max(max_dev, std::fabs(values[k] - secant));
  }
  bool ok = max_dev < 1e-4 && std::fabs(slope + 1.0) < 1e-4;
  report(7, ok, fmt("slope = %.6f, max secant deviation = %.2e", slope, max_dev));
}

// 8. solver vs brute-force oracle on random instances
static void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::size_t t = 0; t < 100; ++t) {
    SplitMix64 rng(2024, t);
    auto rnd = [&](int k) {
      std::vector<double> v(k);
      for (auto& x : v) x = 0.05 + rng.uniform();
      return Dist::normalized(v);
    };
    Dist px = rnd(2), py = rnd(2);
    std::vector<double> rows;
    for (int c = 0; c < 4; ++c) {
      Dist r = rnd(2);
      rows.insert(rows.end(), {r[0], r[1]});
    }
    Joint3 p = compose(Joint2::product(px, py), MacChannel(2, 2, 2, rows));
    MarginalConstraint con{px, py};
    for (int which : {1, 2, 12})
      for (double lam : {0.0, 0.25, 0.5, 1.0}) {
        double sv = 0.0;
        if (lam > 0.0) {
          auto sol = minimize_div_plus_info(p, con, which, lam);
          sv = sol.divergence_term + lam * sol.info_term;
        }
        double ov = brute_force_oracle(p, con, which, lam, 0.002);
        worst = std::max(worst, std::fabs(sv - ov));
      }
  }
  double dt = seconds_since(t0);
  bool ok = worst <= 2e-3 && dt < 300.0;
  report(8, ok, fmt("max |solver - oracle| = %.2e over 1200 combos, %.1f s", worst, dt));
}

// 9. case-split curve structure on random instances
static void criterion_9() {
  bool ok = true;
  std::string why = "all structure checks hold";
  for (std::size_t t = 0; t < 20 && ok; ++t) {
    SplitMix64 rng(555, t);
    auto rnd = [&](int k) {
      std::vector<double> v(k);
      for (auto& x : v) x = 0.05 + rng.uniform();
      return Dist::normalized(v);
    };
    Dist px = rnd(2), py = rnd(2);
    std::vector<double> rows;
    for (int c = 0; c < 4; ++c) {
      Dist r = rnd(2);
      rows.insert(rows.end(), {r[0], r[1]});
    }
    Joint3 p = compose(Joint2::product(px, py), MacChannel(2, 2, 2, rows));
    MarginalConstraint con{px, py};
    std::array<double, 3> betas{0.2 + rng.uniform(), 0.2 + rng.uniform(),
                                0.2 + rng.uniform()};
    const int whiches[3] = {1, 2, 12};
    double r_zero = 0.0;
    for (int s = 0; s < 3; ++s) r_zero += betas[s] * info(p, whiches[s]);
    auto at0 = solve_case_split(p, con, betas, 0.0);

    const int grid = 100;
    std::vector<double> e(grid + 1);
    for (int k = 0; k <= grid; ++k)
      e[k] = solve_case_split(p, con, betas, 1.15 * r_zero * k / grid).exponent;
    for (int k = 0; k < grid && ok; ++k)
      if (e[k + 1] > e[k] + 1e-9) {
        ok = false;
        why = fmt("instance %zu: not nonincreasing at k=%d", t, k);
      }
    for (int k = 1; k < grid && ok; ++k)
      if (e[k - 1] + e[k + 1] - 2 * e[k] < -1e-6) {
        ok = false;
        why = fmt("instance %zu: midpoint convexity fails at k=%d", t, k);
      }
    for (int k = 0; k <= grid && ok; ++k) {
      double r = 1.15 * r_zero * k / grid;
      bool zero = e[k] == 0.0;
      if (r >= r_zero && !zero) {
        ok = false;
        why = fmt("instance %zu: nonzero past the boundary", t);
      }
      if (r < r_zero - 1e-9 && zero) {
        ok = false;
        why = fmt("instance %zu: zero inside the positive region", t);
      }
      if (ok && r <= at0.r_hat && std::fabs(e[k] - (at0.exponent - r)) > 1e-7) {
        ok = false;
        why = fmt("instance %zu: linear segment deviates at r=%.4f", t, r);
      }
    }
  }
  report(9, ok, why);
}

// 10. balanced-sequence expurgation bound, exhaustively for binary n <= 16
static void criterion_10() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int n = 2; n <= 16 && ok; ++n) {
    double dn = delta_n(n, 2);
    for (int ones = 0; ones <= n && ok; ++ones) {
      BalancedCount c = count_balanced(n, ones, dn);
      if (2 * c.balanced < c.total) ok = false;
    }
  }
  double dt = seconds_since(t0);
  report(10, ok && dt < 60.0,
         fmt("|T(delta_n)| >= |T|/2 for all binary types, n <= 16, %.1f s", dt));
}

// 11. simulator sanity: zero-error cases, direction in n, structural checks
static void criterion_11() {
  // (a) zero-error cases; the pair-output run uses an unsplit-block delay,
  // where no wrong candidate can out-score the true pair
  AmacCode single = build_code(8, 3, 1, 1, {4, 4}, {4, 4}, 2);
  PatternTally ta = run_trials(single, xor_mac(z_channel(0.0)), 5, 10000, 3);
  std::vector<double> pair_rows(16, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) pair_rows[(x * 2 + y) * 4 + (2 * x + y)] = 1.0;
  AmacCode pc = build_code(6, 2, 2, 2, {4, 2}, {4, 2}, 23);
  PatternTally tb = run_trials(pc, MacChannel(2, 2, 4, pair_rows), 6, 10000, 4);
  bool zero_ok = ta.errors() == 0 && tb.errors() == 0;

  // (b) error rate falls from n=6 to n=12 at matched rates, 1e5 trials
  MacChannel mac = xor_mac(z_channel(0.101));
  AmacCode c6 = build_code(6, 2, 2, 2, {4, 2}, {4, 2}, 42);
  AmacCode c12 = build_code(12, 2, 4, 4, {8, 4}, {8, 4}, 42);
  PatternTally t6 = run_trials(c6, mac, 3, 100000, 11);
  PatternTally t12 = run_trials(c12, mac, 6, 100000, 11);
  auto [lo6, hi6] = wilson_interval(t6.errors(), t6.trials);
  auto [lo12, hi12] = wilson_interval(t12.errors(), t12.trials);
  bool direction_ok = hi12 < lo6;

  // (c) structural constraints on a noisy tally
  AmacCode cs = build_code(6, 3, 2, 2, {4, 2}, {4, 2}, 29);
  int D = 8;
  DelayGeometry g(D, 6, 3);
  PatternTally ts = run_trials(cs, mac, D, 20000, 7);
  bool struct_ok = true;
  std::uint64_t sum = ts.correct;
  for (const auto& [key, count] : ts.patterns) {
    sum += count;
    for (int b : key.first)
      if (b == g.l) struct_ok = false;
    for (int b : key.second)
      if (b == ts.K) struct_ok = false;
    std::vector<int> i(3, 0), ih(3, 0), j(3, 0), jh(3, 0);
    for (int b : key.first) ih[b - 1] = 1;
    for (int b : key.second) jh[b - 1] = 1;
    PatternClass pcls = classify_pattern(i, ih, j, jh, g);
    for (const IrreducibleComponent& c : pcls.components)
      if (c.L > 2 * std::max(g.l - 1, ts.K - g.l)) struct_ok = false;
  }
  if (sum != ts.trials) struct_ok = false;

  bool ok = zero_ok && direction_ok && struct_ok;
  report(11, ok,
         fmt("zero-error: %s; err(n=6) in [%.4f, %.4f] vs err(n=12) in [%.4f, %.4f] "
             "disjoint: %s; structure: %s",
             zero_ok ? "yes" : "no", lo6, hi6, lo12, hi12,
             direction_ok ? "yes" : "no", struct_ok ? "yes" : "no"));
}

// 12. identity suite on randomized instances
static void criterion_12() {
  SplitMix64 rng(99, 0);
  auto rnd_dist = [&](int k, double floor) {
    std::vector<double> v(k);
    for (auto& x : v) x = floor + rng.uniform();
    return Dist::normalized(v);
  };
  int fail_split = 0, fail_exchange = 0, fail_decomp = 0, fail_l5 = 0, fail_l6 = 0;

  for (int t = 0; t < 1000; ++t) {
    // Jensen-Shannon split forms
    int n = 4 + static_cast<int>(rng.below(28));
    int d = 1 + static_cast<int>(rng.below(n - 1));
    Dist v1 = rnd_dist(2, 0.0), v2 = rnd_dist(2, 0.0);
    double wd = static_cast<double>(d) / n;
    Dist mix({wd * v1[0] + (1 - wd) * v2[0], wd * v1[1] + (1 - wd) * v2[1]});
    if (std::fabs(jensen_shannon_split(mix, n, d, v1, v2) -
                  jensen_shannon_split_div(mix, n, d, v1, v2)) > 1e-10)
      ++fail_split;

    // divergence exchange and multi-information decomposition on a random
    // joint with exact (px, py) marginals
    Dist px = rnd_dist(2, 0.02), py = rnd_dist(2, 0.02);
    std::vector<double> rows;
    for (int c = 0; c < 4; ++c) {
      Dist r = rnd_dist(2, 0.02);
      rows.insert(rows.end(), {r[0], r[1]});
    }
    MacChannel w(2, 2, 2, rows);
    std::vector<double> cells(8);
    for (auto& c : cells) c = 0.02 + rng.uniform();
    Joint3 v0 = Joint3::normalized(2, 2, 2, cells);
    Joint2 vxy = couple_to_marginals(v0.marginal_xy(), px, py);
    std::vector<double> vc(8);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        double m = v0.marginal_xy().at(x, y);
        for (int z = 0; z < 2; ++z)
          vc[(x * 2 + y) * 2 + z] = vxy.at(x, y) * (m > 0 ? v0.at(x, y, z) / m : 0.5);
      }
    Joint3 v(2, 2, 2, vc);
    Joint3 pxyz = compose(Joint2::product(px, py), w);
    Joint3 vw = compose(v.marginal_xy(), w);
    if (std::fabs(divergence(v, vw) + mutual_information_xy(v) - divergence(v, pxyz)) >
        1e-10)
      ++fail_exchange;
    double iyz = entropy(v.marginal_y()) + entropy(v.marginal_z()) -
                 entropy(v.marginal_yz());
    double ixz = entropy(v.marginal_x()) + entropy(v.marginal_z()) -
                 entropy(v.marginal_xz());
    if (std::fabs(info12(v) - info1(v) - iyz) > 1e-10 ||
        std::fabs(info12(v) - info2(v) - ixz) > 1e-10)
      ++fail_decomp;

    // marginal-coupling postconditions on 3x3
    {
      std::vector<double> w9(9);
      for (auto& c : w9) c = 0.02 + rng.uniform();
      Joint2 base = Joint2::normalized(3, 3, w9);
      Dist tx = rnd_dist(3, 0.02), ty = rnd_dist(3, 0.02);
      Joint2 r = couple_to_marginals(base, tx, ty);
      double budget = variational_distance(tx, base.marginal_x()) +
                      variational_distance(ty, base.marginal_y());
      if (variational_distance(r.marginal_x(), tx) > 1e-10 ||
          variational_distance(r.marginal_y(), ty) > 1e-10 ||
          variational_distance(r, base) > budget + 1e-10)
        ++fail_l5;
    }

    // channel-extension postconditions on 2x2x2
    {
      Joint2 vxy0 = v.marginal_xy();
      std::vector<double> cells2 = vxy0.probs();
      double eps = 0.002 + 0.028 * rng.uniform();
      cells2[0] += eps / 2;
      cells2[1] -= eps / 2;
      cells2[2] -= eps / 2;
      cells2[3] += eps / 2;
      if (cells2[1] < 0 || cells2[2] < 0) continue;
      Joint2 vxy_hat(2, 2, cells2);
      double dist = variational_distance(vxy_hat, vxy0);
      Joint3 r = extend_coupling_to_channel(v, vxy_hat, w);
      double d_new = divergence(r, compose(vxy_hat, w));
      double d_old = divergence(v, compose(vxy0, w));
      if (variational_distance(r.marginal_xy(), vxy_hat) > 1e-10 ||
          variational_distance(r, v) > 8.0 * std::sqrt(dist) + 1e-10 ||
          d_new > d_old * (1.0 + std::sqrt(dist)) + 1e-9)
        ++fail_l6;
    }
  }
  bool ok = !fail_split && !fail_exchange && !fail_decomp && !fail_l5 && !fail_l6;
  report(12, ok,
         fmt("failures: split %d, exchange %d, decomposition %d, coupling %d, "
             "extension %d (of 1000 each)",
             fail_split, fail_exchange, fail_decomp, fail_l5, fail_l6));
}

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  auto t0 = std::chrono::steady_clock::now();
  SweepArtifacts art = run_sweep_artifacts();
  double sweep_dt = seconds_since(t0);
  criterion_4(art, sweep_dt);
  criterion_5(art);
  criterion_6(art);
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
