// Command-line surface for the AMAC error-exponent library: capacity,
// exponent/sweep evaluation, rate regions, Monte-Carlo simulation and the
// combinatorial verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "amacee/channels.hpp"
#include "amacee/patterns.hpp"
#include "amacee/region.hpp"
#include "amacee/sim.hpp"
#include "amacee/subtypes.hpp"

using json = nlohmann::ordered_json;
using namespace amacee;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitUsage = 3;

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kZero: return "zero";
    case Regime::kLinear: return "linear";
    case Regime::kCurved: return "curved";
  }
  return "?";
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

SingleUserChannel channel_from_flags(double z_sigma, double bsc_p, bool has_z,
                                     bool has_bsc) {
  if (has_z == has_bsc)
    throw CLI::ValidationError("specify exactly one of --z-channel / --bsc");
  return has_z ? z_channel(z_sigma) : bsc(bsc_p);
}

// default study inputs: P* = xor-preimage of the capacity achiever
Dist default_input(const SingleUserChannel& w1) {
  CapacityResult cap = capacity(w1, 1e-10);
  return xor_preimage_input(cap.input);
}

int cmd_capacity(const SingleUserChannel& w, double tol, bool as_json) {
  CapacityResult cap = capacity(w, tol);
  if (as_json) {
    json out;
    out["schema"] = "amacee.capacity.v1";
    out["capacity"] = cap.capacity;
    out["input"] = cap.input.probs();
    out["iterations"] = cap.iterations;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "capacity " << fmt6(cap.capacity) << " bits\ninput";
    for (int x = 0; x < cap.input.size(); ++x) std::cout << " " << fmt6(cap.input[x]);
    std::cout << "\n";
  }
  return kExitOk;
}

struct SweepOptions {
  double sigma = 0.101;
  double alpha = 0.5;
  int K = 40;
  int M = 40;
  double step = 0.002;
  double r_max = 0.42;
  bool sync_bound = false;
  bool per_pattern = false;
  std::vector<double> input;  // P^X(1), P^Y(1)
  std::string output;
  SolverConfig solver;
};

void add_solver_flags(CLI::App* cmd, SolverConfig* cfg) {
  cmd->add_option("--obj-tol", cfg->objective_tol, "solver objective tolerance (bits)");
  cmd->add_option("--marginal-tol", cfg->marginal_tol, "solver marginal residual cap");
  cmd->add_option("--r-tol", cfg->r_tol, "bisection tolerance on the rate constraint");
  cmd->add_option("--max-iterations", cfg->max_iterations, "solver iteration cap");
  cmd->add_option("--max-bisections", cfg->max_bisections, "bisection step cap");
}

int cmd_sweep(const SweepOptions& opt) {
  SingleUserChannel w1 = z_channel(opt.sigma);
  Dist px = opt.input.empty() ? default_input(w1)
                              : Dist({1.0 - opt.input[0], opt.input[0]});
  Dist py = opt.input.empty()
                ? px
                : Dist({1.0 - opt.input[opt.input.size() > 1 ? 1 : 0],
                        opt.input[opt.input.size() > 1 ? 1 : 0]});
  MacChannel mac = xor_mac(w1);
  ExponentQuery q{opt.alpha, px, py, mac, 0.0, 0.0, 1, 1};
  SweepResult sweep = rate_sweep(q, 0.0, opt.r_max, opt.step, opt.M, opt.K, opt.solver);

  std::ofstream file;
  std::ostream& os = open_output(file, opt.output);
  os << "rate,rate_eff,exponent,L_dom,j_dom,regime,ties";
  if (opt.sync_bound) os << ",esp_2reff";
  if (opt.per_pattern)
    for (int L = 1; L <= opt.M; ++L) os << ",E_L" << L;
  os << "\n";
  for (const SweepRow& row : sweep.rows) {
    os << fmt6(row.rate) << "," << fmt6(row.rate_eff);
    if (row.error) {
      os << ",,,,error," << row.error_message << "\n";
      continue;
    }
    os << "," << fmt6(row.exponent) << "," << row.dominant_L << ","
       << row.dominant_j << "," << regime_name(row.regime) << ",";
    for (std::size_t t = 0; t < row.ties.size(); ++t) {
      if (t) os << "|";
      os << row.ties[t].first << ":" << row.ties[t].second;
    }
    if (opt.sync_bound)
      os << "," << fmt6(sphere_packing_exponent(w1, 2.0 * row.rate_eff, 1e-3, opt.solver));
    if (opt.per_pattern) {
      ExponentQuery pq = q;
      pq.r1 = pq.r2 = row.rate;
      for (int L = 1; L <= opt.M; ++L) {
        pq.L = L;
        pq.j = 1;
        os << "," << fmt6(pattern_exponent(pq, opt.solver).value);
      }
    }
    os << "\n";
  }
  if (sweep.has_r_sup) {
    std::cerr << "R_sup nominal " << fmt6(sweep.r_sup_nominal) << " effective "
              << fmt6(sweep.r_sup_effective) << "\n";
  }
  return kExitOk;
}

int cmd_exponent(double sigma, double alpha, int L, int j, double r1, double r2,
                 const std::vector<double>& input, bool as_json,
                 const SolverConfig& solver) {
  SingleUserChannel w1 = z_channel(sigma);
  Dist px = input.empty() ? default_input(w1) : Dist({1.0 - input[0], input[0]});
  Dist py = input.size() > 1 ? Dist({1.0 - input[1], input[1]}) : px;
  ExponentQuery q{alpha, px, py, xor_mac(w1), r1, r2, L, j};
  PatternExponent e = pattern_exponent(q, solver);
  if (as_json) {
    json out;
    out["schema"] = "amacee.exponent.v1";
    out["L"] = L;
    out["j"] = j;
    out["alpha"] = alpha;
    out["r1"] = r1;
    out["r2"] = r2;
    out["exponent"] = e.value;
    out["regime"] = regime_name(e.regime);
    out["r"] = e.r;
    out["r_hat"] = e.r_hat;
    out["r_zero"] = e.r_zero;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "E^alpha(" << L << "," << j << ") = " << fmt6(e.value) << " ("
              << regime_name(e.regime) << ")\n";
  }
  return kExitOk;
}

int cmd_region(double sigma, const std::vector<double>& input,
               const std::vector<double>& compound_sigmas, bool do_union,
               double grid, const std::string& output, bool as_json) {
  SingleUserChannel w1 = z_channel(sigma);
  MacChannel mac = xor_mac(w1);
  std::ofstream file;
  std::ostream& os = open_output(file, output);

  if (do_union) {
    UnionRegion u = union_over_inputs(mac, grid);
    os << "r1,r2\n";
    for (const RegionSample& s : u.boundary)
      os << fmt6(s.r1) << "," << fmt6(s.r2) << "\n";
    std::cerr << "max sum-rate " << fmt6(u.max_i12) << " at px1 "
              << fmt6(u.argmax_px1) << " py1 " << fmt6(u.argmax_py1) << "\n";
    return kExitOk;
  }

  if (input.empty())
    throw CLI::ValidationError("region: need --input PX1 [PY1] or --union");
  Dist px({1.0 - input[0], input[0]});
  Dist py = input.size() > 1 ? Dist({1.0 - input[1], input[1]}) : px;
  Pentagon pent;
  if (compound_sigmas.empty()) {
    pent = pentagon(px, py, mac);
  } else {
    std::vector<MacChannel> family{mac};
    for (double s : compound_sigmas) family.push_back(xor_mac(z_channel(s)));
    pent = compound_region(px, py, family);
  }
  if (as_json) {
    json out;
    out["schema"] = "amacee.region.v1";
    out["i1"] = pent.i1;
    out["i2"] = pent.i2;
    out["i12"] = pent.i12;
    std::cout << out.dump() << "\n";
  } else {
    os << "i1,i2,i12\n"
       << fmt6(pent.i1) << "," << fmt6(pent.i2) << "," << fmt6(pent.i12) << "\n";
  }
  return kExitOk;
}

struct SimulateOptions {
  int n = 8;
  int K = 3;
  double sigma = 0.101;
  std::vector<double> rates{0.0, 0.0};
  int delay = -1;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::vector<int> type_x, type_y;
  std::uint64_t cap = 1u << 20;
  std::string output;
};

std::vector<int> default_type(int n, double sigma) {
  SingleUserChannel w1 = z_channel(sigma);
  Dist pstar = default_input(w1);
  int ones = static_cast<int>(std::lround(n * pstar[1]));
  ones = std::max(1, std::min(n - 1, ones));
  return {n - ones, ones};
}

int cmd_simulate(const SimulateOptions& opt) {
  std::vector<int> tx = opt.type_x.empty() ? default_type(opt.n, opt.sigma) : opt.type_x;
  std::vector<int> ty = opt.type_y.empty() ? tx : opt.type_y;
  int m1 = std::max(1, static_cast<int>(std::lround(std::exp2(opt.n * opt.rates[0]))));
  int m2 = std::max(1, static_cast<int>(std::lround(std::exp2(opt.n * opt.rates[1]))));
  AmacCode code = build_code(opt.n, opt.K, m1, m2, tx, ty, opt.seed);
  int D = opt.delay >= 0 ? opt.delay
                         : ((opt.K + 1) / 2 - 1) * opt.n + opt.n / 2;
  MacChannel mac = xor_mac(z_channel(opt.sigma));
  PatternTally tally = run_trials(code, mac, D, opt.trials, opt.seed, opt.cap);

  json out;
  out["schema"] = "amacee.tally.v1";
  out["params"] = {{"n", opt.n},       {"K", opt.K},       {"sigma", opt.sigma},
                   {"D", D},           {"m1", m1},         {"m2", m2},
                   {"rate1", code.rate1()}, {"rate2", code.rate2()},
                   {"type_x", tx},     {"type_y", ty}};
  out["seed"] = opt.seed;
  out["trials"] = tally.trials;
  out["patterns"] = json::array();
  for (const auto& [key, count] : tally.patterns) {
    json rec;
    rec["L1"] = key.first;
    rec["L2"] = key.second;
    rec["count"] = count;
    out["patterns"].push_back(rec);
  }
  out["errors"] = tally.errors();
  out["error_rate"] = tally.error_rate();
  auto [wlo, whi] = wilson_interval(tally.errors(), tally.trials);
  out["wilson95"] = {wlo, whi};
  if (tally.errors() > 0 && tally.error_rate() < 1.0)
    out["empirical_exponent"] = -std::log2(tally.error_rate()) / opt.n;

  std::ofstream file;
  std::ostream& os = open_output(file, opt.output);
  os << out.dump(2) << "\n";
  return kExitOk;
}

struct VerifyOptions {
  bool balanced = false;
  int n_max = 16;
  bool packing = false;
  int probes = 200;
  bool identities = false;
  int instances = 1000;
  std::uint64_t seed = 1;
};

int verify_balanced(int n_max) {
  bool all_ok = true;
  for (int n = 2; n <= n_max; ++n) {
    double dn = delta_n(n, 2);
    double worst_ratio = 2.0;
    std::uint64_t bal_w = 0, tot_w = 0;
    bool ok = true;
    for (int ones = 0; ones <= n; ++ones) {
      BalancedCount c = count_balanced(n, ones, dn);
      if (2 * c.balanced < c.total) ok = false;
      double ratio = static_cast<double>(c.balanced) / c.total;
      if (ratio < worst_ratio) {
        worst_ratio = ratio;
        bal_w = c.balanced;
        tot_w = c.total;
      }
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " n=" << n << " delta_n=" << fmt6(dn)
              << " worst class balanced " << bal_w << "/" << tot_w << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

int verify_packing(int probes, std::uint64_t seed) {
  AmacCode code = build_code(4, 2, 3, 3, {2, 2}, {2, 2}, seed);
  SplitMix64 rng(seed, 999);
  int violations = 0;
  for (int probe = 0; probe < probes; ++probe) {
    int D = static_cast<int>(rng.below(code.n * code.K));
    DelayGeometry g(D, code.n, code.K);
    int free1 = (g.l == 1) ? 2 : 1;
    std::vector<int> L1, L2;
    if (rng.below(2)) L1.push_back(free1);
    if (L1.empty() || rng.below(2)) L2.push_back(1);
    if (L1.empty() && L2.empty()) L1.push_back(free1);
    // V from an actual quadruple so the count is nontrivial
    std::vector<int> i(code.K, 0), ih(code.K, 0), j(code.K, 0), jh(code.K, 0);
    i[free1 - 1] = 1 + static_cast<int>(rng.below(code.m1()));
    ih = i;
    if (!L1.empty()) {
      int v = 1 + static_cast<int>(rng.below(code.m1() - 1));
      ih[free1 - 1] = v == i[free1 - 1] ? code.m1() : v;
    }
    j[0] = 1 + static_cast<int>(rng.below(code.m2()));
    jh = j;
    if (!L2.empty()) {
      int v = 1 + static_cast<int>(rng.below(code.m2() - 1));
      jh[0] = v == j[0] ? code.m2() : v;
    }
    SubtypeSequence V = quadruple_subtypes(code, D, i, ih, j, jh);
    PackingCheck chk = check_packing_inequality(code, D, L1, L2, V);
    json rec;
    rec["probe"] = probe;
    rec["D"] = D;
    rec["L1"] = L1;
    rec["L2"] = L2;
    rec["lhs"] = chk.lhs;
    rec["log2_rhs_no_poly"] = chk.log2_rhs_no_poly;
    rec["ratio"] = chk.ratio;
    rec["holds"] = chk.holds;
    std::cout << rec.dump() << "\n";
    if (!chk.holds) ++violations;
  }
  std::cout << "violation rate " << violations << "/" << probes << "\n";
  return violations == 0 ? kExitOk : kExitCheckFailed;
}

int verify_identities(int instances, std::uint64_t seed) {
  int fail = 0;
  SplitMix64 rng(seed, 7);
  auto rnd_dist = [&](int k) {
    std::vector<double> v(k);
    for (auto& x : v) x = 0.02 + rng.uniform();
    return Dist::normalized(v);
  };
  for (int t = 0; t < instances; ++t) {
    // split identity (entropy form vs divergence form)
    int n = 4 + static_cast<int>(rng.below(24));
    int d = 1 + static_cast<int>(rng.below(n - 1));
    Dist v1 = rnd_dist(2), v2 = rnd_dist(2);
    double wd = static_cast<double>(d) / n;
    Dist p = Dist({wd * v1[0] + (1 - wd) * v2[0], wd * v1[1] + (1 - wd) * v2[1]});
    double a = jensen_shannon_split(p, n, d, v1, v2);
    double b = jensen_shannon_split_div(p, n, d, v1, v2);
    if (std::fabs(a - b) > 1e-10) ++fail;

    // divergence exchange: D(V||V^XY o W) + I_V(X^Y) = D(V||P^XYZ) on P*
    Dist px = rnd_dist(2), py = rnd_dist(2);
    std::vector<double> rows;
    for (int c = 0; c < 4; ++c) {
      Dist r = rnd_dist(2);
      rows.insert(rows.end(), {r[0], r[1]});
    }
    MacChannel w(2, 2, 2, rows);
    std::vector<double> cells(8);
    for (auto& c : cells) c = 0.05 + rng.uniform();
    Joint3 v0 = Joint3::normalized(2, 2, 2, cells);
    Joint2 vxy = couple_to_marginals(v0.marginal_xy(), px, py);
    // rebuild a 3-way joint with those exact marginals
    std::vector<double> vc(8);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) {
          double m = v0.marginal_xy().at(x, y);
          vc[(x * 2 + y) * 2 + z] = vxy.at(x, y) * (m > 0 ? v0.at(x, y, z) / m : 0.5);
        }
    Joint3 v(2, 2, 2, vc);
    Joint3 pxyz = compose(Joint2::product(px, py), w);
    Joint3 vw = compose(v.marginal_xy(), w);
    double lhs = divergence(v, vw) + mutual_information_xy(v);
    double rhs = divergence(v, pxyz);
    if (std::fabs(lhs - rhs) > 1e-10) ++fail;

    // multi-information decomposition
    double i12v = info12(v);
    double dec1 = info1(v) + (entropy(v.marginal_y()) + entropy(v.marginal_z()) -
                              entropy(v.marginal_yz()));
    double dec2 = info2(v) + (entropy(v.marginal_x()) + entropy(v.marginal_z()) -
                              entropy(v.marginal_xz()));
    if (std::fabs(i12v - dec1) > 1e-10 || std::fabs(i12v - dec2) > 1e-10) ++fail;
  }
  std::cout << (fail == 0 ? "[PASS]" : "[FAIL]") << " identities on " << instances
            << " instances, " << fail << " failures\n";
  return fail == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"achievable error exponents for asynchronous multiple-access channels"};
  app.require_subcommand(1);

  // capacity
  auto* cap_cmd = app.add_subcommand("capacity", "single-user channel capacity");
  double cap_sigma = 0.0, cap_bsc = 0.0, cap_tol = 1e-9;
  bool cap_json = false;
  auto* zopt = cap_cmd->add_option("--z-channel", cap_sigma, "Z-channel crossover");
  auto* bopt = cap_cmd->add_option("--bsc", cap_bsc, "BSC crossover");
  cap_cmd->add_option("--tol", cap_tol, "duality-gap tolerance");
  cap_cmd->add_flag("--json", cap_json, "machine-readable output");

  // exponent
  auto* exp_cmd = app.add_subcommand("exponent", "single pattern exponent E^alpha(L,j)");
  double exp_sigma = 0.101, exp_alpha = 0.5, exp_r1 = 0.0, exp_r2 = 0.0;
  int exp_L = 1, exp_j = 1;
  bool exp_json = false;
  std::vector<double> exp_input;
  exp_cmd->add_option("--sigma", exp_sigma, "Z-channel crossover");
  exp_cmd->add_option("--alpha", exp_alpha, "delay fraction d/n");
  exp_cmd->add_option("--L", exp_L, "pattern length");
  exp_cmd->add_option("--j", exp_j, "starting sender");
  exp_cmd->add_option("--r1", exp_r1, "rate of sender 1");
  exp_cmd->add_option("--r2", exp_r2, "rate of sender 2");
  exp_cmd->add_option("--input", exp_input, "P^X(1) [P^Y(1)]")->expected(1, 2);
  exp_cmd->add_flag("--json", exp_json);
  SolverConfig exp_solver;
  add_solver_flags(exp_cmd, &exp_solver);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "rate sweep of the envelope exponent");
  SweepOptions sweep_opt;
  sweep_cmd->add_option("--sigma", sweep_opt.sigma);
  sweep_cmd->add_option("--alpha", sweep_opt.alpha);
  sweep_cmd->add_option("--K", sweep_opt.K, "sync period");
  sweep_cmd->add_option("--M", sweep_opt.M, "max pattern length");
  sweep_cmd->add_option("--step", sweep_opt.step, "rate grid step");
  sweep_cmd->add_option("--r-max", sweep_opt.r_max);
  sweep_cmd->add_flag("--sync-bound", sweep_opt.sync_bound, "add Esp(2R_eff) column");
  sweep_cmd->add_flag("--per-pattern", sweep_opt.per_pattern, "add per-L columns");
  sweep_cmd->add_option("--input", sweep_opt.input, "P^X(1) [P^Y(1)]")->expected(1, 2);
  sweep_cmd->add_option("--output", sweep_opt.output, "CSV path (default stdout)");
  add_solver_flags(sweep_cmd, &sweep_opt.solver);

  // region
  auto* reg_cmd = app.add_subcommand("region", "pentagon / compound / union regions");
  double reg_sigma = 0.101, reg_grid = 0.005;
  std::vector<double> reg_input, reg_compound;
  bool reg_union = false, reg_json = false;
  std::string reg_output;
  reg_cmd->add_option("--z-channel", reg_sigma, "Z-channel crossover");
  reg_cmd->add_option("--input", reg_input, "P^X(1) [P^Y(1)]")->expected(1, 2);
  reg_cmd->add_option("--compound", reg_compound, "additional Z-channel sigmas");
  reg_cmd->add_flag("--union", reg_union, "union over input grid");
  reg_cmd->add_option("--grid", reg_grid, "input grid step");
  reg_cmd->add_option("--output", reg_output);
  reg_cmd->add_flag("--json", reg_json);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo error-pattern tally");
  SimulateOptions sim_opt;
  sim_cmd->add_option("--n", sim_opt.n, "blocklength");
  sim_cmd->add_option("--K", sim_opt.K, "sync period");
  sim_cmd->add_option("--sigma", sim_opt.sigma, "Z-channel crossover");
  sim_cmd->add_option("--rates", sim_opt.rates, "R1 R2")->expected(2);
  sim_cmd->add_option("--delay", sim_opt.delay, "delay D (default: centered)");
  sim_cmd->add_option("--trials", sim_opt.trials);
  sim_cmd->add_option("--seed", sim_opt.seed);
  sim_cmd->add_option("--type-x", sim_opt.type_x, "symbol counts")->expected(2);
  sim_cmd->add_option("--type-y", sim_opt.type_y, "symbol counts")->expected(2);
  sim_cmd->add_option("--decode-cap", sim_opt.cap, "candidate-space cap");
  sim_cmd->add_option("--output", sim_opt.output);

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "combinatorial verification suites");
  VerifyOptions ver_opt;
  ver_cmd->add_flag("--balanced", ver_opt.balanced, "delta-expurgating counts");
  ver_cmd->add_option("--n-max", ver_opt.n_max);
  ver_cmd->add_flag("--packing", ver_opt.packing, "packing-inequality probes");
  ver_cmd->add_option("--probes", ver_opt.probes);
  ver_cmd->add_flag("--identities", ver_opt.identities, "information identities");
  ver_cmd->add_option("--instances", ver_opt.instances);
  ver_cmd->add_option("--seed", ver_opt.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cap_cmd->parsed())
      return cmd_capacity(channel_from_flags(cap_sigma, cap_bsc, zopt->count() > 0,
                                             bopt->count() > 0),
                          cap_tol, cap_json);
    if (exp_cmd->parsed())
      return cmd_exponent(exp_sigma, exp_alpha, exp_L, exp_j, exp_r1, exp_r2,
                          exp_input, exp_json, exp_solver);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opt);
    if (reg_cmd->parsed())
      return cmd_region(reg_sigma, reg_input, reg_compound, reg_union, reg_grid,
                        reg_output, reg_json);
    if (sim_cmd->parsed()) return cmd_simulate(sim_opt);
    if (ver_cmd->parsed()) {
      if (!ver_opt.balanced && !ver_opt.packing && !ver_opt.identities)
        throw CLI::ValidationError("verify: pick --balanced, --packing or --identities");
      int rc = kExitOk;
      if (ver_opt.balanced) rc = std::max(rc, verify_balanced(ver_opt.n_max));
      if (ver_opt.packing) rc = std::max(rc, verify_packing(ver_opt.probes, ver_opt.seed));
      if (ver_opt.identities)
        rc = std::max(rc, verify_identities(ver_opt.instances, ver_opt.seed));
      return rc;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
