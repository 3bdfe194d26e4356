#include <doctest.h>

#include <cmath>

#include "amacee/channels.hpp"
#include "amacee/patterns.hpp"

using namespace amacee;

namespace {

struct XorZStudy {
  Dist pstar;
  MacChannel mac;
  XorZStudy()
      : pstar(xor_preimage_input(capacity(z_channel(0.101)).input)),
        mac(xor_mac(z_channel(0.101))) {}
  ExponentQuery query(double r, int L = 1, int j = 1, double alpha = 0.5) const {
    return {alpha, pstar, pstar, mac, r, r, L, j};
  }
};

}  // namespace

TEST_CASE("beta coefficient tables") {
  for (double a : {0.0, 0.3, 1.0}) {
    BetaCoefficients b = beta_coefficients(1, 1, a);
    CHECK(b.b1 == 1.0);
    CHECK(b.b2 == 0.0);
    CHECK(b.b12 == 0.0);
  }
  BetaCoefficients d = beta_coefficients(2, 2, 0.5);
  CHECK(d.b1 == doctest::Approx(0.5));
  CHECK(d.b2 == doctest::Approx(0.5));
  CHECK(d.b12 == doctest::Approx(0.5));
  BetaCoefficients a5 = beta_coefficients(5, 1, 0.77);
  CHECK(a5.b1 == 1.0);
  CHECK(a5.b2 == 0.0);
  CHECK(a5.b12 == doctest::Approx(2.0));
  BetaCoefficients c = beta_coefficients(4, 1, 0.25);
  CHECK(c.b1 == doctest::Approx(0.75));
  CHECK(c.b12 == doctest::Approx(0.25 + 1.0));
  CHECK_THROWS_AS(beta_coefficients(0, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(beta_coefficients(2, 3, 0.5), std::invalid_argument);
}

TEST_CASE("beta tables equal subblock-weight sums over irreducible supports") {
  for (int L = 1; L <= 10; ++L)
    for (int j : {1, 2})
      for (double alpha : {0.0, 0.25, 0.5, 1.0})
        for (int shift : {0, 2, 4}) {
          int k0 = (j == 1 ? 1 : 2) + shift;
          IrreducibleSets s = irreducible_sets(k0, L);
          REQUIRE(s.j == j);
          auto wsum = [&](const std::set<int>& ks) {
            double b = 0.0;
            for (int k : ks) b += subblock_weight(k, alpha);
            return b;
          };
          BetaCoefficients table = beta_coefficients(L, j, alpha);
          CHECK(wsum(s.s1) == doctest::Approx(table.b1).epsilon(1e-12));
          CHECK(wsum(s.s2) == doctest::Approx(table.b2).epsilon(1e-12));
          CHECK(wsum(s.s12) == doctest::Approx(table.b12).epsilon(1e-12));
        }
}

TEST_CASE("pattern exponent basics on the xor-Z study instance") {
  XorZStudy s;

  SUBCASE("positive at zero rate") {
    PatternExponent e = pattern_exponent(s.query(0.0));
    CHECK(e.value > 0.0);
    CHECK(e.regime == Regime::kLinear);
  }

  SUBCASE("odd L is alpha-free") {
    for (int L : {1, 3, 7}) {
      PatternExponent a = pattern_exponent(s.query(0.21, L, 1, 0.2));
      PatternExponent b = pattern_exponent(s.query(0.21, L, 1, 0.9));
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
    }
  }

  SUBCASE("even L at alpha=1/2 matches the joint two-distribution form") {
    // by the symmetry of the XOR channel with equal inputs, the even-L
    // exponent collapses to coefficients (1, 0, (L-1)/2) with r = L R
    Joint3 p = compose(Joint2::product(s.pstar, s.pstar), s.mac);
    for (int L : {2, 4, 6}) {
      for (double R : {0.1, 0.3}) {
        PatternExponent direct = pattern_exponent(s.query(R, L, 1, 0.5));
        std::array<double, 3> collapsed{1.0, 0.0, (L - 1) / 2.0};
        auto alt = solve_case_split(p, {s.pstar, s.pstar}, collapsed, L * R);
        CHECK(std::fabs(direct.value - alt.exponent) <= 2e-3);
      }
    }
  }

  SUBCASE("alpha-symmetry of even patterns on the symmetric channel") {
    for (int L : {2, 4}) {
      for (double alpha : {0.2, 0.35}) {
        PatternExponent a = pattern_exponent(s.query(0.3, L, 1, alpha));
        PatternExponent b = pattern_exponent(s.query(0.3, L, 2, 1.0 - alpha));
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-7));
      }
    }
  }

  SUBCASE("rate ray convexity (midpoint test)") {
    for (int L : {1, 3}) {
      for (double R : {0.1, 0.2, 0.3}) {
        double h = 0.01;
        double e0 = pattern_exponent(s.query(R - h, L)).value;
        double e1 = pattern_exponent(s.query(R, L)).value;
        double e2 = pattern_exponent(s.query(R + h, L)).value;
        CHECK(e0 + e2 - 2 * e1 >= -1e-7);
      }
    }
  }
}

TEST_CASE("envelope") {
  XorZStudy s;

  SUBCASE("M = 1 is the min of the two single-length exponents") {
    ExponentQuery q = s.query(0.2);
    EnvelopeResult env = envelope_exponent(q, 1);
    q.L = 1;
    q.j = 1;
    double e11 = pattern_exponent(q).value;
    q.j = 2;
    double e12 = pattern_exponent(q).value;
    CHECK(env.value == doctest::Approx(std::min(e11, e12)).epsilon(1e-12));
  }

  SUBCASE("dominant length per the xor-Z study") {
    EnvelopeResult low = envelope_exponent(s.query(0.2), 40);
    CHECK(low.dominant_L == 1);
    EnvelopeResult mid = envelope_exponent(s.query(0.29), 40);
    CHECK(mid.dominant_L == 1);
    EnvelopeResult high = envelope_exponent(s.query(0.388), 40);
    CHECK(high.dominant_L == 40);
    CHECK(high.value > 0.0);
  }
}

TEST_CASE("general pattern exponent") {
  XorZStudy s;
  int K = 5;

  SUBCASE("interleaved two-component pattern reduces to its beta weights") {
    std::set<int> s1{3}, s2{5, 6, 9}, s12{4, 7, 8};
    double alpha = 0.37;
    double direct = general_pattern_exponent(s1, s2, s12, alpha, s.pstar, s.pstar,
                                             s.mac, 0.15, 0.18, K);
    auto w = [&](const std::set<int>& ks) {
      double b = 0.0;
      for (int k : ks) b += subblock_weight(k, alpha);
      return b;
    };
    Joint3 p = compose(Joint2::product(s.pstar, s.pstar), s.mac);
    std::array<double, 3> betas{w(s1), w(s2), w(s12)};
    double r = betas[0] * 0.15 + betas[1] * 0.18 + betas[2] * 0.33;
    auto ref = solve_case_split(p, {s.pstar, s.pstar}, betas, r);
    CHECK(direct == doctest::Approx(ref.exponent).epsilon(1e-12));
  }

  SUBCASE("singleton S1 at alpha") {
    // e_1 = 1 - alpha, so beta = (1-alpha, 0, 0)
    double alpha = 0.3;
    double v = general_pattern_exponent({1}, {}, {}, alpha, s.pstar, s.pstar, s.mac,
                                        0.2, 0.9, K);
    Joint3 p = compose(Joint2::product(s.pstar, s.pstar), s.mac);
    auto ref = solve_case_split(p, {s.pstar, s.pstar}, {1.0 - alpha, 0.0, 0.0},
                                (1.0 - alpha) * 0.2);
    CHECK(v == doctest::Approx(ref.exponent).epsilon(1e-12));
  }

  SUBCASE("irreducible supports match pattern_exponent") {
    SplitMix64 rng(41, 0);
    for (int t = 0; t < 10; ++t) {
      int L = 1 + static_cast<int>(rng.below(2 * K - 2));
      int k0 = 1 + static_cast<int>(rng.below(2 * K - L));
      IrreducibleSets sets = irreducible_sets(k0, L);
      double alpha = rng.uniform();
      double r1 = 0.25 * rng.uniform(), r2 = 0.25 * rng.uniform();
      double general = general_pattern_exponent(sets.s1, sets.s2, sets.s12, alpha,
                                                s.pstar, s.pstar, s.mac, r1, r2, K);
      ExponentQuery q{alpha, s.pstar, s.pstar, s.mac, r1, r2, L, sets.j};
      CHECK(general == doctest::Approx(pattern_exponent(q).value).epsilon(1e-9));
    }
  }

  SUBCASE("overlapping sets are rejected") {
    CHECK_THROWS_AS(general_pattern_exponent({1}, {1}, {}, 0.5, s.pstar, s.pstar,
                                             s.mac, 0.1, 0.1, K),
                    std::invalid_argument);
    CHECK_THROWS_AS(general_pattern_exponent({11}, {}, {}, 0.5, s.pstar, s.pstar,
                                             s.mac, 0.1, 0.1, K),
                    std::invalid_argument);
  }

  SUBCASE("synchronous d=0: alpha=0 zeroes even subblocks") {
    // a both-sender single-slot error at d=0 has beta = (0,0,1)
    double v = general_pattern_exponent({4}, {2}, {3}, 0.0, s.pstar, s.pstar, s.mac,
                                        0.2, 0.2, K);
    Joint3 p = compose(Joint2::product(s.pstar, s.pstar), s.mac);
    auto ref = solve_case_split(p, {s.pstar, s.pstar}, {0.0, 0.0, 1.0}, 0.4);
    CHECK(v == doctest::Approx(ref.exponent).epsilon(1e-12));
  }
}

TEST_CASE("positivity region boundary") {
  XorZStudy s;
  Joint3 p = compose(Joint2::product(s.pstar, s.pstar), s.mac);
  double i1 = info1(p), i2 = info2(p), i12 = info12(p);
  SplitMix64 rng(42, 0);
  for (int t = 0; t < 12; ++t) {
    // rates strictly inside the pentagon keep every pattern exponent positive
    double r1 = i1 * 0.95 * rng.uniform();
    double r2 = std::min(i2 * 0.95, std::max(0.0, i12 * 0.95 - r1)) * rng.uniform();
    for (int L : {1, 2, 5}) {
      ExponentQuery q{0.5, s.pstar, s.pstar, s.mac, r1, r2, L, 1};
      CHECK(pattern_exponent(q).value > 0.0);
    }
  }
  // on/beyond the boundary the exponent vanishes
  ExponentQuery q{0.5, s.pstar, s.pstar, s.mac, i1, 0.0, 1, 1};
  CHECK(pattern_exponent(q).value == 0.0);
}

TEST_CASE("rate sweep") {
  XorZStudy s;
  ExponentQuery q = s.query(0.0);

  SUBCASE("coarse sweep is monotone and finds the zero crossing") {
    SweepResult sweep = rate_sweep(q, 0.30, 0.42, 0.01, 40, 40);
    // tolerance matches the bisection target of the case-split solver
    for (std::size_t i = 0; i + 1 < sweep.rows.size(); ++i)
      CHECK(sweep.rows[i + 1].exponent <= sweep.rows[i].exponent + 1e-7);
    REQUIRE(sweep.has_r_sup);
    CHECK(sweep.r_sup_nominal == doctest::Approx(0.38889).epsilon(0.03));
    CHECK(sweep.r_sup_effective ==
          doctest::Approx(sweep.r_sup_nominal * 39.0 / 40.0).epsilon(1e-12));
  }

  SUBCASE("grid validation") {
    CHECK_THROWS_AS(rate_sweep(q, 0.2, 0.1, 0.01, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(rate_sweep(q, 0.0, 0.1, -0.01, 4, 4), std::invalid_argument);
  }
}

TEST_CASE("best and worst delay guarantees") {
  XorZStudy s;

  SUBCASE("useless channel gives zero for both") {
    std::vector<double> rows;
    for (int c = 0; c < 4; ++c) rows.insert(rows.end(), {0.5, 0.5});
    MacChannel noise(2, 2, 2, rows);
    ExponentQuery q{0.5, s.pstar, s.pstar, noise, 0.05, 0.05, 1, 1};
    BestWorstResult bw = best_worst_delay(q, 4, 0.05);
    CHECK(bw.best == doctest::Approx(0.0));
    CHECK(bw.worst == doctest::Approx(0.0));
  }

  SUBCASE("best dominates worst at a positive rate") {
    ExponentQuery q = s.query(0.3);
    BestWorstResult bw = best_worst_delay(q, 4, 0.1);
    CHECK(bw.best >= bw.worst - 1e-10);
    CHECK(bw.best > 0.0);
  }
}
