#include <doctest.h>

#include <cmath>

#include "amacee/channels.hpp"

using namespace amacee;

TEST_CASE("z_channel rows") {
  SingleUserChannel w = z_channel(0.101);
  CHECK(w.at(0, 0) == doctest::Approx(1.0));
  CHECK(w.at(0, 1) == doctest::Approx(0.0));
  CHECK(w.at(1, 0) == doctest::Approx(0.101));
  CHECK(w.at(1, 1) == doctest::Approx(0.899));
  SingleUserChannel id = z_channel(0.0);
  CHECK(id.at(1, 1) == doctest::Approx(1.0));
  SingleUserChannel all0 = z_channel(1.0);
  CHECK(all0.at(1, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(z_channel(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(z_channel(1.1), std::invalid_argument);
}

TEST_CASE("xor_mac") {
  MacChannel id = xor_mac(z_channel(0.0));
  CHECK(id.at(0, 1, 1) == doctest::Approx(1.0));
  CHECK(id.at(0, 1, 0) == doctest::Approx(0.0));
  MacChannel w = xor_mac(z_channel(0.101));
  CHECK(w.at(1, 1, 0) == doctest::Approx(1.0));  // 1 xor 1 = 0 is kept by Z
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) CHECK(w.at(x, y, z) == doctest::Approx(w.at(y, x, z)));
  CHECK_THROWS_AS(xor_mac(SingleUserChannel(3, 2, {1, 0, 0, 1, 0.5, 0.5})),
                  std::invalid_argument);
}

TEST_CASE("capacity of reference channels") {
  CapacityResult c0 = capacity(bsc(0.0));
  CHECK(c0.capacity == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c0.input[0] == doctest::Approx(0.5).epsilon(1e-6));
  CapacityResult chalf = capacity(bsc(0.5));
  CHECK(chalf.capacity == doctest::Approx(0.0).epsilon(1e-9));
  CapacityResult cz = capacity(z_channel(0.101));
  CHECK(cz.capacity == doctest::Approx(0.761167).epsilon(2e-4));
  CHECK(cz.input[0] == doctest::Approx(0.543959).epsilon(2e-4));
  CHECK_THROWS_AS(capacity(z_channel(0.1), -1.0), std::invalid_argument);
}

TEST_CASE("capacity lower bound from explicit inputs never beats C + tol") {
  SingleUserChannel w = z_channel(0.23);
  double tol = 1e-9;
  CapacityResult c = capacity(w, tol);
  SplitMix64 rng(77, 0);
  for (int t = 0; t < 200; ++t) {
    double p1 = rng.uniform();
    Dist q({1.0 - p1, p1});
    std::vector<double> out(2, 0.0);
    for (int x = 0; x < 2; ++x)
      for (int z = 0; z < 2; ++z) out[z] += q[x] * w.at(x, z);
    double mi = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int z = 0; z < 2; ++z) {
        double joint = q[x] * w.at(x, z);
        if (joint > 0) mi += joint * std::log2(w.at(x, z) / out[z]);
      }
    CHECK(mi <= c.capacity + tol);
  }
}

TEST_CASE("xor_preimage_input") {
  Dist a = xor_preimage_input(Dist({1.0, 0.0}));
  CHECK(a[1] == doctest::Approx(0.0));
  Dist b = xor_preimage_input(Dist({0.5, 0.5}));
  CHECK(b[1] == doctest::Approx(0.5));
  Dist q = capacity(z_channel(0.101)).input;
  Dist pstar = xor_preimage_input(q);
  CHECK(pstar[1] == doctest::Approx(0.351746).epsilon(1e-4));
  // defining identity: XOR of two iid P* samples has law q
  CHECK(2.0 * pstar[1] * (1.0 - pstar[1]) == doctest::Approx(q[1]).epsilon(1e-10));
  CHECK_THROWS_AS(xor_preimage_input(Dist({0.3, 0.7})), std::domain_error);
}

TEST_CASE("sphere packing exponent") {
  SingleUserChannel w = z_channel(0.101);
  double C = capacity(w).capacity;

  SUBCASE("zero at capacity") {
    CHECK(sphere_packing_exponent(w, C, 0.005) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(sphere_packing_exponent(w, C + 0.05, 0.005) == doctest::Approx(0.0));
  }

  SUBCASE("rate zero matches the rank-one brute force") {
    // independent oracle: shared output law q over a fine grid, best input P
    double best = 0.0;
    for (int a = 0; a <= 200; ++a) {
      double p1 = a / 200.0;
      double inner = kInf;
      for (int m = 0; m <= 1000; ++m) {
        double q1 = m / 1000.0;
        // q << all rows requires q1 = 0 for the Z channel; other points give inf
        double d = 0.0;
        bool finite = true;
        for (int x = 0; x < 2 && finite; ++x) {
          double px = x == 0 ? 1.0 - p1 : p1;
          if (px <= 0) continue;
          double row = 0.0;
          for (int z = 0; z < 2; ++z) {
            double qz = z == 0 ? 1.0 - q1 : q1;
            if (qz <= 0) continue;
            if (w.at(x, z) <= 0) {
              finite = false;
              break;
            }
            row += qz * std::log2(qz / w.at(x, z));
          }
          d += px * row;
        }
        if (finite) inner = std::min(inner, d);
      }
      if (inner != kInf) best = std::max(best, inner);
    }
    CHECK(sphere_packing_exponent(w, 0.0, 0.005) == doctest::Approx(best).epsilon(5e-3));
  }

  SUBCASE("nonincreasing on a 50-point grid") {
    double prev = kInf;
    for (int k = 0; k < 50; ++k) {
      double r = 0.85 * k / 49.0;
      double v = sphere_packing_exponent(w, r, 0.01);
      CHECK(v <= prev + 1e-9);
      CHECK(v >= 0.0);
      prev = v;
    }
  }

  SUBCASE("matches the pure nested grid search at 10 rate points") {
    // brute force over all conditional rows V << W at step 0.002 (rows with
    // mass on a W-zero have infinite divergence and never attain the min)
    auto esp_bf = [&](double R) {
      const double step = 0.002;
      const int n = 500;
      double best = 0.0;
      for (int a = 0; a <= n; ++a) {
        double p1 = static_cast<double>(a) / n;
        double inner = kInf;
        for (int m = 0; m <= n; ++m) {
          double b = static_cast<double>(m) / n;
          // V(.|0) = (1,0) forced by W(1|0) = 0; V(.|1) = (b, 1-b)
          double pz0 = (1.0 - p1) + p1 * b;
          double info = 0.0;
          if (p1 > 0 && 1.0 - p1 > 0) {
            if (pz0 > 0) info += (1.0 - p1) * std::log2(1.0 / pz0);
            if (b > 0 && pz0 > 0) info += p1 * b * std::log2(b / pz0);
            if (1.0 - b > 0 && 1.0 - pz0 > 0)
              info += p1 * (1.0 - b) * std::log2((1.0 - b) / (1.0 - pz0));
          }
          if (info <= R + 1e-12) {
            double d = 0.0;
            if (b > 0) d += p1 * b * std::log2(b / 0.101);
            if (1.0 - b > 0) d += p1 * (1.0 - b) * std::log2((1.0 - b) / 0.899);
            inner = std::min(inner, d);
          }
        }
        if (inner != kInf) best = std::max(best, inner);
      }
      return best;
    };
    const double rates[10] = {0.50, 0.55, 0.60, 0.65, 0.70, 0.72, 0.74, 0.76, 0.80, 0.85};
    for (double r : rates) {
      double sweep = sphere_packing_exponent(w, r, 0.002);
      double bf = esp_bf(r);
      CHECK(std::fabs(sweep - bf) <= 2e-3);
    }
  }
}
