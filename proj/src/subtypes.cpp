#include "amacee/subtypes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace amacee {
namespace {

std::uint64_t checked_mul_div(std::uint64_t acc, std::uint64_t num, std::uint64_t den) {
  // acc * num is guaranteed divisible by den along the multinomial recurrence
  unsigned __int128 wide = static_cast<unsigned __int128>(acc) * num;
  wide /= den;
  if (wide > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("type_class_size: count exceeds 64 bits");
  return static_cast<std::uint64_t>(wide);
}

std::uint64_t multinomial(const std::vector<int>& counts) {
  std::uint64_t acc = 1;
  std::uint64_t n = 0;
  for (int c : counts) {
    if (c < 0) throw std::invalid_argument("multinomial: negative count");
    for (int k = 1; k <= c; ++k) {
      ++n;
      acc = checked_mul_div(acc, n, static_cast<std::uint64_t>(k));
    }
  }
  return acc;
}

double entropy_of_counts(const std::vector<int>& counts, int n) {
  double h = 0.0;
  for (int c : counts)
    if (c > 0) h -= (static_cast<double>(c) / n) * std::log2(static_cast<double>(c) / n);
  return h;
}

}  // namespace

std::uint64_t type_class_size(const std::vector<int>& counts) {
  int n = 0;
  for (int c : counts) {
    if (c < 0) throw std::invalid_argument("type_class_size: negative count");
    n += c;
  }
  if (n > 64) throw std::invalid_argument("type_class_size: n > 64 unsupported");
  return multinomial(counts);
}

std::uint64_t conditional_type_count(const std::vector<std::vector<int>>& joint_counts) {
  std::uint64_t acc = 1;
  for (const auto& row : joint_counts) {
    std::uint64_t r = multinomial(row);
    unsigned __int128 wide = static_cast<unsigned __int128>(acc) * r;
    if (wide > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("conditional_type_count: count exceeds 64 bits");
    acc = static_cast<std::uint64_t>(wide);
  }
  return acc;
}

double delta_n(int n, int alphabet_max) {
  if (n < 2 || alphabet_max < 1)
    throw std::invalid_argument("delta_n: need n >= 2, alphabet >= 1");
  return 3.0 * alphabet_max * std::log2(static_cast<double>(n)) / n;
}

double jensen_shannon_split(const Dist& p, int n, int d, const Dist& v1,
                            const Dist& v2) {
  if (d < 1 || d >= n) throw std::invalid_argument("jensen_shannon_split: need 0 < d < n");
  if (p.size() != v1.size() || p.size() != v2.size())
    throw DimensionError("jensen_shannon_split: alphabet mismatch");
  double wd = static_cast<double>(d) / n;
  for (int a = 0; a < p.size(); ++a)
    if (std::fabs(wd * v1[a] + (1.0 - wd) * v2[a] - p[a]) > 1e-9)
      throw std::domain_error("jensen_shannon_split: mixture identity violated");
  double v = entropy(p) - wd * entropy(v1) - (1.0 - wd) * entropy(v2);
  return v > 0.0 ? v : 0.0;
}

double jensen_shannon_split_div(const Dist& p, int n, int d, const Dist& v1,
                                const Dist& v2) {
  if (d < 1 || d >= n) throw std::invalid_argument("jensen_shannon_split_div: need 0 < d < n");
  double wd = static_cast<double>(d) / n;
  return wd * divergence(v1, p) + (1.0 - wd) * divergence(v2, p);
}

BalancedCount count_balanced(int n, int ones, double delta) {
  if (n < 2 || n > 20)
    throw std::invalid_argument("count_balanced: enumeration supported for 2 <= n <= 20");
  if (ones < 0 || ones > n) throw std::invalid_argument("count_balanced: bad type");

  // J(d, c) for a prefix of length d holding c ones, via the entropy form
  double hp = entropy_of_counts({n - ones, ones}, n);
  std::vector<std::vector<double>> js(n);
  for (int d = 1; d < n; ++d) {
    js[d].assign(d + 1, 0.0);
    for (int c = 0; c <= d; ++c) {
      int rem = ones - c;
      if (rem < 0 || rem > n - d) {
        js[d][c] = kInf;  // unreachable prefix for this type
        continue;
      }
      double h1 = entropy_of_counts({d - c, c}, d);
      double h2 = entropy_of_counts({n - d - rem, rem}, n - d);
      js[d][c] = hp - (static_cast<double>(d) / n) * h1 -
                 (static_cast<double>(n - d) / n) * h2;
    }
  }

  std::vector<int> seq(n, 0);
  std::fill(seq.end() - ones, seq.end(), 1);
  BalancedCount out;
  do {
    ++out.total;
    int c = 0;
    bool ok = true;
    for (int d = 1; d < n; ++d) {
      c += seq[d - 1];
      if (js[d][c] > delta + 1e-12) {
        ok = false;
        break;
      }
    }
    if (ok) ++out.balanced;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

namespace {

// sets (S1, S2, S12) of subblock indices for error pattern (L1, L2)
struct PatternSets {
  std::set<int> s1, s2, s12;
};

PatternSets pattern_sets(const std::vector<int>& L1, const std::vector<int>& L2, int K) {
  auto in = [](const std::vector<int>& v, int t) {
    return std::find(v.begin(), v.end(), t) != v.end();
  };
  PatternSets ps;
  for (int k = 1; k <= 2 * K; ++k) {
    bool e1 = in(L1, DelayGeometry::block_of_sender1(k));
    int t2 = DelayGeometry::block_of_sender2(k);
    bool e2 = t2 != 0 && in(L2, t2);
    if (e1 && e2)
      ps.s12.insert(k);
    else if (e1)
      ps.s1.insert(k);
    else if (e2)
      ps.s2.insert(k);
  }
  return ps;
}

// multi-information (bits) of selected axes of a flat count tensor
double counts_multi_info(const std::vector<int>& counts, const std::vector<int>& dims,
                         const std::vector<int>& axes) {
  int total = std::accumulate(counts.begin(), counts.end(), 0);
  if (total == 0) return 0.0;

  std::vector<std::size_t> stride(dims.size(), 1);
  for (int a = static_cast<int>(dims.size()) - 2; a >= 0; --a)
    stride[a] = stride[a + 1] * dims[a + 1];

  // joint over the selected axes
  std::size_t jsize = 1;
  for (int a : axes) jsize *= dims[a];
  std::vector<double> joint(jsize, 0.0);
  for (std::size_t idx = 0; idx < counts.size(); ++idx) {
    if (!counts[idx]) continue;
    std::size_t key = 0;
    for (int a : axes) key = key * dims[a] + (idx / stride[a]) % dims[a];
    joint[key] += static_cast<double>(counts[idx]) / total;
  }
  double hj = 0.0;
  for (double v : joint) hj -= xlog2x(v);

  double hsum = 0.0;
  for (std::size_t gi = 0; gi < axes.size(); ++gi) {
    std::vector<double> m(dims[axes[gi]], 0.0);
    for (std::size_t idx = 0; idx < counts.size(); ++idx) {
      if (!counts[idx]) continue;
      m[(idx / stride[axes[gi]]) % dims[axes[gi]]] +=
          static_cast<double>(counts[idx]) / total;
    }
    for (double v : m) hsum -= xlog2x(v);
  }
  return hsum - hj;
}

}  // namespace

SubtypeSequence quadruple_subtypes(const AmacCode& code, int D,
                                   const std::vector<int>& i,
                                   const std::vector<int>& ihat,
                                   const std::vector<int>& j,
                                   const std::vector<int>& jhat) {
  DelayGeometry g(D, code.n, code.K);
  std::vector<int> x = assemble_x(code, g, i);
  std::vector<int> xh = assemble_x(code, g, ihat);
  std::vector<int> y = assemble_y(code, g, j);
  std::vector<int> yh = assemble_y(code, g, jhat);

  SubtypeSequence out;
  int nx = code.nx, ny = code.ny;
  for (int k = 1; k <= 2 * code.K; ++k) {
    int len = g.subblock_length(k);
    int off = g.subblock_offset(k);
    std::vector<int> counts(static_cast<std::size_t>(nx) * nx * ny * ny, 0);
    for (int s = 0; s < len; ++s) {
      int idx = ((x[off + s] * nx + xh[off + s]) * ny + y[off + s]) * ny + yh[off + s];
      ++counts[idx];
    }
    out.counts.push_back(std::move(counts));
    out.lengths.push_back(len);
  }
  return out;
}

PackingCheck check_packing_inequality(const AmacCode& code, int D,
                                      const std::vector<int>& L1,
                                      const std::vector<int>& L2,
                                      const SubtypeSequence& V) {
  if (code.n > 6 || code.K != 2 || code.m1() > 4 || code.m2() > 4)
    throw std::domain_error(
        "check_packing_inequality: supported only for n <= 6, K = 2, |C| <= 4");
  const int K = code.K;
  DelayGeometry g(D, code.n, code.K);
  for (int t : L1)
    if (t < 1 || t > K || t == g.l)
      throw std::invalid_argument("check_packing_inequality: L1 may not contain l");
  for (int t : L2)
    if (t < 1 || t >= K)
      throw std::invalid_argument("check_packing_inequality: L2 may not contain K");
  if (static_cast<int>(V.counts.size()) != 2 * K)
    throw std::invalid_argument("check_packing_inequality: V must have 2K subtypes");

  // enumerate EP(L1, L2) exactly
  auto in = [](const std::vector<int>& v, int t) {
    return std::find(v.begin(), v.end(), t) != v.end();
  };
  std::vector<int> free1, free2;
  for (int t = 1; t <= K; ++t)
    if (t != g.l) free1.push_back(t);
  for (int t = 1; t < K; ++t) free2.push_back(t);

  std::uint64_t lhs = 0;
  std::vector<int> i(K, 0), ih(K, 0), j(K, 0), jh(K, 0);
  // odometer over (i values, ihat deviations, j values, jhat deviations)
  std::function<void(std::size_t)> rec_j2;
  std::function<void(std::size_t)> rec_j1;
  std::function<void(std::size_t)> rec_i2;
  std::function<void(std::size_t)> rec_i1;

  auto matches = [&]() {
    SubtypeSequence got = quadruple_subtypes(code, D, i, ih, j, jh);
    for (int k = 0; k < 2 * K; ++k)
      if (got.counts[k] != V.counts[k]) return false;
    return true;
  };

  rec_j2 = [&](std::size_t fi) {
    if (fi == free2.size()) {
      if (matches()) ++lhs;
      return;
    }
    int t = free2[fi];
    if (in(L2, t)) {
      for (int v = 1; v <= code.m2(); ++v) {
        if (v == j[t - 1]) continue;
        jh[t - 1] = v;
        rec_j2(fi + 1);
      }
    } else {
      jh[t - 1] = j[t - 1];
      rec_j2(fi + 1);
    }
  };
  rec_j1 = [&](std::size_t fi) {
    if (fi == free2.size()) {
      rec_j2(0);
      return;
    }
    int t = free2[fi];
    for (int v = 1; v <= code.m2(); ++v) {
      j[t - 1] = v;
      rec_j1(fi + 1);
    }
  };
  rec_i2 = [&](std::size_t fi) {
    if (fi == free1.size()) {
      rec_j1(0);
      return;
    }
    int t = free1[fi];
    if (in(L1, t)) {
      for (int v = 1; v <= code.m1(); ++v) {
        if (v == i[t - 1]) continue;
        ih[t - 1] = v;
        rec_i2(fi + 1);
      }
    } else {
      ih[t - 1] = i[t - 1];
      rec_i2(fi + 1);
    }
  };
  rec_i1 = [&](std::size_t fi) {
    if (fi == free1.size()) {
      rec_i2(0);
      return;
    }
    int t = free1[fi];
    for (int v = 1; v <= code.m1(); ++v) {
      i[t - 1] = v;
      rec_i1(fi + 1);
    }
  };
  rec_i1(0);

  // exponential bound (base-2 log), without the polynomial factor
  PatternSets ps = pattern_sets(L1, L2, K);
  std::vector<int> dims{code.nx, code.nx, code.ny, code.ny};
  double log2_rhs = (K - 1) * (std::log2(static_cast<double>(code.m1())) +
                               std::log2(static_cast<double>(code.m2())));
  double r1 = code.rate1(), r2 = code.rate2();
  for (int k = 1; k <= 2 * K; ++k) {
    int nk = V.lengths[k - 1];
    if (nk == 0) continue;
    const std::vector<int>& c = V.counts[k - 1];
    if (ps.s1.count(k)) {
      log2_rhs -= nk * (counts_multi_info(c, dims, {1, 0, 2}) - r1);
    } else if (ps.s2.count(k)) {
      log2_rhs -= nk * (counts_multi_info(c, dims, {3, 0, 2}) - r2);
    } else if (ps.s12.count(k)) {
      log2_rhs -= nk * (counts_multi_info(c, dims, {1, 3, 0, 2}) - r1 - r2);
    } else {
      log2_rhs -= nk * counts_multi_info(c, dims, {0, 2});
    }
  }

  PackingCheck out;
  out.lhs = lhs;
  out.log2_rhs_no_poly = log2_rhs;
  out.ratio = lhs == 0 ? 0.0 : std::exp2(std::log2(static_cast<double>(lhs)) - log2_rhs);
  double log2_pn = (code.nx + code.ny + 2.0) * 2.0 * K *
                   std::log2(static_cast<double>(code.n) + 1.0);
  out.holds = lhs == 0 ||
              std::log2(static_cast<double>(lhs)) <= log2_rhs + log2_pn + 1e-9;
  return out;
}

}  // namespace amacee
