#include "amacee/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "amacee/subtypes.hpp"

namespace amacee {
namespace {

std::vector<int> sample_from_type_class(const std::vector<int>& counts, int n,
                                        SplitMix64* rng) {
  std::vector<int> word;
  word.reserve(n);
  for (int sym = 0; sym < static_cast<int>(counts.size()); ++sym)
    word.insert(word.end(), counts[sym], sym);
  // Fisher-Yates shuffle of the fixed multiset = uniform over the type class
  for (int i = n - 1; i > 0; --i) {
    int k = static_cast<int>(rng->below(static_cast<std::uint64_t>(i) + 1));
    std::swap(word[i], word[k]);
  }
  return word;
}

std::vector<std::vector<int>> sample_distinct_words(const std::vector<int>& counts,
                                                    int n, int how_many,
                                                    SplitMix64* rng) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  int stale = 0;
  while (static_cast<int>(out.size()) < how_many) {
    std::vector<int> w = sample_from_type_class(counts, n, rng);
    if (seen.insert(w).second) {
      out.push_back(std::move(w));
      stale = 0;
    } else if (++stale > 100000) {
      throw std::runtime_error("sample_distinct_words: rejection stalled");
    }
  }
  return out;
}

}  // namespace

AmacCode build_code(int n, int K, int m1, int m2, const std::vector<int>& type_x,
                    const std::vector<int>& type_y, std::uint64_t seed) {
  if (n < 1 || K < 2) throw std::invalid_argument("build_code: need n >= 1, K >= 2");
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("build_code: need at least one codeword");
  auto check_type = [n](const std::vector<int>& t, const char* who) {
    int sum = 0;
    for (int c : t) {
      if (c < 0) throw std::invalid_argument(std::string("build_code: negative count for ") + who);
      sum += c;
    }
    if (sum != n)
      throw std::invalid_argument(std::string("build_code: type counts of ") + who +
                                  " do not sum to n");
  };
  check_type(type_x, "sender 1");
  check_type(type_y, "sender 2");

  // distinctness feasibility: m words plus the sync must fit in the class
  if (static_cast<std::uint64_t>(m1) + 1 > type_class_size(type_x))
    throw std::domain_error("build_code: 2^{nR1}+1 exceeds |T^n_{P^X}|");
  if (static_cast<std::uint64_t>(m2) + 1 > type_class_size(type_y))
    throw std::domain_error("build_code: 2^{nR2}+1 exceeds |T^n_{P^Y}|");

  AmacCode code;
  code.n = n;
  code.K = K;
  code.nx = static_cast<int>(type_x.size());
  code.ny = static_cast<int>(type_y.size());
  code.type_x = type_x;
  code.type_y = type_y;
  SplitMix64 rng1(seed, 1);
  SplitMix64 rng2(seed, 2);
  code.words1 = sample_distinct_words(type_x, n, m1 + 1, &rng1);
  code.words2 = sample_distinct_words(type_y, n, m2 + 1, &rng2);
  return code;
}

DelayGeometry::DelayGeometry(int delay, int blocklen, int period)
    : D(delay), n(blocklen), K(period) {
  if (n < 1 || K < 2) throw std::invalid_argument("DelayGeometry: need n >= 1, K >= 2");
  if (D < 0 || D > n * K - 1)
    throw std::invalid_argument("DelayGeometry: D outside [0, nK-1]");
  d = D % n;
  l = (D - d) / n + 1;
}

int DelayGeometry::subblock_offset(int k) const {
  int t = (k - 1) / 2;  // full blocks before subblock k
  return t * n + ((k % 2 == 1) ? 0 : n - d);
}

int DelayGeometry::block_of_sender1(int k) { return (k % 2 == 1) ? (k + 1) / 2 : k / 2; }
int DelayGeometry::block_of_sender2(int k) { return (k % 2 == 1) ? (k - 1) / 2 : k / 2; }

std::vector<int> assemble_x(const AmacCode& code, const DelayGeometry& g,
                            const std::vector<int>& i_msgs) {
  if (static_cast<int>(i_msgs.size()) != g.K || i_msgs[g.l - 1] != 0)
    throw std::invalid_argument("assemble_x: need K entries with the sync slot at l");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(g.n) * g.K);
  for (int t = 1; t <= g.K; ++t) {
    const std::vector<int>& w = code.words1.at(i_msgs[t - 1]);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

std::vector<int> assemble_y(const AmacCode& code, const DelayGeometry& g,
                            const std::vector<int>& j_msgs) {
  if (static_cast<int>(j_msgs.size()) != g.K || j_msgs[g.K - 1] != 0)
    throw std::invalid_argument("assemble_y: need K entries with the sync slot at K");
  const std::vector<int>& sync = code.words2[0];
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(g.n) * g.K);
  out.insert(out.end(), sync.begin() + g.d, sync.end());  // y''(0)
  for (int t = 1; t <= g.K - 1; ++t) {
    const std::vector<int>& w = code.words2.at(j_msgs[t - 1]);
    out.insert(out.end(), w.begin(), w.end());
  }
  out.insert(out.end(), sync.begin(), sync.begin() + g.d);  // y'(0)
  return out;
}

namespace {

// x-content of subblock k given the word at block t1(k): odd k takes the
// first n-d symbols, even k the last d.
inline std::pair<int, int> x_slice(const DelayGeometry& g, int k) {
  return (k % 2 == 1) ? std::make_pair(0, g.n - g.d)
                      : std::make_pair(g.n - g.d, g.n);
}
// y-content: even k takes the first d symbols, odd k the last n-d.
inline std::pair<int, int> y_slice(const DelayGeometry& g, int k) {
  return (k % 2 == 1) ? std::make_pair(g.d, g.n) : std::make_pair(0, g.d);
}

double empirical_multi_info(const int* xs, const int* ys, const int* zs, int len,
                            int nx, int ny, int nz) {
  if (len == 0) return 0.0;
  std::vector<double> joint(static_cast<std::size_t>(nx) * ny * nz, 0.0);
  double w = 1.0 / len;
  for (int i = 0; i < len; ++i)
    joint[(static_cast<std::size_t>(xs[i]) * ny + ys[i]) * nz + zs[i]] += w;
  std::vector<double> mx(nx, 0.0), my(ny, 0.0), mz(nz, 0.0);
  double hj = 0.0;
  std::size_t c = 0;
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b)
      for (int e = 0; e < nz; ++e, ++c) {
        double t = joint[c];
        hj -= xlog2x(t);
        mx[a] += t;
        my[b] += t;
        mz[e] += t;
      }
  double h = 0.0;
  for (double t : mx) h -= xlog2x(t);
  for (double t : my) h -= xlog2x(t);
  for (double t : mz) h -= xlog2x(t);
  return h - hj;
}

}  // namespace

double mmi_score(const AmacCode& code, const DelayGeometry& g,
                 const std::vector<int>& i_msgs, const std::vector<int>& j_msgs,
                 const std::vector<int>& z) {
  std::vector<int> xw = assemble_x(code, g, i_msgs);
  std::vector<int> yw = assemble_y(code, g, j_msgs);
  double score = 0.0;
  int nz = 2;
  for (int v : z) nz = std::max(nz, v + 1);
  for (int k = 1; k <= 2 * g.K; ++k) {
    int len = g.subblock_length(k);
    if (len == 0) continue;
    int off = g.subblock_offset(k);
    score += len * empirical_multi_info(xw.data() + off, yw.data() + off,
                                        z.data() + off, len, code.nx, code.ny, nz);
  }
  return score;
}

DecodeResult mmi_decode(const AmacCode& code, const DelayGeometry& g,
                        const std::vector<int>& z, std::uint64_t candidate_cap) {
  if (static_cast<int>(z.size()) != g.n * g.K)
    throw std::invalid_argument("mmi_decode: output length must be nK");
  const int K = g.K;
  const int m1 = code.m1(), m2 = code.m2();

  double cand_log2 = (K - 1) * (std::log2(static_cast<double>(m1)) +
                                std::log2(static_cast<double>(m2)));
  if (cand_log2 > std::log2(static_cast<double>(candidate_cap)) + 1e-9) {
    std::ostringstream msg;
    msg << "mmi_decode: candidate space 2^" << cand_log2 << " exceeds cap "
        << candidate_cap;
    throw std::domain_error(msg.str());
  }

  int nz = 2;
  for (int v : z) nz = std::max(nz, v + 1);

  // per-subblock score tables: info[k][a][b] = n_k * I(word1_a ^ word2_b ^ z_k)
  std::vector<std::vector<double>> info(2 * K + 1);
  std::vector<int> xsym, ysym;
  for (int k = 1; k <= 2 * K; ++k) {
    int len = g.subblock_length(k);
    if (len == 0) continue;
    info[k].assign(static_cast<std::size_t>(m1 + 1) * (m2 + 1), 0.0);
    auto [xa, xb] = x_slice(g, k);
    auto [ya, yb] = y_slice(g, k);
    int off = g.subblock_offset(k);
    for (int a = 0; a <= m1; ++a)
      for (int b = 0; b <= m2; ++b) {
        const int* xs = code.words1[a].data() + xa;
        const int* ys = code.words2[b].data() + ya;
        info[k][a * (m2 + 1) + b] =
            len * empirical_multi_info(xs, ys, z.data() + off, len, code.nx,
                                       code.ny, nz);
      }
  }

  // lexicographic enumeration of admissible tuples; strict improvement keeps
  // the smallest argmax
  std::vector<int> i_cur(K, 0), j_cur(K, 0);
  std::vector<int> free1, free2;
  for (int t = 1; t <= K; ++t)
    if (t != g.l) free1.push_back(t);
  for (int t = 1; t < K; ++t) free2.push_back(t);
  for (int t : free1) i_cur[t - 1] = 1;
  for (int t : free2) j_cur[t - 1] = 1;

  DecodeResult best;
  best.score = -kInf;
  for (;;) {
    double s = 0.0;
    for (int k = 1; k <= 2 * K; ++k) {
      if (info[k].empty()) continue;
      int a = i_cur[DelayGeometry::block_of_sender1(k) - 1];
      int t2 = DelayGeometry::block_of_sender2(k);
      int b = (t2 == 0) ? 0 : j_cur[t2 - 1];
      s += info[k][a * (m2 + 1) + b];
    }
    if (s > best.score + 1e-12) {
      best.score = s;
      best.i = i_cur;
      best.j = j_cur;
    }
    // odometer over (i, j) in lexicographic order
    int pos = static_cast<int>(free1.size() + free2.size()) - 1;
    for (; pos >= 0; --pos) {
      bool is_i = pos < static_cast<int>(free1.size());
      int t = is_i ? free1[pos] : free2[pos - free1.size()];
      int& slot = is_i ? i_cur[t - 1] : j_cur[t - 1];
      int m = is_i ? m1 : m2;
      if (slot < m) {
        ++slot;
        break;
      }
      slot = 1;
    }
    if (pos < 0) break;
  }
  return best;
}

PatternClass classify_pattern(const std::vector<int>& i, const std::vector<int>& ihat,
                              const std::vector<int>& j, const std::vector<int>& jhat,
                              const DelayGeometry& g) {
  const int K = g.K;
  if (static_cast<int>(i.size()) != K || static_cast<int>(ihat.size()) != K ||
      static_cast<int>(j.size()) != K || static_cast<int>(jhat.size()) != K)
    throw std::invalid_argument("classify_pattern: tuples must have K entries");
  if (i[g.l - 1] != 0 || ihat[g.l - 1] != 0 || j[K - 1] != 0 || jhat[K - 1] != 0)
    throw std::invalid_argument("classify_pattern: sync slots must be 0");

  PatternClass pc;
  for (int t = 1; t <= K; ++t) {
    if (i[t - 1] != ihat[t - 1]) pc.L1.push_back(t);
    if (j[t - 1] != jhat[t - 1]) pc.L2.push_back(t);
  }
  auto in = [](const std::vector<int>& v, int t) {
    return std::binary_search(v.begin(), v.end(), t);
  };
  for (int k = 1; k <= 2 * K; ++k) {
    bool e1 = in(pc.L1, DelayGeometry::block_of_sender1(k));
    int t2 = DelayGeometry::block_of_sender2(k);
    bool e2 = t2 != 0 && in(pc.L2, t2);
    if (e1 && e2)
      pc.S12.insert(k);
    else if (e1)
      pc.S1.insert(k);
    else if (e2)
      pc.S2.insert(k);
  }

  std::set<int> support;
  for (int k : pc.S1) support.insert(k);
  for (int k : pc.S2) support.insert(k);
  for (int k : pc.S12) support.insert(k);
  auto it = support.begin();
  while (it != support.end()) {
    int a = *it;
    int b = a;
    auto jt = std::next(it);
    while (jt != support.end() && *jt == b + 1 && pc.S12.count(*jt)) {
      b = *jt;
      ++jt;
    }
    if (jt != support.end() && *jt == b + 1) {
      b = *jt;  // closing single-sender endpoint
      ++jt;
    }
    pc.components.push_back({a, b - a, (a % 2 == 1) ? 1 : 2});
    it = jt;
  }
  return pc;
}

namespace {

int sample_symbol(const double* row, int nz, double u) {
  double acc = 0.0;
  for (int z = 0; z < nz; ++z) {
    acc += row[z];
    if (u < acc) return z;
  }
  return nz - 1;
}

}  // namespace

PatternTally run_trials(const AmacCode& code, const MacChannel& w, int D,
                        std::uint64_t trials, std::uint64_t seed,
                        std::uint64_t candidate_cap, unsigned threads) {
  if (w.nx() != code.nx || w.ny() != code.ny)
    throw std::invalid_argument("run_trials: channel/code alphabet mismatch");
  DelayGeometry g(D, code.n, code.K);
  const int K = code.K;
  const int nz = w.nz();

  std::vector<double> rows(static_cast<std::size_t>(code.nx) * code.ny * nz);
  for (int x = 0; x < code.nx; ++x)
    for (int y = 0; y < code.ny; ++y)
      for (int z = 0; z < nz; ++z) rows[(x * code.ny + y) * nz + z] = w.at(x, y, z);

  PatternTally tally;
  tally.trials = trials;
  tally.seed = seed;
  tally.n = code.n;
  tally.K = K;
  tally.D = D;
  tally.rate1 = code.rate1();
  tally.rate2 = code.rate2();

  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads < 1) threads = 1;
  std::uint64_t chunk = (trials + threads - 1) / threads;
  std::vector<PatternTally> parts(threads);

  parallel_for(threads, [&](std::size_t part) {
    std::uint64_t lo = part * chunk;
    std::uint64_t hi = std::min(trials, lo + chunk);
    PatternTally& local = parts[part];
    std::vector<int> i_true(K, 0), j_true(K, 0);
    for (std::uint64_t t = lo; t < hi; ++t) {
      SplitMix64 rng(seed, t);
      for (int b = 1; b <= K; ++b)
        i_true[b - 1] = (b == g.l) ? 0 : 1 + static_cast<int>(rng.below(code.m1()));
      for (int b = 1; b <= K; ++b)
        j_true[b - 1] = (b == K) ? 0 : 1 + static_cast<int>(rng.below(code.m2()));
      std::vector<int> xw = assemble_x(code, g, i_true);
      std::vector<int> yw = assemble_y(code, g, j_true);
      std::vector<int> z(xw.size());
      for (std::size_t s = 0; s < z.size(); ++s)
        z[s] = sample_symbol(rows.data() + (xw[s] * code.ny + yw[s]) * nz, nz,
                             rng.uniform());
      DecodeResult dec = mmi_decode(code, g, z, candidate_cap);
      if (dec.i == i_true && dec.j == j_true) {
        ++local.correct;
      } else {
        PatternClass pc = classify_pattern(i_true, dec.i, j_true, dec.j, g);
        ++local.patterns[{pc.L1, pc.L2}];
      }
    }
  }, threads);

  for (const PatternTally& part : parts) {
    tally.correct += part.correct;
    for (const auto& [key, cnt] : part.patterns) tally.patterns[key] += cnt;
  }
  return tally;
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5% normal quantile
  double p = static_cast<double>(k) / n;
  double z2n = z * z / n;
  double denom = 1.0 + z2n;
  double center = (p + z2n / 2.0) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / denom;
  double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = k == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

}  // namespace amacee
