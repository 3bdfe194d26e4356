#ifndef AMACEE_SIM_HPP_
#define AMACEE_SIM_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "amacee/prob.hpp"

namespace amacee {

/// Constant-composition code: per sender, a sync word plus M distinct
/// codewords, all of the same type. Word index 0 is the sync word,
/// 1..M are message words.
struct AmacCode {
  int n = 0;
  int K = 2;
  int nx = 2, ny = 2;
  std::vector<std::vector<int>> words1;  // words1[0] = sync
  std::vector<std::vector<int>> words2;
  std::vector<int> type_x, type_y;       // symbol counts, sum = n

  int m1() const { return static_cast<int>(words1.size()) - 1; }
  int m2() const { return static_cast<int>(words2.size()) - 1; }
  double rate1() const { return std::log2(static_cast<double>(m1())) / n; }
  double rate2() const { return std::log2(static_cast<double>(m2())) / n; }
};

/// Samples m1/m2 codewords plus sync words uniformly without replacement
/// from the respective type classes. Deterministic under (seed).
AmacCode build_code(int n, int K, int m1, int m2, const std::vector<int>& type_x,
                    const std::vector<int>& type_y, std::uint64_t seed);

/// Delay bookkeeping: d = D mod n, l = (D-d)/n + 1, subblock lengths
/// n_k = n-d (odd k) or d (even k), k in [1, 2K].
struct DelayGeometry {
  int D = 0, n = 1, K = 2;
  int d = 0, l = 1;

  DelayGeometry(int delay, int blocklen, int period);

  int subblock_length(int k) const { return (k % 2 == 1) ? n - d : d; }
  int subblock_offset(int k) const;         // start position in the window
  static int block_of_sender1(int k);       // t1(k)
  static int block_of_sender2(int k);       // t2(k), 0 = virtual sync block
};

/// Window inputs per the block layout: sender 1 sends K blocks with the
/// sync at block l; sender 2's window is wrapped around the split sync.
/// msgs are 1-based word indices with 0 at the forced sync slots.
std::vector<int> assemble_x(const AmacCode& code, const DelayGeometry& g,
                            const std::vector<int>& i_msgs);
std::vector<int> assemble_y(const AmacCode& code, const DelayGeometry& g,
                            const std::vector<int>& j_msgs);

struct DecodeResult {
  std::vector<int> i, j;
  double score = 0.0;  // sum_k n_k * empirical multi-information
};

/// Maximal multi-information decoder over all admissible message tuples;
/// ties break to the lexicographically smallest (i, j). Throws when the
/// candidate space exceeds `candidate_cap`.
DecodeResult mmi_decode(const AmacCode& code, const DelayGeometry& g,
                        const std::vector<int>& z,
                        std::uint64_t candidate_cap = 1u << 20);

/// MMI score of one candidate pair (for cross-checking the decoder).
double mmi_score(const AmacCode& code, const DelayGeometry& g,
                 const std::vector<int>& i_msgs, const std::vector<int>& j_msgs,
                 const std::vector<int>& z);

struct IrreducibleComponent {
  int k0 = 0;  // first support subblock
  int L = 0;   // length (support size - 1)
  int j = 0;   // 1 if the pattern starts with a sender-1 error
};

struct PatternClass {
  std::vector<int> L1, L2;  // erroneous block indices per sender, sorted
  std::set<int> S1, S2, S12;
  std::vector<IrreducibleComponent> components;
  bool proper() const { return !(L1.empty() && L2.empty()); }
};

PatternClass classify_pattern(const std::vector<int>& i, const std::vector<int>& ihat,
                              const std::vector<int>& j, const std::vector<int>& jhat,
                              const DelayGeometry& g);

struct PatternTally {
  std::uint64_t trials = 0;
  std::uint64_t correct = 0;
  std::uint64_t seed = 0;
  int n = 0, K = 0, D = 0;
  double rate1 = 0.0, rate2 = 0.0;
  // counts keyed by the (L1, L2) block-index sets
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::uint64_t> patterns;

  std::uint64_t errors() const { return trials - correct; }
  double error_rate() const {
    return trials ? static_cast<double>(errors()) / trials : 0.0;
  }
};

/// Monte-Carlo error-pattern tally: per trial, uniform messages, memoryless
/// channel sampling, MMI decoding and classification. Trial t draws from
/// SplitMix64 stream (seed, t), so results are reproducible and independent
/// of the number of workers.
PatternTally run_trials(const AmacCode& code, const MacChannel& w, int D,
                        std::uint64_t trials, std::uint64_t seed,
                        std::uint64_t candidate_cap = 1u << 20,
                        unsigned threads = 0);

/// 95% Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n);

}  // namespace amacee

#endif  // AMACEE_SIM_HPP_
