#ifndef AMACEE_COMMON_HPP_
#define AMACEE_COMMON_HPP_

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace amacee {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Probability validity tolerance on construction.
inline constexpr double kProbTol = 1e-12;

// x*log2(x) with the 0*log(0)=0 convention.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// x*log2(x/y); +inf when x>0, y=0.
inline double xlog2_ratio(double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return kInf;
  return x * std::log2(x / y);
}

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
  double residual;
  int iterations;
  ConvergenceError(const std::string& what, double res, int it)
      : std::runtime_error(what), residual(res), iterations(it) {}
};

// Runs fn(i) for i in [0, count) on up to `threads` workers. Results must be
// written to caller-owned slots indexed by i so the merge is deterministic.
template <typename Fn>
void parallel_for(std::size_t count, const Fn& fn, unsigned threads = 0) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (threads > count) threads = static_cast<unsigned>(count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&fn, &next, count] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

// SplitMix64: counter-based generator. Stream `s` of a run with seed `seed`
// starts at state mix(seed, s); successive outputs advance the counter by the
// golden gamma. Identical (seed, stream) always yields the identical sequence,
// independent of scheduling.
class SplitMix64 {
 public:
  SplitMix64(std::uint64_t seed, std::uint64_t stream) {
    state_ = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    next();  // decorrelate nearby streams
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform double in [0,1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, bound) by rejection
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace amacee

#endif  // AMACEE_COMMON_HPP_
