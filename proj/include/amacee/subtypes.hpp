#ifndef AMACEE_SUBTYPES_HPP_
#define AMACEE_SUBTYPES_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "amacee/prob.hpp"
#include "amacee/sim.hpp"

namespace amacee {

/// Exact size of the type class T^n_P for integer counts summing to n
/// (multinomial coefficient). Overflow beyond 64 bits throws.
std::uint64_t type_class_size(const std::vector<int>& counts);

/// Number of y-sequences with joint type V against a fixed x of type V^X;
/// `joint_counts[a][b]` are the integer pair counts. Equals the product of
/// per-row multinomials.
std::uint64_t conditional_type_count(const std::vector<std::vector<int>>& joint_counts);

/// delta_n = 3 log2(n)/n * alphabet_max  (the expurgation threshold).
double delta_n(int n, int alphabet_max);

/// Jensen-Shannon gap of a split: H(P) - (d/n)H(V1) - ((n-d)/n)H(V2).
/// Requires the mixture identity (d/n)V1 + ((n-d)/n)V2 = P.
double jensen_shannon_split(const Dist& p, int n, int d, const Dist& v1,
                            const Dist& v2);

/// The provably equal weighted-divergence form
/// (d/n)D(V1||P) + ((n-d)/n)D(V2||P); kept separate so the two routes can be
/// checked against each other.
double jensen_shannon_split_div(const Dist& p, int n, int d, const Dist& v1,
                                const Dist& v2);

struct BalancedCount {
  std::uint64_t balanced = 0;
  std::uint64_t total = 0;
};

/// Exhaustively enumerates the binary type class with `ones` ones out of n
/// and counts the sequences whose every split point has JS gap <= delta.
BalancedCount count_balanced(int n, int ones, double delta);

/// Subtype sequence of a tuple: per subblock k, the joint type of the rows.
/// Stored as integer count tensors with denominators n_k.
struct SubtypeSequence {
  // counts[k] is a flattened joint count tensor over (X,Xhat,Y,Yhat)
  std::vector<std::vector<int>> counts;
  std::vector<int> lengths;  // n_k
};

struct PackingCheck {
  std::uint64_t lhs = 0;        // exact quadruple count in T_V
  double log2_rhs_no_poly = 0;  // exponential bound without the p_n factor
  double ratio = 0.0;           // lhs / 2^log2_rhs_no_poly
  bool holds = false;           // lhs <= p_n * 2^log2_rhs_no_poly (diagnostic)
};

/// Empirical check of the packing inequality on a tiny code: counts the
/// quadruples (i, ihat, j, jhat) in EP(L1, L2) whose input arrays have the
/// given subtype sequence, against the exponential bound. The polynomial
/// slack p_n is diagnostic only (the inequality is existential over codes);
/// we use p_n = (n+1)^{(|X|+|Y|+2) * 2K}.
PackingCheck check_packing_inequality(const AmacCode& code, int D,
                                      const std::vector<int>& L1,
                                      const std::vector<int>& L2,
                                      const SubtypeSequence& V);

/// Subtype sequence of the quadruple (x(i), x(ihat), y(j), y(jhat)).
SubtypeSequence quadruple_subtypes(const AmacCode& code, int D,
                                   const std::vector<int>& i,
                                   const std::vector<int>& ihat,
                                   const std::vector<int>& j,
                                   const std::vector<int>& jhat);

}  // namespace amacee

#endif  // AMACEE_SUBTYPES_HPP_
