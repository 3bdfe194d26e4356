#ifndef AMACEE_PROB_HPP_
#define AMACEE_PROB_HPP_

#include <vector>

#include "amacee/common.hpp"

namespace amacee {

/// Probability distribution over a finite alphabet {0,..,k-1}.
/// Entries are validated on construction (nonnegative, sum 1 within 1e-12)
/// and never silently renormalized.
class Dist {
 public:
  explicit Dist(std::vector<double> probs);

  /// Builds a Dist from nonnegative weights by explicit normalization.
  static Dist normalized(std::vector<double> weights);

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

 private:
  std::vector<double> p_;
};

/// Joint distribution over X x Y, row-major.
class Joint2 {
 public:
  Joint2(int nx, int ny, std::vector<double> probs);
  static Joint2 product(const Dist& px, const Dist& py);
  static Joint2 normalized(int nx, int ny, std::vector<double> weights);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double at(int x, int y) const { return p_[x * ny_ + y]; }
  const std::vector<double>& probs() const { return p_; }

  Dist marginal_x() const;
  Dist marginal_y() const;

 private:
  int nx_, ny_;
  std::vector<double> p_;
};

/// Joint distribution over X x Y x Z.
class Joint3 {
 public:
  Joint3(int nx, int ny, int nz, std::vector<double> probs);
  static Joint3 normalized(int nx, int ny, int nz, std::vector<double> weights);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double at(int x, int y, int z) const { return p_[(x * ny_ + y) * nz_ + z]; }
  const std::vector<double>& probs() const { return p_; }

  Dist marginal_x() const;
  Dist marginal_y() const;
  Dist marginal_z() const;
  Joint2 marginal_xy() const;
  Joint2 marginal_xz() const;
  Joint2 marginal_yz() const;

 private:
  int nx_, ny_, nz_;
  std::vector<double> p_;
};

/// Stochastic matrix W: X -> Z (one row per input symbol).
class SingleUserChannel {
 public:
  SingleUserChannel(int nx, int nz, std::vector<double> rows);

  int nx() const { return nx_; }
  int nz() const { return nz_; }
  double at(int x, int z) const { return w_[x * nz_ + z]; }

 private:
  int nx_, nz_;
  std::vector<double> w_;
};

/// Stochastic matrix W: X x Y -> Z.
class MacChannel {
 public:
  MacChannel(int nx, int ny, int nz, std::vector<double> rows,
             std::string construction = "");

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double at(int x, int y, int z) const { return w_[(x * ny_ + y) * nz_ + z]; }
  const std::string& construction() const { return construction_; }

 private:
  int nx_, ny_, nz_;
  std::vector<double> w_;
  std::string construction_;
};

// ---- information measures (bits) ----

double entropy(const Dist& p);
double entropy(const Joint2& p);
double entropy(const Joint3& p);

double divergence(const Dist& p, const Dist& q);
double divergence(const Joint2& p, const Joint2& q);
double divergence(const Joint3& p, const Joint3& q);

double variational_distance(const Dist& p, const Dist& q);
double variational_distance(const Joint2& p, const Joint2& q);
double variational_distance(const Joint3& p, const Joint3& q);

/// Multi-information of a grouped joint: sum of group-marginal entropies
/// minus the joint entropy. `dims` are the axis sizes of the flattened
/// row-major tensor `probs`; `groups` partitions the axis indices.
double multi_information(const std::vector<double>& probs,
                         const std::vector<int>& dims,
                         const std::vector<std::vector<int>>& groups);

/// The four shorthand quantities for a Joint3:
/// I0 = I(X^Y), I1 = I(X^YZ), I2 = I(Y^XZ), I12 = I(X^Y^Z).
double mutual_information_xy(const Joint3& v);
double info1(const Joint3& v);
double info2(const Joint3& v);
double info12(const Joint3& v);
double info(const Joint3& v, int which);  // which in {1,2,12}

/// (V o W)(x,y,z) = V(x,y) W(z|x,y).
Joint3 compose(const Joint2& v, const MacChannel& w);

/// Adjusts a joint to prescribed marginals by the two-stage mass shift;
/// the result r satisfies r^X = px, r^Y = py and
/// ||r - v|| <= ||px - v^X|| + ||py - v^Y||.
Joint2 couple_to_marginals(const Joint2& v, const Dist& px, const Dist& py);

/// Extends an XY-coupling to a channel-consistent joint: the result has
/// XY-marginal vxy_hat, keeps v's conditionals on heavy cells and falls back
/// to w's rows below the threshold eta = sqrt(||vxy_hat - v^XY||).
/// Requires ||vxy_hat - v^XY|| <= (|X||Y|)^-2.
Joint3 extend_coupling_to_channel(const Joint3& v, const Joint2& vxy_hat,
                                  const MacChannel& w);

}  // namespace amacee

#endif  // AMACEE_PROB_HPP_
