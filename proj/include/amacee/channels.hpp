#ifndef AMACEE_CHANNELS_HPP_
#define AMACEE_CHANNELS_HPP_

#include <utility>

#include "amacee/prob.hpp"
#include "amacee/solver.hpp"

namespace amacee {

/// Z-channel with crossover sigma: rows [(1,0), (sigma, 1-sigma)].
SingleUserChannel z_channel(double sigma);

/// Binary symmetric channel (CLI convenience).
SingleUserChannel bsc(double p);

/// Two-sender MAC sending x XOR y through a binary-input single-user channel.
MacChannel xor_mac(const SingleUserChannel& w1);

struct CapacityResult {
  double capacity = 0.0;  // bits per channel use
  Dist input;
  int iterations = 0;
};

/// Channel capacity by alternating maximization with the duality-gap
/// stopping rule: successive lower/upper bounds bracket C within tol.
CapacityResult capacity(const SingleUserChannel& w, double tol = 1e-9,
                        int max_iterations = 1000000);

/// Input distribution P* such that the XOR of two iid P* samples has law q;
/// requires q(1) <= 1/2.
Dist xor_preimage_input(const Dist& q);

/// Sphere-packing exponent of a binary-input single-user channel:
/// max over inputs P (grid at p_step) of min over V with I(P,V) <= r of
/// D(V||W|P). The inner minimum reuses the exponent-core lambda sweep on the
/// |Y|=1 lift of the channel.
double sphere_packing_exponent(const SingleUserChannel& w, double r,
                               double p_step = 1e-3,
                               const SolverConfig& cfg = {});

/// Inner sphere-packing minimum for a fixed input distribution.
double sphere_packing_inner(const SingleUserChannel& w, const Dist& p, double r,
                            const SolverConfig& cfg = {});

}  // namespace amacee

#endif  // AMACEE_CHANNELS_HPP_
