#ifndef AMACEE_REGION_HPP_
#define AMACEE_REGION_HPP_

#include <vector>

#include "amacee/prob.hpp"

namespace amacee {

/// The three bounds of the achievable-rate pentagon.
struct Pentagon {
  double i1 = 0.0;   // R1 bound
  double i2 = 0.0;   // R2 bound
  double i12 = 0.0;  // sum-rate bound
};

Pentagon pentagon(const Dist& px, const Dist& py, const MacChannel& w);

bool contains(const Pentagon& pent, double r1, double r2);

/// Componentwise infimum over a finite channel family (compound region
/// at fixed inputs).
Pentagon compound_region(const Dist& px, const Dist& py,
                         const std::vector<MacChannel>& channels);

struct RegionSample {
  double r1 = 0.0;
  double r2 = 0.0;  // largest R2 achievable at this R1 over the input grid
};

struct UnionRegion {
  std::vector<RegionSample> boundary;
  double max_i12 = 0.0;
  double argmax_px1 = 0.0;  // P^X(1) attaining max_i12
  double argmax_py1 = 0.0;
};

/// Samples the union over binary input pairs of the pentagons: boundary is
/// the upper envelope R2(R1) over an input grid of the given step.
UnionRegion union_over_inputs(const MacChannel& w, double grid_step = 0.005,
                              int boundary_points = 201);

}  // namespace amacee

#endif  // AMACEE_REGION_HPP_
