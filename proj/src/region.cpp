#include "amacee/region.hpp"

#include <algorithm>
#include <cmath>

namespace amacee {

Pentagon pentagon(const Dist& px, const Dist& py, const MacChannel& w) {
  Joint3 p = compose(Joint2::product(px, py), w);
  return {info1(p), info2(p), info12(p)};
}

bool contains(const Pentagon& pent, double r1, double r2) {
  if (r1 < 0.0 || r2 < 0.0)
    throw std::invalid_argument("contains: rates must be nonnegative");
  return r1 <= pent.i1 && r2 <= pent.i2 && r1 + r2 <= pent.i12;
}

Pentagon compound_region(const Dist& px, const Dist& py,
                         const std::vector<MacChannel>& channels) {
  if (channels.empty())
    throw std::invalid_argument("compound_region: empty channel family");
  Pentagon out{kInf, kInf, kInf};
  for (const MacChannel& w : channels) {
    Pentagon p = pentagon(px, py, w);
    out.i1 = std::min(out.i1, p.i1);
    out.i2 = std::min(out.i2, p.i2);
    out.i12 = std::min(out.i12, p.i12);
  }
  return out;
}

UnionRegion union_over_inputs(const MacChannel& w, double grid_step,
                              int boundary_points) {
  if (w.nx() != 2 || w.ny() != 2)
    throw std::invalid_argument("union_over_inputs: binary inputs required");
  if (grid_step <= 0.0 || grid_step > 0.5)
    throw std::invalid_argument("union_over_inputs: bad grid step");
  int n = static_cast<int>(std::round(1.0 / grid_step));

  std::vector<Pentagon> pents;
  pents.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  UnionRegion out;
  double max_r1 = 0.0;
  for (int a = 0; a <= n; ++a) {
    double p1 = std::min(1.0, a * grid_step);
    Dist px({1.0 - p1, p1});
    for (int b = 0; b <= n; ++b) {
      double q1 = std::min(1.0, b * grid_step);
      Pentagon pent = pentagon(px, Dist({1.0 - q1, q1}), w);
      if (pent.i12 > out.max_i12) {
        out.max_i12 = pent.i12;
        out.argmax_px1 = p1;
        out.argmax_py1 = q1;
      }
      max_r1 = std::max(max_r1, std::min(pent.i1, pent.i12));
      pents.push_back(pent);
    }
  }

  out.boundary.reserve(boundary_points);
  for (int i = 0; i < boundary_points; ++i) {
    double r1 = max_r1 * i / (boundary_points - 1);
    double best = -1.0;
    for (const Pentagon& p : pents) {
      if (r1 > p.i1 + 1e-15) continue;
      best = std::max(best, std::min(p.i2, p.i12 - r1));
    }
    if (best >= 0.0) out.boundary.push_back({r1, best});
  }
  return out;
}

}  // namespace amacee
