#include "amacee/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace amacee {
namespace {

void check_simplex(const std::vector<double>& p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0 || std::isnan(v))
      throw std::invalid_argument(std::string(what) + ": negative entry");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kProbTol)
    throw std::invalid_argument(std::string(what) + ": entries sum to " +
                                std::to_string(sum) + ", not 1");
}

std::vector<double> normalize(std::vector<double> w, const char* what) {
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (sum <= 0.0)
    throw std::invalid_argument(std::string(what) + ": nonpositive total mass");
  for (double& v : w) {
    if (v < 0.0) throw std::invalid_argument(std::string(what) + ": negative entry");
    v /= sum;
  }
  return w;
}

double entropy_flat(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) h -= xlog2x(v);
  return h;
}

double divergence_flat(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw DimensionError("divergence: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double t = xlog2_ratio(p[i], q[i]);
    if (t == kInf) return kInf;
    d += t;
  }
  return d < 0.0 ? 0.0 : d;
}

double vdist_flat(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw DimensionError("variational_distance: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
  return s;
}

}  // namespace

Dist::Dist(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.empty()) throw std::invalid_argument("Dist: empty alphabet");
  check_simplex(p_, "Dist");
}

Dist Dist::normalized(std::vector<double> weights) {
  return Dist(normalize(std::move(weights), "Dist"));
}

Joint2::Joint2(int nx, int ny, std::vector<double> probs)
    : nx_(nx), ny_(ny), p_(std::move(probs)) {
  if (nx_ <= 0 || ny_ <= 0 || p_.size() != static_cast<std::size_t>(nx_) * ny_)
    throw DimensionError("Joint2: bad shape");
  check_simplex(p_, "Joint2");
}

Joint2 Joint2::product(const Dist& px, const Dist& py) {
  std::vector<double> p(static_cast<std::size_t>(px.size()) * py.size());
  for (int x = 0; x < px.size(); ++x)
    for (int y = 0; y < py.size(); ++y) p[x * py.size() + y] = px[x] * py[y];
  return Joint2(px.size(), py.size(), std::move(p));
}

Joint2 Joint2::normalized(int nx, int ny, std::vector<double> weights) {
  return Joint2(nx, ny, normalize(std::move(weights), "Joint2"));
}

Dist Joint2::marginal_x() const {
  std::vector<double> m(nx_, 0.0);
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y) m[x] += at(x, y);
  return Dist(std::move(m));
}

Dist Joint2::marginal_y() const {
  std::vector<double> m(ny_, 0.0);
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y) m[y] += at(x, y);
  return Dist(std::move(m));
}

Joint3::Joint3(int nx, int ny, int nz, std::vector<double> probs)
    : nx_(nx), ny_(ny), nz_(nz), p_(std::move(probs)) {
  if (nx_ <= 0 || ny_ <= 0 || nz_ <= 0 ||
      p_.size() != static_cast<std::size_t>(nx_) * ny_ * nz_)
    throw DimensionError("Joint3: bad shape");
  check_simplex(p_, "Joint3");
}

Joint3 Joint3::normalized(int nx, int ny, int nz, std::vector<double> weights) {
  return Joint3(nx, ny, nz, normalize(std::move(weights), "Joint3"));
}

Dist Joint3::marginal_x() const {
  std::vector<double> m(nx_, 0.0);
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y)
      for (int z = 0; z < nz_; ++z) m[x] += at(x, y, z);
  return Dist(std::move(m));
}

Dist Joint3::marginal_y() const {
  std::vector<double> m(ny_, 0.0);
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y)
      for (int z = 0; z < nz_; ++z) m[y] += at(x, y, z);
  return Dist(std::move(m));
}

Dist Joint3::marginal_z() const {
  std::vector<double> m(nz_, 0.0);
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y)
      for (int z = 0; z < nz_; ++z) m[z] += at(x, y, z);
  return Dist(std::move(m));
}

Joint2 Joint3::marginal_xy() const {
  std::vector<double> m(static_cast<std::size_t>(nx_) * ny_, 0.0);
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y)
      for (int z = 0; z < nz_; ++z) m[x * ny_ + y] += at(x, y, z);
  return Joint2(nx_, ny_, std::move(m));
}

Joint2 Joint3::marginal_xz() const {
  std::vector<double> m(static_cast<std::size_t>(nx_) * nz_, 0.0);
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y)
      for (int z = 0; z < nz_; ++z) m[x * nz_ + z] += at(x, y, z);
  return Joint2(nx_, nz_, std::move(m));
}

Joint2 Joint3::marginal_yz() const {
  std::vector<double> m(static_cast<std::size_t>(ny_) * nz_, 0.0);
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y)
      for (int z = 0; z < nz_; ++z) m[y * nz_ + z] += at(x, y, z);
  return Joint2(ny_, nz_, std::move(m));
}

SingleUserChannel::SingleUserChannel(int nx, int nz, std::vector<double> rows)
    : nx_(nx), nz_(nz), w_(std::move(rows)) {
  if (nx_ <= 0 || nz_ <= 0 || w_.size() != static_cast<std::size_t>(nx_) * nz_)
    throw DimensionError("SingleUserChannel: bad shape");
  for (int x = 0; x < nx_; ++x) {
    double s = 0.0;
    for (int z = 0; z < nz_; ++z) {
      if (at(x, z) < 0.0) throw std::invalid_argument("SingleUserChannel: negative entry");
      s += at(x, z);
    }
    if (std::fabs(s - 1.0) > kProbTol)
      throw std::invalid_argument("SingleUserChannel: row not stochastic");
  }
}

MacChannel::MacChannel(int nx, int ny, int nz, std::vector<double> rows,
                       std::string construction)
    : nx_(nx), ny_(ny), nz_(nz), w_(std::move(rows)),
      construction_(std::move(construction)) {
  if (nx_ <= 0 || ny_ <= 0 || nz_ <= 0 ||
      w_.size() != static_cast<std::size_t>(nx_) * ny_ * nz_)
    throw DimensionError("MacChannel: bad shape");
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y) {
      double s = 0.0;
      for (int z = 0; z < nz_; ++z) {
        if (at(x, y, z) < 0.0) throw std::invalid_argument("MacChannel: negative entry");
        s += at(x, y, z);
      }
      if (std::fabs(s - 1.0) > kProbTol)
        throw std::invalid_argument("MacChannel: row not stochastic");
    }
}

double entropy(const Dist& p) { return entropy_flat(p.probs()); }
double entropy(const Joint2& p) { return entropy_flat(p.probs()); }
double entropy(const Joint3& p) { return entropy_flat(p.probs()); }

double divergence(const Dist& p, const Dist& q) { return divergence_flat(p.probs(), q.probs()); }
double divergence(const Joint2& p, const Joint2& q) {
  if (p.nx() != q.nx() || p.ny() != q.ny()) throw DimensionError("divergence: shape mismatch");
  return divergence_flat(p.probs(), q.probs());
}
double divergence(const Joint3& p, const Joint3& q) {
  if (p.nx() != q.nx() || p.ny() != q.ny() || p.nz() != q.nz())
    throw DimensionError("divergence: shape mismatch");
  return divergence_flat(p.probs(), q.probs());
}

double variational_distance(const Dist& p, const Dist& q) { return vdist_flat(p.probs(), q.probs()); }
double variational_distance(const Joint2& p, const Joint2& q) {
  if (p.nx() != q.nx() || p.ny() != q.ny())
    throw DimensionError("variational_distance: shape mismatch");
  return vdist_flat(p.probs(), q.probs());
}
double variational_distance(const Joint3& p, const Joint3& q) {
  if (p.nx() != q.nx() || p.ny() != q.ny() || p.nz() != q.nz())
    throw DimensionError("variational_distance: shape mismatch");
  return vdist_flat(p.probs(), q.probs());
}

double multi_information(const std::vector<double>& probs,
                         const std::vector<int>& dims,
                         const std::vector<std::vector<int>>& groups) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (probs.size() != total) throw DimensionError("multi_information: bad shape");
  if (groups.size() < 2)
    throw std::invalid_argument("multi_information: need at least 2 groups");

  std::vector<bool> used(dims.size(), false);
  for (const auto& g : groups)
    for (int a : g) {
      if (a < 0 || a >= static_cast<int>(dims.size()) || used[a])
        throw std::invalid_argument("multi_information: groups must partition the axes");
      used[a] = true;
    }
  for (bool u : used)
    if (!u) throw std::invalid_argument("multi_information: groups must partition the axes");

  // strides of the row-major tensor
  std::vector<std::size_t> stride(dims.size(), 1);
  for (int a = static_cast<int>(dims.size()) - 2; a >= 0; --a)
    stride[a] = stride[a + 1] * dims[a + 1];

  double h_sum = 0.0;
  for (const auto& g : groups) {
    std::size_t gsize = 1;
    for (int a : g) gsize *= dims[a];
    std::vector<double> marg(gsize, 0.0);
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
      std::size_t key = 0;
      for (int a : g) key = key * dims[a] + (idx / stride[a]) % dims[a];
      marg[key] += probs[idx];
    }
    h_sum += entropy_flat(marg);
  }
  return h_sum - entropy_flat(probs);
}

double mutual_information_xy(const Joint3& v) {
  return entropy(v.marginal_x()) + entropy(v.marginal_y()) - entropy(v.marginal_xy());
}
double info1(const Joint3& v) {
  return entropy(v.marginal_x()) + entropy(v.marginal_yz()) - entropy(v);
}
double info2(const Joint3& v) {
  return entropy(v.marginal_y()) + entropy(v.marginal_xz()) - entropy(v);
}
double info12(const Joint3& v) {
  return entropy(v.marginal_x()) + entropy(v.marginal_y()) + entropy(v.marginal_z()) -
         entropy(v);
}
double info(const Joint3& v, int which) {
  switch (which) {
    case 1: return info1(v);
    case 2: return info2(v);
    case 12: return info12(v);
  }
  throw std::invalid_argument("info: which must be 1, 2 or 12");
}

Joint3 compose(const Joint2& v, const MacChannel& w) {
  if (v.nx() != w.nx() || v.ny() != w.ny())
    throw DimensionError("compose: alphabet mismatch");
  std::vector<double> p(static_cast<std::size_t>(v.nx()) * v.ny() * w.nz());
  for (int x = 0; x < v.nx(); ++x)
    for (int y = 0; y < v.ny(); ++y)
      for (int z = 0; z < w.nz(); ++z)
        p[(x * v.ny() + y) * w.nz() + z] = v.at(x, y) * w.at(x, y, z);
  return Joint3(v.nx(), v.ny(), w.nz(), std::move(p));
}

namespace {

// One stage of the coupling construction: shifts mass along x so the
// x-marginal becomes target, leaving the y-marginal unchanged. The shifted
// amount equals ||target - v^X|| exactly.
std::vector<double> shift_x_marginal(const std::vector<double>& v, int nx, int ny,
                                     const std::vector<double>& vx,
                                     const std::vector<double>& target) {
  double moved = 0.0;
  for (int x = 0; x < nx; ++x) moved += std::fabs(target[x] - vx[x]);
  if (moved == 0.0) return v;

  double denom = 0.0;
  for (int x = 0; x < nx; ++x)
    if (vx[x] <= target[x]) denom += target[x] - vx[x];

  std::vector<double> cy(ny, 0.0);
  for (int y = 0; y < ny; ++y) {
    double num = 0.0;
    for (int x = 0; x < nx; ++x)
      if (vx[x] > target[x]) num += v[x * ny + y] * (vx[x] - target[x]) / vx[x];
    cy[y] = num / denom;
  }

  std::vector<double> out(v.size());
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      if (vx[x] > target[x])
        out[x * ny + y] = v[x * ny + y] * target[x] / vx[x];
      else
        out[x * ny + y] = v[x * ny + y] + cy[y] * (target[x] - vx[x]);
    }
  return out;
}

}  // namespace

Joint2 couple_to_marginals(const Joint2& v, const Dist& px, const Dist& py) {
  if (v.nx() != px.size() || v.ny() != py.size())
    throw DimensionError("couple_to_marginals: alphabet mismatch");
  std::vector<double> stage1 = shift_x_marginal(
      v.probs(), v.nx(), v.ny(), v.marginal_x().probs(), px.probs());

  // second stage on the transposed array to fix the y-marginal
  std::vector<double> t(stage1.size());
  for (int x = 0; x < v.nx(); ++x)
    for (int y = 0; y < v.ny(); ++y) t[y * v.nx() + x] = stage1[x * v.ny() + y];
  std::vector<double> vy(v.ny(), 0.0);
  for (int y = 0; y < v.ny(); ++y)
    for (int x = 0; x < v.nx(); ++x) vy[y] += t[y * v.nx() + x];
  std::vector<double> t2 = shift_x_marginal(t, v.ny(), v.nx(), vy, py.probs());

  std::vector<double> out(stage1.size());
  for (int x = 0; x < v.nx(); ++x)
    for (int y = 0; y < v.ny(); ++y) out[x * v.ny() + y] = t2[y * v.nx() + x];
  // guard against sign noise from the subtraction chain
  for (double& c : out)
    if (c < 0.0 && c > -1e-15) c = 0.0;
  return Joint2(v.nx(), v.ny(), std::move(out));
}

Joint3 extend_coupling_to_channel(const Joint3& v, const Joint2& vxy_hat,
                                  const MacChannel& w) {
  if (v.nx() != vxy_hat.nx() || v.ny() != vxy_hat.ny() || v.nx() != w.nx() ||
      v.ny() != w.ny() || v.nz() != w.nz())
    throw DimensionError("extend_coupling_to_channel: alphabet mismatch");

  Joint2 vxy = v.marginal_xy();
  double dist = variational_distance(vxy_hat, vxy);
  double cells = static_cast<double>(v.nx()) * v.ny();
  if (dist > 1.0 / (cells * cells) + kProbTol)
    throw std::domain_error(
        "extend_coupling_to_channel: ||vxy_hat - v^XY|| exceeds (|X||Y|)^-2");

  double eta = std::sqrt(dist);
  std::vector<double> out(v.probs().size());
  for (int x = 0; x < v.nx(); ++x)
    for (int y = 0; y < v.ny(); ++y) {
      double mass = vxy.at(x, y);
      bool keep = mass >= eta && mass > 0.0;
      for (int z = 0; z < v.nz(); ++z) {
        double cond = keep ? v.at(x, y, z) / mass : w.at(x, y, z);
        out[(x * v.ny() + y) * v.nz() + z] = vxy_hat.at(x, y) * cond;
      }
    }
  return Joint3(v.nx(), v.ny(), v.nz(), std::move(out));
}

}  // namespace amacee
