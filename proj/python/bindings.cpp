#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amacee/channels.hpp"
#include "amacee/patterns.hpp"
#include "amacee/region.hpp"
#include "amacee/sim.hpp"
#include "amacee/subtypes.hpp"

namespace py = pybind11;
using namespace amacee;

namespace {

Dist make_dist(const std::vector<double>& p) { return Dist(p); }

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kZero: return "zero";
    case Regime::kLinear: return "linear";
    case Regime::kCurved: return "curved";
  }
  return "?";
}

}  // namespace

PYBIND11_MODULE(_amacee, m) {
  m.doc() = "Achievable error exponents for asynchronous multiple-access channels";

  py::class_<Dist>(m, "Dist")
      .def(py::init(&make_dist), py::arg("probs"))
      .def_static("normalized", &Dist::normalized)
      .def("__len__", &Dist::size)
      .def("__getitem__", [](const Dist& d, int i) { return d[i]; })
      .def_property_readonly("probs", &Dist::probs);

  py::class_<Joint2>(m, "Joint2")
      .def(py::init<int, int, std::vector<double>>())
      .def_static("product", &Joint2::product)
      .def("at", &Joint2::at)
      .def("marginal_x", &Joint2::marginal_x)
      .def("marginal_y", &Joint2::marginal_y);

  py::class_<Joint3>(m, "Joint3")
      .def(py::init<int, int, int, std::vector<double>>())
      .def("at", &Joint3::at)
      .def("marginal_x", &Joint3::marginal_x)
      .def("marginal_y", &Joint3::marginal_y)
      .def("marginal_z", &Joint3::marginal_z)
      .def_property_readonly("probs", &Joint3::probs);

  py::class_<SingleUserChannel>(m, "SingleUserChannel")
      .def(py::init<int, int, std::vector<double>>())
      .def("at", &SingleUserChannel::at);

  py::class_<MacChannel>(m, "MacChannel")
      .def(py::init<int, int, int, std::vector<double>, std::string>(),
           py::arg("nx"), py::arg("ny"), py::arg("nz"), py::arg("rows"),
           py::arg("construction") = "")
      .def("at", &MacChannel::at)
      .def_property_readonly("construction", &MacChannel::construction);

  m.def("entropy", py::overload_cast<const Dist&>(&entropy));
  m.def("entropy3", py::overload_cast<const Joint3&>(&entropy));
  m.def("divergence", py::overload_cast<const Dist&, const Dist&>(&divergence));
  m.def("divergence3", py::overload_cast<const Joint3&, const Joint3&>(&divergence));
  m.def("variational_distance",
        py::overload_cast<const Dist&, const Dist&>(&variational_distance));
  m.def("multi_information", &multi_information, py::arg("probs"), py::arg("dims"),
        py::arg("groups"));
  m.def("info1", &info1);
  m.def("info2", &info2);
  m.def("info12", &info12);
  m.def("compose", &compose);
  m.def("couple_to_marginals", &couple_to_marginals);
  m.def("extend_coupling_to_channel", &extend_coupling_to_channel);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("objective_tol", &SolverConfig::objective_tol)
      .def_readwrite("marginal_tol", &SolverConfig::marginal_tol)
      .def_readwrite("max_iterations", &SolverConfig::max_iterations)
      .def_readwrite("r_tol", &SolverConfig::r_tol)
      .def_readwrite("max_bisections", &SolverConfig::max_bisections)
      .def_readwrite("oracle_step", &SolverConfig::oracle_step)
      .def_readwrite("threads", &SolverConfig::threads);

  m.def("z_channel", &z_channel);
  m.def("bsc", &bsc);
  m.def("xor_mac", &xor_mac);
  m.def(
      "capacity",
      [](const SingleUserChannel& w, double tol) {
        CapacityResult c = capacity(w, tol);
        return py::make_tuple(c.capacity, c.input);
      },
      py::arg("w"), py::arg("tol") = 1e-9);
  m.def("xor_preimage_input", &xor_preimage_input);
  m.def("sphere_packing_exponent", &sphere_packing_exponent, py::arg("w"),
        py::arg("r"), py::arg("p_step") = 1e-3, py::arg("cfg") = SolverConfig{});

  m.def(
      "minimize_div_plus_info",
      [](const Joint3& p, const Dist& px, const Dist& py_, int which, double lam,
         const SolverConfig& cfg) {
        auto sol = minimize_div_plus_info(p, {px, py_}, which, lam, cfg);
        py::dict out;
        out["v_star"] = sol.v_star;
        out["divergence"] = sol.divergence_term;
        out["info"] = sol.info_term;
        out["iterations"] = sol.iterations;
        out["residual"] = sol.residual;
        return out;
      },
      py::arg("p_xyz"), py::arg("px"), py::arg("py"), py::arg("which"),
      py::arg("lam"), py::arg("cfg") = SolverConfig{});
  m.def(
      "brute_force_oracle",
      [](const Joint3& p, const Dist& px, const Dist& py_, int which, double lam,
         double step) { return brute_force_oracle(p, {px, py_}, which, lam, step); },
      py::arg("p_xyz"), py::arg("px"), py::arg("py"), py::arg("which"),
      py::arg("lam"), py::arg("step") = 0.002);

  m.def("beta_coefficients", [](int L, int j, double alpha) {
    BetaCoefficients b = beta_coefficients(L, j, alpha);
    return py::make_tuple(b.b1, b.b2, b.b12);
  });
  m.def(
      "pattern_exponent",
      [](double alpha, const Dist& px, const Dist& py_, const MacChannel& w,
         double r1, double r2, int L, int j, const SolverConfig& cfg) {
        ExponentQuery q{alpha, px, py_, w, r1, r2, L, j};
        PatternExponent e = pattern_exponent(q, cfg);
        py::dict out;
        out["value"] = e.value;
        out["regime"] = regime_name(e.regime);
        out["r"] = e.r;
        out["r_hat"] = e.r_hat;
        out["r_zero"] = e.r_zero;
        return out;
      },
      py::arg("alpha"), py::arg("px"), py::arg("py"), py::arg("w"), py::arg("r1"),
      py::arg("r2"), py::arg("L"), py::arg("j"), py::arg("cfg") = SolverConfig{});
  m.def(
      "envelope_exponent",
      [](double alpha, const Dist& px, const Dist& py_, const MacChannel& w,
         double r1, double r2, int M, const SolverConfig& cfg) {
        ExponentQuery q{alpha, px, py_, w, r1, r2, 1, 1};
        EnvelopeResult e = envelope_exponent(q, M, cfg);
        py::dict out;
        out["value"] = e.value;
        out["dominant_L"] = e.dominant_L;
        out["dominant_j"] = e.dominant_j;
        out["regime"] = regime_name(e.regime);
        out["ties"] = e.ties;
        return out;
      },
      py::arg("alpha"), py::arg("px"), py::arg("py"), py::arg("w"), py::arg("r1"),
      py::arg("r2"), py::arg("M"), py::arg("cfg") = SolverConfig{});
  m.def(
      "general_pattern_exponent",
      [](const std::set<int>& s1, const std::set<int>& s2, const std::set<int>& s12,
         double alpha, const Dist& px, const Dist& py_, const MacChannel& w,
         double r1, double r2, int K, const SolverConfig& cfg) {
        return general_pattern_exponent(s1, s2, s12, alpha, px, py_, w, r1, r2, K, cfg);
      },
      py::arg("s1"), py::arg("s2"), py::arg("s12"), py::arg("alpha"), py::arg("px"),
      py::arg("py"), py::arg("w"), py::arg("r1"), py::arg("r2"), py::arg("K"),
      py::arg("cfg") = SolverConfig{});

  py::class_<Pentagon>(m, "Pentagon")
      .def_readonly("i1", &Pentagon::i1)
      .def_readonly("i2", &Pentagon::i2)
      .def_readonly("i12", &Pentagon::i12);
  m.def("pentagon", &pentagon);
  m.def("pentagon_contains", &contains);
  m.def("compound_region", &compound_region);

  m.def("type_class_size", &type_class_size);
  m.def("delta_n", &delta_n);
  m.def("jensen_shannon_split", &jensen_shannon_split);
  m.def("count_balanced", [](int n, int ones, double delta) {
    BalancedCount c = count_balanced(n, ones, delta);
    return py::make_tuple(c.balanced, c.total);
  });

  py::class_<AmacCode>(m, "AmacCode")
      .def_readonly("n", &AmacCode::n)
      .def_readonly("K", &AmacCode::K)
      .def_property_readonly("m1", &AmacCode::m1)
      .def_property_readonly("m2", &AmacCode::m2)
      .def_property_readonly("rate1", &AmacCode::rate1)
      .def_property_readonly("rate2", &AmacCode::rate2);
  m.def("build_code", &build_code, py::arg("n"), py::arg("K"), py::arg("m1"),
        py::arg("m2"), py::arg("type_x"), py::arg("type_y"), py::arg("seed"));
  m.def(
      "run_trials",
      [](const AmacCode& code, const MacChannel& w, int D, std::uint64_t trials,
         std::uint64_t seed) {
        PatternTally t = run_trials(code, w, D, trials, seed);
        py::dict out;
        out["trials"] = t.trials;
        out["errors"] = t.errors();
        out["error_rate"] = t.error_rate();
        py::list pats;
        for (const auto& [key, count] : t.patterns) {
          py::dict rec;
          rec["L1"] = key.first;
          rec["L2"] = key.second;
          rec["count"] = count;
          pats.append(rec);
        }
        out["patterns"] = pats;
        return out;
      },
      py::arg("code"), py::arg("w"), py::arg("D"), py::arg("trials"), py::arg("seed"));
  m.def("wilson_interval", &wilson_interval);
}
