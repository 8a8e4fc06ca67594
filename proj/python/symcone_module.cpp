#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symcone/cone.hpp"
#include "symcone/cone_functions.hpp"
#include "symcone/paley_wiener.hpp"
#include "symcone/spaces.hpp"
#include "symcone/suites.hpp"

namespace py = pybind11;
using namespace symcone;

namespace {

MultiIndex mi(const std::vector<double>& v) { return MultiIndex(v); }

quad::QuadratureSpec make_spec(std::size_t nodes, std::size_t samples,
                               const std::string& scheme, std::uint64_t seed) {
    quad::QuadratureSpec spec;
    if (nodes) spec.nodes_per_axis = nodes;
    if (samples) spec.sample_count = samples;
    if (scheme == "monte_carlo") spec.scheme = quad::Scheme::monte_carlo;
    spec.seed = seed;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_symcone, m) {
    m.doc() = "harmonic analysis on tube domains over symmetric cones";

    py::class_<Cone>(m, "Cone")
        .def_static("halfline", &Cone::halfline)
        .def_static("lorentz",
                    [](std::size_t n, std::optional<std::vector<double>> u) {
                        return u ? Cone::lorentz(n, *u) : Cone::lorentz(n);
                    },
                    py::arg("n"), py::arg("frame_u") = std::nullopt)
        .def_static("parse", &parse_cone)
        .def_property_readonly("dim", &Cone::dim)
        .def_property_readonly("rank", &Cone::rank)
        .def_property_readonly("peirce_d", &Cone::peirce_d)
        .def_property_readonly("g0", [](const Cone& c) { return c.g0().e; })
        .def_property_readonly("identity", &Cone::identity)
        .def("__repr__", &Cone::description);

    m.def("jordan_product", &jordan_product);
    m.def("trace_inner", &trace_inner);
    m.def("determinant", &determinant);
    m.def("spectral", [](const Cone& c, const Element& x) {
        auto sd = spectral(c, x);
        return py::make_tuple(sd.eigenvalues, sd.idempotents);
    });
    m.def("principal_minor", &principal_minor);
    m.def("rotated_minor", &rotated_minor);
    m.def("power_function",
          [](const Cone& c, const std::vector<double>& s, const Element& x,
             bool rotated) { return power_function(c, mi(s), x, rotated); },
          py::arg("cone"), py::arg("s"), py::arg("x"), py::arg("rotated") = false);
    m.def("inverse", &inverse);
    m.def("in_cone", &in_cone);
    m.def("in_wallach", [](const Cone& c, const std::vector<double>& s) {
        return in_wallach(c, mi(s));
    });
    m.def("star", [](const std::vector<double>& s) { return star(mi(s)).e; });

    m.def("gamma_closed", [](const Cone& c, const std::vector<double>& s) {
        return gamma_closed(c, mi(s));
    });
    m.def("beta_closed", [](const Cone& c, const std::vector<double>& p,
                            const std::vector<double>& q) {
        return beta_closed(c, mi(p), mi(q));
    });
    m.def("gamma_integral",
          [](const Cone& c, const std::vector<double>& s, std::size_t nodes) {
              auto est = gamma_integral(c, mi(s), make_spec(nodes, 0, "", 42));
              return py::make_tuple(est.real(), est.error_estimate);
          },
          py::arg("cone"), py::arg("s"), py::arg("nodes") = 48);
    m.def("laplace_power",
          [](const Cone& c, const std::vector<double>& s, const Element& y,
             std::size_t nodes) {
              auto est = laplace_power(c, mi(s), y, make_spec(nodes, 0, "", 42));
              return py::make_tuple(est.real(), est.error_estimate);
          },
          py::arg("cone"), py::arg("s"), py::arg("y"), py::arg("nodes") = 48);

    m.def("bergman_kernel",
          [](const Cone& c, double nu, const std::vector<double>& zx,
             const std::vector<double>& zy, const std::vector<double>& wx,
             const std::vector<double>& wy) {
              return bergman_kernel(c, nu, TubePoint{zx, zy}, TubePoint{wx, wy});
          });
    m.def("box_symbol", &box_symbol);

    m.def("mu_density", [](const Cone& c, const std::vector<double>& s,
                           const Element& t) {
        return mu_density(c, MeasureSpec::make(c, mi(s)), t);
    });
    m.def("pw_synthesize",
          [](const Cone& c, const std::vector<double>& s, const Element& b,
             const std::vector<double>& zx, const std::vector<double>& zy,
             std::size_t nodes) {
              ProfileFunction f = exp_profile(c, b);
              return pw_synthesize(c, mi(s), f, TubePoint{zx, zy},
                                   make_spec(nodes, 0, "", 42));
          },
          py::arg("cone"), py::arg("s"), py::arg("b"), py::arg("zx"), py::arg("zy"),
          py::arg("nodes") = 48);

    m.def("run_suite",
          [](const std::string& suite, const std::string& cone,
             const std::map<std::string, std::string>& params, std::size_t nodes,
             std::size_t samples, const std::string& scheme, double tol,
             std::uint64_t seed) {
              SuiteConfig cfg;
              cfg.suite = suite;
              cfg.cone_text = cone;
              cfg.params = params;
              cfg.nodes = nodes;
              cfg.samples = samples;
              cfg.scheme = scheme;
              cfg.tol = tol;
              cfg.seed = seed;
              return run_suite(cfg).to_json();
          },
          py::arg("suite"), py::arg("cone") = "halfline",
          py::arg("params") = std::map<std::string, std::string>{},
          py::arg("nodes") = 0, py::arg("samples") = 0, py::arg("scheme") = "",
          py::arg("tol") = 0.0, py::arg("seed") = 42);
    m.def("registered_suites", [] { return registered_suites(); });
}
