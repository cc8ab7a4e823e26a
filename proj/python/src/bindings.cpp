#include "slabqd/cli.hpp"
#include "slabqd/errors.hpp"
#include "slabqd/fourier.hpp"
#include "slabqd/iteration.hpp"
#include "slabqd/problem.hpp"
#include "slabqd/quadrature.hpp"
#include "slabqd/sweep.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace slabqd;

namespace {

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

FourierConfig fourier_config(double c, double sigma_t_h, std::size_t cells, int order,
                             const std::string& closure, const std::string& model) {
    return make_fourier_config(c, 1.0, sigma_t_h, cells, gauss_legendre(order),
                               parse_closure(closure), parse_boundary_model(model));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Slab discrete-ordinates solver with quasidiffusion acceleration";

    py::register_exception<NegativeFluxError>(m, "NegativeFluxError", PyExc_ArithmeticError);
    py::register_exception<SingularSystemError>(m, "SingularSystemError", PyExc_ArithmeticError);

    py::class_<QuadratureSet>(m, "Quadrature")
        .def_property_readonly("order", &QuadratureSet::order)
        .def_property_readonly("angles", [](const QuadratureSet& q) { return to_vector(q.angles()); })
        .def_property_readonly("weights",
                               [](const QuadratureSet& q) { return to_vector(q.weights()); });
    m.def("gauss_legendre", &gauss_legendre, py::arg("order"));

    py::class_<MaterialRegion>(m, "Region")
        .def(py::init([](double width, double sigma_t, double sigma_s, double q) {
                 return MaterialRegion{width, sigma_t, sigma_s, q};
             }),
             py::arg("width"), py::arg("sigma_t"), py::arg("sigma_s"), py::arg("q"))
        .def_readwrite("width", &MaterialRegion::width)
        .def_readwrite("sigma_t", &MaterialRegion::sigma_t)
        .def_readwrite("sigma_s", &MaterialRegion::sigma_s)
        .def_readwrite("q", &MaterialRegion::q);

    py::class_<Mesh>(m, "Mesh")
        .def_property_readonly("cells", &Mesh::cells)
        .def_property_readonly("widths", [](const Mesh& mesh) { return to_vector(mesh.widths()); })
        .def_property_readonly("edges", [](const Mesh& mesh) { return to_vector(mesh.edges()); })
        .def_property_readonly("centers",
                               [](const Mesh& mesh) {
                                   std::vector<double> x(mesh.cells());
                                   for (std::size_t j = 0; j < x.size(); ++j) {
                                       x[j] = mesh.center(j);
                                   }
                                   return x;
                               })
        .def_property_readonly("boundary", [](const Mesh& mesh) {
            return std::make_tuple(std::string(to_string(mesh.boundary().left)),
                                   std::string(to_string(mesh.boundary().right)));
        });

    m.def(
        "build_mesh",
        [](const std::vector<MaterialRegion>& regions, const std::string& left,
           const std::string& right, std::optional<double> cell_width,
           std::optional<std::vector<double>> widths) {
            const BoundarySpec b{parse_boundary_kind(left), parse_boundary_kind(right)};
            if (cell_width.has_value() == widths.has_value()) {
                throw std::invalid_argument("give exactly one of cell_width or widths");
            }
            if (cell_width) {
                return build_mesh(regions, b, *cell_width);
            }
            return build_mesh_nonuniform(regions, b, *widths);
        },
        py::arg("regions"), py::arg("left") = "reflective", py::arg("right") = "vacuum",
        py::kw_only(), py::arg("cell_width") = py::none(), py::arg("widths") = py::none());

    py::class_<Solution>(m, "Solution")
        .def_readonly("phi", &Solution::phi)
        .def_readonly("iterations", &Solution::iterations_used)
        .def_property_readonly("status",
                               [](const Solution& s) { return std::string(to_string(s.status)); })
        .def_property_readonly("diff_norms",
                               [](const Solution& s) {
                                   std::vector<double> out;
                                   for (const auto& r : s.history) {
                                       out.push_back(r.diff_norm);
                                   }
                                   return out;
                               })
        .def_property_readonly("rho_estimates", [](const Solution& s) {
            std::vector<std::optional<double>> out;
            for (const auto& r : s.history) {
                out.push_back(r.rho_estimate);
            }
            return out;
        });

    m.def(
        "solve",
        [](const Mesh& mesh, const std::string& scheme, int order, const std::string& closure,
           double tolerance, int max_iterations, double lp_alpha,
           std::vector<double> initial_flux) {
            IterationOptions opts;
            opts.tolerance = tolerance;
            opts.max_iterations = max_iterations;
            opts.lp_boundary_alpha = lp_alpha;
            const SchemeKind s = parse_scheme(scheme);
            const Closure cl = parse_closure(closure);
            const QuadratureSet q = gauss_legendre(order);
            py::gil_scoped_release release;
            return solve(s, mesh, q, cl, opts, initial_flux);
        },
        py::arg("mesh"), py::arg("scheme") = "si", py::kw_only(), py::arg("order") = 10,
        py::arg("closure") = "dd", py::arg("tolerance") = 1e-10,
        py::arg("max_iterations") = 10000, py::arg("lp_alpha") = 0.5,
        py::arg("initial_flux") = std::vector<double>{});

    m.def(
        "measure_rho",
        [](const std::string& scheme, double c, double sigma_t_h, std::size_t cells,
           const std::string& closure, int order, double tolerance, int max_iterations) {
            IterationOptions opts;
            opts.tolerance = tolerance;
            opts.max_iterations = max_iterations;
            const auto r = measure_rho(parse_scheme(scheme), c, sigma_t_h, cells,
                                       parse_closure(closure), gauss_legendre(order), opts);
            return std::make_tuple(r.rho, std::string(to_string(r.status)), r.iterations);
        },
        py::arg("scheme"), py::arg("c"), py::arg("sigma_t_h"), py::kw_only(),
        py::arg("cells") = 100, py::arg("closure") = "dd", py::arg("order") = 10,
        py::arg("tolerance") = 1e-10, py::arg("max_iterations") = 10000,
        "Measured spectral radius as (rho or None, status, iterations).");

    m.def(
        "fourier_symbols",
        [](double omega, double c, double sigma_t_h, std::size_t cells, int order,
           const std::string& closure) {
            const auto cfg = fourier_config(c, sigma_t_h, cells, order, closure, "periodic");
            const SymbolResult r = evaluate_symbols(omega, cfg);
            py::dict out;
            out["si"] = r.si;
            out["cqd"] = r.cqd;
            out["lpcqd"] = r.lpcqd;
            out["pole"] = r.pole;
            return out;
        },
        py::arg("omega"), py::arg("c"), py::arg("sigma_t_h"), py::kw_only(),
        py::arg("cells") = 100, py::arg("order") = 10, py::arg("closure") = "dd");

    m.def(
        "spectral_radius",
        [](const std::string& scheme, double c, double sigma_t_h, std::size_t cells, int order,
           const std::string& closure, const std::string& boundary_model, std::size_t dense) {
            const auto cfg = fourier_config(c, sigma_t_h, cells, order, closure, boundary_model);
            const SchemeKind s = parse_scheme(scheme);
            const SpectralRadius r = dense > 0
                                         ? spectral_radius(cfg, s, dense_frequency_grid(cfg, dense))
                                         : spectral_radius(cfg, s);
            return std::make_tuple(r.rho, r.omega);
        },
        py::arg("scheme"), py::arg("c"), py::arg("sigma_t_h"), py::kw_only(),
        py::arg("cells") = 100, py::arg("order") = 10, py::arg("closure") = "dd",
        py::arg("boundary_model") = "reflective", py::arg("dense") = 0,
        "Analytic spectral radius and its maximizing frequency as (rho, omega).");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"slabqd"};
            for (const auto& a : args) {
                argv.push_back(a.c_str());
            }
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return std::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process; returns (code, stdout, stderr).");
}
