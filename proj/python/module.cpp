#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "conelip/certify.hpp"
#include "conelip/cli.hpp"
#include "conelip/convex_checks.hpp"
#include "conelip/json_io.hpp"
#include "conelip/lattice.hpp"
#include "conelip/metrics.hpp"
#include "conelip/normality.hpp"
#include "conelip/pathology.hpp"

namespace py = pybind11;
using namespace conelip;

namespace {

// structured results cross the boundary as JSON text; the Python side loads it
std::string dumped(const io::Json& j) { return io::dump(j, -1); }

ConvexMap map_of(const std::string& text) { return io::map_from(io::parse_text(text), ""); }
SeminormSpec seminorm_of(const std::string& text) { return io::seminorm_from(io::parse_text(text), ""); }

}  // namespace

PYBIND11_MODULE(_conelip, m) {
  m.doc() = "Cones, convex maps and Lipschitz certificates.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<PolyCone>(m, "PolyCone")
      .def(py::init<Eigen::Index, std::vector<Vector>>(), py::arg("dim"), py::arg("generators"))
      .def_static("orthant", &PolyCone::orthant)
      .def_static("sector", &PolyCone::sector)
      .def_property_readonly("dim", &PolyCone::dim)
      .def_property_readonly("generators", &PolyCone::generators);

  m.def("cone_member", [](const PolyCone& c, const Vector& v) { return cone_member(c, v); });
  m.def("order_le", [](const PolyCone& c, const Vector& x, const Vector& y) { return order_le(c, x, y); });
  m.def("is_pointed", [](const PolyCone& c) { return is_pointed(c); });
  m.def("full_hull_member", [](const PolyCone& c, const std::vector<Vector>& A, const Vector& z) {
    return full_hull_member(c, A, z);
  });

  m.def("lattice_ops", [](const Vector& x, const Vector& y) {
    auto r = lattice_ops(x, y);
    return py::dict(py::arg("sup") = r.sup, py::arg("inf") = r.inf, py::arg("pos_part") = r.pos_part,
                    py::arg("neg_part") = r.neg_part, py::arg("abs") = r.abs);
  });

  m.def("seminorm_eval", [](const std::string& spec, const Vector& x) { return seminorm_of(spec)(x); });

  m.def(
      "normality_gamma",
      [](const PolyCone& c, const std::string& q, bool exact, std::size_t samples, std::uint64_t seed) {
        auto g = normality_gamma(c, seminorm_of(q), exact ? GammaMode::exact_2d : GammaMode::sampled, samples, seed);
        return std::make_pair(g.gamma_lower, g.gamma_exact);
      },
      py::arg("cone"), py::arg("q"), py::arg("exact") = true, py::arg("samples") = 256, py::arg("seed") = 1);

  m.def("evaluate", [](const std::string& map, const Vector& x) { return map_of(map)(x); });
  m.def(
      "convexity_check",
      [](const std::string& map, std::size_t samples, std::uint64_t seed) {
        return convexity_check(map_of(map), samples, seed).holds();
      },
      py::arg("map"), py::arg("samples") = 2000, py::arg("seed") = 1);
  m.def(
      "epigraph_midpoint_check",
      [](const std::string& map, std::size_t samples, std::uint64_t seed) {
        return epigraph_midpoint_check(map_of(map), samples, seed).holds();
      },
      py::arg("map"), py::arg("samples") = 2000, py::arg("seed") = 1);

  m.def("certify_1d", [](const std::function<double(double)>& phi, double a, double alpha, double beta, double b) {
    return dumped(io::to_json(certify_1d(Section::scalar(phi), a, alpha, beta, b)));
  });
  m.def(
      "certify_ball",
      [](const std::string& map, const std::string& q, const std::string& p, const Vector& x0, double R, double r,
         std::optional<double> beta) {
        return dumped(io::to_json(certify_ball(map_of(map), seminorm_of(q), seminorm_of(p), x0, R, r, beta)));
      },
      py::arg("map"), py::arg("q"), py::arg("p"), py::arg("x0"), py::arg("R"), py::arg("r"),
      py::arg("beta") = py::none());

  m.def("metric_eval", [](const std::string& metric, const Vector& x, const Vector& y) {
    return metric_eval(io::metric_from(io::parse_text(metric), ""), x, y);
  });
  m.def("nonlipschitz_witness", [](double M) {
    auto w = nonlipschitz_witness(M);
    return py::make_tuple(w.x, w.y, w.ratio);
  });

  m.def("vesely_step1", [](int N, int n) {
    auto r = vesely_step1(build_block_pairs(N), n);
    return py::dict(py::arg("norm_z_n") = r.norm_z_n, py::arg("lower_bound") = r.lower_bound,
                    py::arg("tail_norm") = r.tail_norm, py::arg("order_ok") = r.order_ok);
  });
  m.def(
      "polynomial_example",
      [](int n, std::size_t samples) {
        auto r = polynomial_example(n, samples);
        return py::dict(py::arg("norm_Pn") = r.norm_Pn, py::arg("f_Pn") = r.f_Pn,
                        py::arg("sampled_norm") = r.sampled_norm, py::arg("ratio") = r.ratio);
      },
      py::arg("n"), py::arg("samples") = 100000);

  m.def(
      "run",
      [](const std::string& command, const std::string& input, std::uint64_t seed, std::size_t pairs) {
        cli::RunConfig cfg;
        if (command == "certify") cfg.command = cli::Command::certify;
        else if (command == "verify") cfg.command = cli::Command::verify;
        else if (command == "lattice-check") cfg.command = cli::Command::lattice_check;
        else throw InputError("run: unknown command '" + command + "'");
        cfg.input = input;
        cfg.seed = seed;
        cfg.pairs = pairs;
        std::ostringstream out, err;
        int code = cli::run(cfg, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("command"), py::arg("input") = "", py::arg("seed") = 1, py::arg("pairs") = 10000);
}
