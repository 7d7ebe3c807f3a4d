#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "s3flow/topology.hpp"

namespace py = pybind11;
using namespace s3flow;

namespace {

using A3 = std::array<double, 3>;
using A4 = std::array<double, 4>;

A4 arr(const Vec4& v) { return v.c; }
A3 arr(const Vec3& v) { return v.c; }
SpherePoint point(const A4& a) { return SpherePoint(a[0], a[1], a[2], a[3]); }
Vec3 value(const A3& a) { return Vec3{a}; }

py::object loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

cli::RunConfig config(std::array<int, 3> grid, std::size_t samples, std::uint64_t seed) {
  cli::RunConfig c;
  c.grid = {grid[0], grid[1], grid[2]};
  c.samples = samples;
  c.seed = seed;
  c.validate();
  return c;
}

py::dict curve_dict(const Curve& c) {
  std::vector<A4> pts;
  pts.reserve(c.points.size());
  for (const auto& p : c.points) pts.push_back(p.coords().c);
  py::dict d;
  d["t"] = c.times;
  d["points"] = pts;
  d["closed"] = c.closed;
  d["period"] = c.period ? py::cast(*c.period) : py::none();
  d["arclength"] = c.arclength;
  return d;
}

}  // namespace

PYBIND11_MODULE(s3flow, m) {
  m.doc() = "Steady Euler flow of Hopf invariant 2 on the round 3-sphere";

  py::register_exception<cli::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<DynamicsError>(m, "DynamicsError", PyExc_RuntimeError);
  py::register_exception<TopologyError>(m, "TopologyError", PyExc_RuntimeError);

  m.def("frame", [](const A4& p) {
    const Frame f = frame_vectors(point(p));
    return std::array<A4, 3>{arr(f.xi), arr(f.x1), arr(f.x2)};
  }, "Orthonormal frame (xi, X1, X2) at p.", py::arg("p"));

  m.def("paper_field", [](const A4& p) { return arr(paper_field(point(p)).v()); }, py::arg("p"));
  m.def("bernoulli", [](const A4& p) { return paper_bernoulli(point(p)); }, py::arg("p"));
  m.def("pressure", [](const A4& p) { return paper_pressure(point(p)); }, py::arg("p"));

  m.def("hopf", [](const A4& p) { return arr(hopf_components(point(p))); },
        "Hopf map in unit components.", py::arg("p"));
  m.def("phi", [](const A4& p) { return arr(phi_map()(point(p))); },
        "hopf o psi_2 in unit components.", py::arg("p"));
  m.def("psi", [](const A4& p, int k) { return arr(psi_k_power(point(p), k).coords()); },
        "Quaternion power q^k.", py::arg("p"), py::arg("k"));

  m.def("field", [](const std::string& id, const A4& p) {
    return arr(cli::parse_target(id).solution.velocity.ambient(point(p)));
  }, "Velocity of hopf, paper or phi_k:<k> at p.", py::arg("field_id"), py::arg("p"));

  m.def("singular_values", [](const std::string& id, const A4& p) {
    const SingularValues s = singular_values(cli::parse_target(id).map, point(p));
    return std::array<double, 2>{s.lambda1, s.lambda2};
  }, py::arg("map_id"), py::arg("p"));

  m.def("hopf_invariant", [](const std::string& id, std::array<int, 3> grid) {
    return hopf_invariant(cli::parse_target(id).map, build_grid_s3(grid[0], grid[1], grid[2])).value;
  }, py::arg("map_id"), py::arg("grid") = std::array<int, 3>{32, 64, 64});

  m.def("streamline", [](const std::string& id, const A4& start, double step, double t_max) {
    StreamlineOptions o;
    o.step = step;
    o.t_max = t_max;
    Curve c;
    {
      py::gil_scoped_release release;
      c = integrate_streamline(cli::parse_target(id).solution.velocity, point(start), o);
    }
    return curve_dict(c);
  }, py::arg("field_id"), py::arg("start"), py::arg("step") = 1e-3, py::arg("t_max") = 100.0);

  m.def("fibre", [](const std::string& id, const A3& q) {
    const Fibre f = trace_fibre_components(cli::parse_target(id).map, value(q));
    py::list out;
    for (const auto& c : f.components) out.append(curve_dict(c));
    return out;
  }, "Connected components of the preimage of q.", py::arg("map_id"), py::arg("q"));

  m.def("linking_number", [](const std::string& id, const A3& q1, const A3& q2) {
    const SurfaceMap map = cli::parse_target(id).map;
    const LinkingResult r = linking_number(trace_fibre_components(map, value(q1)).components,
                                           trace_fibre_components(map, value(q2)).components);
    return py::make_tuple(r.value, r.raw);
  }, "Linking number of two full fibres and the unrounded Gauss sum.", py::arg("map_id"),
     py::arg("q1"), py::arg("q2"));

  m.def("verify", [](const std::string& id, std::size_t samples, std::uint64_t seed) {
    return loads(cli::cmd_verify(cli::parse_target(id), config({32, 64, 64}, samples, seed)).to_json().dump());
  }, "The verify report as a dict.", py::arg("field_id"), py::arg("samples") = 1000,
     py::arg("seed") = 0);

  m.def("measure", [](const std::string& id, std::array<int, 3> grid) {
    return loads(cli::cmd_measure(cli::parse_target(id), config(grid, 1000, 0)).to_json().dump());
  }, "The measure report as a dict.", py::arg("field_id"),
     py::arg("grid") = std::array<int, 3>{32, 64, 64});

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the command-line tool in-process; returns (exit code, stdout, stderr).", py::arg("args"));
}
