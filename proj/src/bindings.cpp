#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqglab/checks.hpp"
#include "sqglab/datasets.hpp"
#include "sqglab/selfsim.hpp"
#include "sqglab/snapshot.hpp"

namespace py = pybind11;
using namespace sqg;

namespace {

RealField field_from_array(const Grid& g, py::array_t<double, py::array::c_style> arr) {
    auto buf = arr.request();
    if (buf.ndim != 2 || buf.shape[0] != g.n || buf.shape[1] != g.n)
        throw std::invalid_argument("array shape must be (n, n)");
    RealField f(g);
    std::memcpy(f.values().data(), buf.ptr, sizeof(double) * f.values().size());
    return f;
}

py::array_t<double> field_to_array(const RealField& f) {
    const int n = f.grid().n;
    py::array_t<double> out({n, n});
    std::memcpy(out.mutable_data(), f.values().data(), sizeof(double) * f.values().size());
    return out;
}

} // namespace

PYBIND11_MODULE(_sqglab, m) {
    m.doc() = "pseudo-spectral laboratory for critical SQG with symmetry-fixed Riesz gauge";

    py::class_<Grid>(m, "Grid")
        .def(py::init(&make_grid), py::arg("n"), py::arg("l"))
        .def_readonly("n", &Grid::n)
        .def_readonly("l", &Grid::l)
        .def_readonly("dx", &Grid::dx);

    py::class_<RealField>(m, "RealField")
        .def(py::init([](const Grid& g, py::array_t<double, py::array::c_style> arr) {
                 return field_from_array(g, arr);
             }),
             py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", &RealField::grid)
        .def_property_readonly("values", &field_to_array)
        .def("max_abs", &RealField::max_abs);

    py::class_<SymmetryGroup>(m, "SymmetryGroup")
        .def_static("rotation", &SymmetryGroup::rotation, py::arg("m"))
        .def_static("rotation_reflection", &SymmetryGroup::rotation_reflection, py::arg("m"))
        .def_static("radial", &SymmetryGroup::radial)
        .def_readonly("m", &SymmetryGroup::m);

    py::class_<HomogeneousProfile>(m, "HomogeneousProfile")
        .def(py::init<std::vector<double>, std::optional<SymmetryGroup>>(),
             py::arg("samples"), py::arg("group") = std::nullopt)
        .def_static(
            "from_function",
            [](const std::function<double(double)>& f, int count) {
                return HomogeneousProfile::from_function(f, count);
            },
            py::arg("f"), py::arg("count") = 256)
        .def_property_readonly("samples", &HomogeneousProfile::samples)
        .def("eval", &HomogeneousProfile::eval);

    // operator layer: everything works on nodal arrays for python ergonomics
    m.def("half_laplacian", [](const RealField& f, double s) {
        return to_real(fractional_laplacian(to_spectral(f), s));
    }, py::arg("field"), py::arg("s") = 1.0);
    m.def("poisson_semigroup", [](const RealField& f, double t) {
        return to_real(poisson_semigroup(to_spectral(f), t));
    });
    m.def("riesz_perp", [](const RealField& f) {
        VectorField v = riesz_perp(to_spectral(f));
        return py::make_tuple(v.v1, v.v2);
    });
    m.def("gradient", [](const RealField& f) {
        VectorField v = gradient(to_spectral(f));
        return py::make_tuple(v.v1, v.v2);
    });
    m.def("dealias", [](const RealField& f) { return to_real(dealias(to_spectral(f))); });
    m.def("spectral_roundtrip", [](const RealField& f) { return to_real(to_spectral(f)); });
    m.def("ju_gap", &ju_gap, py::arg("theta"), py::arg("q"));

    m.def("act_rotation", [](const RealField& f, double angle) {
        return act(GroupElement{angle, false}, f);
    });
    m.def("act_reflection", [](const RealField& f) { return act(GroupElement{0.0, true}, f); });
    m.def("project_symmetric", &project_symmetric);
    m.def("asymmetry", &asymmetry, py::arg("field"), py::arg("group"),
          py::arg("window_radius") = 0.0);

    m.def("xp_norm", [](const RealField& f, double p, double r0) {
        NormConfig cfg;
        cfg.p = p;
        cfg.r0 = r0;
        return xp_norm(f, cfg);
    }, py::arg("field"), py::arg("p") = 2.0, py::arg("r0") = 1.0);
    m.def("xp_norm_profile", [](const HomogeneousProfile& f, double p) {
        NormConfig cfg;
        cfg.p = p;
        return xp_norm(f, cfg);
    }, py::arg("profile"), py::arg("p") = 2.0);

    py::class_<StepDiagnostics>(m, "StepDiagnostics")
        .def_readonly("step", &StepDiagnostics::step)
        .def_readonly("t", &StepDiagnostics::t)
        .def_readonly("linf", &StepDiagnostics::linf)
        .def_readonly("energy", &StepDiagnostics::energy)
        .def_readonly("dissipation", &StepDiagnostics::dissipation)
        .def_readonly("energy_residual", &StepDiagnostics::energy_residual)
        .def_readonly("max_principle_margin", &StepDiagnostics::max_principle_margin)
        .def_readonly("asymmetry", &StepDiagnostics::asymmetry);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("snapshots", &Trajectory::snapshots)
        .def_readonly("diagnostics", &Trajectory::diagnostics);

    m.def("simulate",
          [](const RealField& theta0, double dt, double t_end,
             std::optional<SymmetryGroup> group, int snapshot_every) {
              SolverConfig cfg;
              cfg.dt = dt;
              cfg.t_end = t_end;
              cfg.group = group;
              cfg.snapshot_every = snapshot_every;
              return run(theta0, cfg);
          },
          py::arg("theta0"), py::arg("dt") = 2e-3, py::arg("t_end") = 0.5,
          py::arg("group") = std::nullopt, py::arg("snapshot_every") = 50);

    py::class_<Profile>(m, "Profile")
        .def_readonly("theta", &Profile::theta)
        .def_readonly("amplitude", &Profile::amplitude)
        .def_readonly("residual", &Profile::residual)
        .def_readonly("asymmetry", &Profile::asymmetry_value)
        .def_readonly("converged", &Profile::converged);

    m.def("solve_profile",
          [](const HomogeneousProfile& f, double A, const SymmetryGroup& G, int n, double l,
             double s_max) {
              SimilarityConfig cfg;
              cfg.grid = make_grid(n, l);
              cfg.s_max = s_max;
              return solve_profile(f, A, G, cfg);
          },
          py::arg("boundary"), py::arg("amplitude"), py::arg("group"), py::arg("n") = 128,
          py::arg("l") = 5.0, py::arg("s_max") = 40.0);

    m.def("ring_bump", &ring_bump);
    m.def("compact_bump", &compact_bump);
    m.def("random_symmetric_field", &random_symmetric_field);
    m.def("rasterize", &rasterize, py::arg("profile"), py::arg("grid"),
          py::arg("mollify_radius") = -1.0);

    m.def("write_snapshot", &write_snapshot);
    m.def("read_snapshot", [](const std::string& path) {
        Snapshot s = read_snapshot(path);
        return py::make_tuple(s.field, s.t);
    });

    m.def("run_checks", [](const std::string& suite) {
        py::list out;
        for (const auto& r : run_check_suite(suite)) {
            py::dict d;
            d["suite"] = r.suite;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["value"] = r.value;
            d["threshold"] = r.threshold;
            out.append(d);
        }
        return out;
    }, py::arg("suite") = "all");
}
