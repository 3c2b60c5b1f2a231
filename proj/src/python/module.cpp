#include "basinreach/cli.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace basinreach;

namespace {

// Reports cross the boundary as JSON text and are decoded on the Python side,
// so both sides see the same schema as the CLI summaries.
py::object json_to_py(const io::json& j)
{
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

py::dict trajectory_dict(const Trajectory& t)
{
    const Eigen::Index n = t.states.empty() ? 0 : t.states.front().x.size();
    Mat xs(static_cast<Eigen::Index>(t.states.size()), n);
    std::vector<std::int64_t> k;
    std::vector<double> time, fv, g;
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        const auto& s = t.states[i];
        xs.row(static_cast<Eigen::Index>(i)) = s.x.transpose();
        k.push_back(s.k);
        time.push_back(s.t);
        fv.push_back(s.f);
        g.push_back(s.gnorm);
    }
    py::dict d;
    d["k"] = k;
    d["t"] = time;
    d["x"] = xs;
    d["f"] = fv;
    d["gnorm"] = g;
    d["status"] = to_string(t.status);
    d["limit"] = t.limit ? py::cast(*t.limit) : py::none();
    return d;
}

py::object report_to_py(const ReachReport& rep)
{
    py::dict d = json_to_py(io::to_json(rep, "", "")).cast<py::dict>();
    d.attr("pop")("forward_csv_path");
    d.attr("pop")("reverse_csv_path");
    d["forward"] = trajectory_dict(rep.forward);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Reachability experiments for gradient descent and gradient flow";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    py::class_<ObjectiveFunction>(m, "ObjectiveFunction")
        .def_property_readonly("name", &ObjectiveFunction::name)
        .def_property_readonly("params", &ObjectiveFunction::params)
        .def_property_readonly("dim", &ObjectiveFunction::dim)
        .def_property_readonly("lipschitz", &ObjectiveFunction::lipschitz)
        .def_property_readonly("box", [](const ObjectiveFunction& f) { return py::make_tuple(f.box().lower, f.box().upper); })
        .def("value", &ObjectiveFunction::value)
        .def("gradient", &ObjectiveFunction::gradient)
        .def("hessian", &ObjectiveFunction::hessian)
        .def("catalog", [](const ObjectiveFunction& f) { return json_to_py(io::catalog_json(f)); })
        .def("__repr__", [](const ObjectiveFunction& f) { return "<ObjectiveFunction " + f.name() + ">"; });

    m.def("make_builtin", &make_builtin, py::arg("name"), py::arg("params") = std::vector<double>{});
    m.def("builtin_names", &builtin_names);
    m.def("min_norm_element", &min_norm_element, py::arg("generators"));

    py::class_<StepSchedule>(m, "StepSchedule")
        .def_static("constant", &StepSchedule::constant, py::arg("c"))
        .def_static("power", &StepSchedule::power, py::arg("c"), py::arg("p"))
        .def_static("parse", &StepSchedule::parse, py::arg("text"))
        .def("alpha", &StepSchedule::alpha, py::arg("k"))
        .def("partial_sum", &StepSchedule::partial_sum, py::arg("K"))
        .def("scaled", &StepSchedule::scaled, py::arg("factor"))
        .def("__str__", &StepSchedule::to_string)
        .def("__repr__", [](const StepSchedule& s) { return "<StepSchedule " + s.to_string() + ">"; });

    m.def("admissible", [](const StepSchedule& s, const ObjectiveFunction& f, const std::string& regime) {
        if (regime != "stability" && regime != "prox") throw PreconditionError("regime must be 'stability' or 'prox'");
        return admissible(s, f, regime == "prox" ? Regime::prox : Regime::stability);
    }, py::arg("schedule"), py::arg("f"), py::arg("regime") = "stability");

    m.def("prox", &prox, py::arg("f"), py::arg("x"), py::arg("lam"));
    m.def("ascent_prox", &ascent_prox, py::arg("f"), py::arg("xnext"), py::arg("a"));

    m.def("run_gd", [](const ObjectiveFunction& f, const Vec& x0, const StepSchedule& s, double gtol,
                       std::int64_t max_iter) {
        return trajectory_dict(run_gd(f, x0, s, GdOptions{gtol, max_iter, false, true}));
    }, py::arg("f"), py::arg("x0"), py::arg("schedule"), py::arg("gtol") = 1e-10, py::arg("max_iter") = 1'000'000);

    m.def("reverse_orbit", [](const ObjectiveFunction& f, const Vec& anchor, const StepSchedule& s,
                              std::int64_t kbar) {
        const ReverseOrbit o = reverse_orbit(f, anchor, s, kbar);
        py::dict d;
        d["points"] = o.points;
        d["first_index"] = o.first_index;
        d["complete"] = o.complete();
        d["forward_residuals"] = o.forward_residuals;
        return d;
    }, py::arg("f"), py::arg("anchor"), py::arg("schedule"), py::arg("kbar"));

    m.def("integrate", [](const ObjectiveFunction& f, const Vec& x0, const std::string& direction, double h,
                          double t_max, double gtol) {
        FlowSettings fs;
        fs.h = h;
        fs.t_max = t_max;
        fs.gtol = gtol;
        fs.validate(f.lipschitz());
        if (direction != "forward" && direction != "reverse")
            throw PreconditionError("direction must be 'forward' or 'reverse'");
        const Trajectory t = integrate(f, x0, direction == "forward" ? Direction::forward : Direction::reverse, fs);
        py::dict d = trajectory_dict(t);
        d["path_length"] = path_length(t);
        return d;
    }, py::arg("f"), py::arg("x0"), py::arg("direction") = "forward", py::arg("h") = 1e-3,
       py::arg("t_max") = 100.0, py::arg("gtol") = 1e-10);

    m.def("stability_probe", [](const ObjectiveFunction& f, const Vec& target, double epsilon,
                                const StepSchedule& s, int samples, std::uint64_t seed) {
        ProbeOptions po;
        po.n_samples = samples;
        po.seed = seed;
        return json_to_py(io::to_json(stability_probe(f, target, epsilon, s, ProbeMode::discrete, po)));
    }, py::arg("f"), py::arg("target"), py::arg("epsilon"), py::arg("schedule"), py::arg("samples") = 32,
       py::arg("seed") = 42);

    m.def("reach_discrete", [](const ObjectiveFunction& f, const Vec& target, double epsilon, const StepSchedule& s,
                               double seed_radius, double tol, std::optional<double> delta) {
        ReachBudgets b;
        b.delta = delta;
        return report_to_py(reach_discrete(f, target, epsilon, s, seed_radius, tol, b));
    }, py::arg("f"), py::arg("target"), py::arg("epsilon"), py::arg("schedule"), py::arg("seed_radius") = 1e-3,
       py::arg("tol") = 1e-4, py::arg("delta") = py::none());

    m.def("reach_continuous", [](const ObjectiveFunction& f, const Vec& target, double epsilon, double h,
                                 double seed_radius, double tol, std::optional<double> delta) {
        FlowSettings fs;
        fs.h = h;
        ReachBudgets b;
        b.delta = delta;
        return report_to_py(reach_continuous(f, target, epsilon, fs, seed_radius, tol, b));
    }, py::arg("f"), py::arg("target"), py::arg("epsilon"), py::arg("h") = 1e-3, py::arg("seed_radius") = 1e-3,
       py::arg("tol") = 1e-3, py::arg("delta") = py::none());

    m.def("reach_general", [](const ObjectiveFunction& f, const Vec& target, double epsilon, const std::string& mode,
                              std::optional<StepSchedule> s, double seed_radius, double tol) {
        if (mode != "discrete" && mode != "continuous") throw PreconditionError("mode must be 'discrete' or 'continuous'");
        GeneralParams gp;
        gp.schedule = s;
        gp.seed_radius = seed_radius;
        gp.tol = tol;
        return report_to_py(
            reach_general(f, target, epsilon, mode == "discrete" ? ProbeMode::discrete : ProbeMode::continuous, gp));
    }, py::arg("f"), py::arg("target"), py::arg("epsilon"), py::arg("mode") = "continuous",
       py::arg("schedule") = py::none(), py::arg("seed_radius") = 1e-3, py::arg("tol") = 1e-2);

    m.def("edge_of_stability", [](const ObjectiveFunction& f, double alpha, const Vec& x0) {
        return json_to_py(io::to_json(edge_of_stability(f, alpha, x0)));
    }, py::arg("f"), py::arg("alpha"), py::arg("x0"));

    m.def("cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
