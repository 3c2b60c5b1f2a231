#include "basinreach/io.hpp"

#include <cstdio>

namespace basinreach::io {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_header(std::ostream& os, int dim, bool with_direction)
{
    os << "k,t";
    for (int i = 1; i <= dim; ++i) os << ",x_" << i;
    os << ",f,gnorm";
    if (with_direction) os << ",direction";
    os << '\n';
}

void write_row(std::ostream& os, std::int64_t k, double t, const Vec& x, double f, double gnorm)
{
    os << k << ',' << format_double(t);
    for (Eigen::Index i = 0; i < x.size(); ++i) os << ',' << format_double(x[i]);
    os << ',' << format_double(f) << ',' << format_double(gnorm);
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int dim, const std::string& direction)
{
    write_header(os, dim, !direction.empty());
    for (const auto& st : traj.states) {
        write_row(os, st.k, st.t, st.x, st.f, st.gnorm);
        if (!direction.empty()) os << ',' << direction;
        os << '\n';
    }
}

void write_reverse_csv(std::ostream& os, const ReverseOrbit& orbit, const ObjectiveFunction& f, const StepSchedule& s)
{
    write_header(os, f.dim(), true);
    double t = s.partial_sum(orbit.first_index);
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        const std::int64_t k = orbit.first_index + static_cast<std::int64_t>(i);
        const Vec& x = orbit.points[i];
        write_row(os, k, t, x, f.value(x), f.gradient(x).norm());
        os << ",reverse\n";
        t += s.alpha(k);
    }
}

json to_json(const Vec& v) { return json(to_std(v)); }

Vec vec_from_json(const json& j)
{
    if (j.is_number()) return make_vec({j.get<double>()});
    return make_vec(j.get<std::vector<double>>());
}

json catalog_json(const ObjectiveFunction& f)
{
    json cps = json::array();
    for (const auto& cp : f.critical_points())
        cps.push_back({{"point", to_json(cp.point)}, {"kind", to_string(cp.kind)}, {"f", cp.f_value}});
    return {
        {"name", f.name()},
        {"params", f.params()},
        {"dim", f.dim()},
        {"lipschitz", f.lipschitz()},
        {"box", {{"lower", to_json(f.box().lower)}, {"upper", to_json(f.box().upper)}}},
        {"critical_points", cps},
    };
}

json to_json(const StabilityEstimate& est)
{
    json failures = json::array();
    for (const auto& x : est.failures) failures.push_back(to_json(x));
    return {
        {"epsilon", est.epsilon},
        {"delta_hat", est.delta_hat},
        {"samples", est.samples},
        {"radii", est.radii},
        {"failures", failures},
    };
}

json to_json(const EosResult& eos)
{
    return {
        {"verdict", to_string(eos.verdict)},
        {"spectral_radius", eos.spectral_radius},
        {"effective_radius", eos.effective_radius},
        {"empirical", to_string(eos.empirical)},
        {"agrees", eos.agrees},
        {"iterations", eos.run.back().k},
        {"final_norm", eos.run.back().x.norm()},
        {"run_status", to_string(eos.run.status)},
    };
}

json to_json(const ReachReport& rep, const std::string& forward_csv_path, const std::string& reverse_csv_path)
{
    json j = {
        {"target", to_json(rep.target)},
        {"x0", to_json(rep.x0)},
        {"delta_used", rep.delta_used},
        {"seed_radius", rep.seed_radius},
        {"final_distance", rep.final_distance},
        {"status", to_string(rep.status)},
        {"forward_csv_path", forward_csv_path},
        {"reverse_csv_path", reverse_csv_path},
        {"mode", rep.mode},
        {"message", rep.message},
        {"escape_radius", rep.escape_radius},
        {"kbar", rep.kbar},
        {"t_exit", rep.t_exit},
        {"alpha_shrinks", rep.alpha_shrinks},
        {"replay_deviation", rep.replay_deviation},
    };
    if (rep.ascent_seed.size()) j["ascent_seed"] = to_json(rep.ascent_seed);
    if (rep.limit) j["limit"] = to_json(*rep.limit);
    if (rep.crossing) j["crossing"] = to_json(*rep.crossing);
    if (rep.schedule_used) j["schedule_used"] = rep.schedule_used->to_string();
    if (!rep.forward.states.empty()) j["forward_status"] = to_string(rep.forward.status);
    if (rep.probe) j["probe"] = to_json(*rep.probe);
    return j;
}

}  // namespace basinreach::io
