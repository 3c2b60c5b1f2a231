#include "basinreach/cli.hpp"
#include "basinreach/sampling.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace basinreach::cli {

namespace fs = std::filesystem;

namespace {

std::vector<double> parse_list(const std::string& field, const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            out.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            throw ConfigError(field, "cannot parse number '" + item + "'");
        }
        if (used != item.size()) throw ConfigError(field, "cannot parse number '" + item + "'");
    }
    if (out.empty()) throw ConfigError(field, "empty list");
    return out;
}

template <class T>
T get_field(const io::json& j, const std::string& field)
{
    try {
        return j.get<T>();
    } catch (const io::json::exception& e) {
        throw ConfigError(field, std::string("wrong type: ") + e.what());
    }
}

void reject_unknown(const io::json& obj, const std::string& where, std::initializer_list<const char*> keys)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) throw ConfigError(where + it.key(), "unknown key");
    }
}

}  // namespace

std::pair<std::string, std::vector<double>> parse_function_spec(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) return {text, {}};
    return {text.substr(0, colon), parse_list("function", text.substr(colon + 1))};
}

void apply_json(RunConfig& cfg, const io::json& doc)
{
    if (!doc.is_object()) throw ConfigError("config", "top level must be a JSON object");
    reject_unknown(doc, "",
                   {"function", "schedule", "procedure", "mode", "direction", "target", "x0", "seed_direction",
                    "alpha", "epsilon", "seed_radius", "delta", "tolerances", "budgets", "flow", "probe", "trials",
                    "seed", "output_dir"});

    if (doc.contains("function")) {
        const auto& f = doc["function"];
        if (f.is_string()) {
            auto [name, params] = parse_function_spec(f.get<std::string>());
            cfg.function = name;
            cfg.params = params;
        } else {
            reject_unknown(f, "function.", {"name", "params"});
            cfg.function = get_field<std::string>(f.at("name"), "function.name");
            cfg.params = f.contains("params") ? get_field<std::vector<double>>(f["params"], "function.params")
                                              : std::vector<double>{};
        }
    }
    if (doc.contains("schedule")) {
        const auto& s = doc["schedule"];
        if (s.is_string()) {
            cfg.schedule = s.get<std::string>();
        } else {
            reject_unknown(s, "schedule.", {"kind", "c", "p"});
            const auto kind = get_field<std::string>(s.at("kind"), "schedule.kind");
            const double c = get_field<double>(s.at("c"), "schedule.c");
            if (kind == "constant") {
                cfg.schedule = "constant:" + io::format_double(c);
            } else if (kind == "power") {
                cfg.schedule = "power:" + io::format_double(c) + ":" +
                               io::format_double(get_field<double>(s.at("p"), "schedule.p"));
            } else {
                throw ConfigError("schedule.kind", "unknown schedule '" + kind + "'");
            }
        }
    }
    if (doc.contains("procedure")) cfg.procedure = get_field<std::string>(doc["procedure"], "procedure");
    if (doc.contains("mode")) cfg.mode = get_field<std::string>(doc["mode"], "mode");
    if (doc.contains("direction")) cfg.direction = get_field<std::string>(doc["direction"], "direction");
    if (doc.contains("target")) {
        const auto& t = doc["target"];
        if (t.is_null()) {
            cfg.target.reset();
            cfg.target_index.reset();
        } else if (t.is_object()) {
            reject_unknown(t, "target.", {"index"});
            cfg.target_index = get_field<int>(t.at("index"), "target.index");
            cfg.target.reset();
        } else {
            cfg.target = to_std(io::vec_from_json(t));
            cfg.target_index.reset();
        }
    }
    auto opt_vec = [&](const char* key, std::optional<std::vector<double>>& dst) {
        if (!doc.contains(key)) return;
        if (doc[key].is_null())
            dst.reset();
        else
            dst = get_field<std::vector<double>>(doc[key].is_number() ? io::json::array({doc[key]}) : doc[key], key);
    };
    opt_vec("x0", cfg.x0);
    opt_vec("seed_direction", cfg.seed_direction);
    if (doc.contains("alpha")) cfg.alpha = get_field<double>(doc["alpha"], "alpha");
    if (doc.contains("epsilon")) cfg.epsilon = get_field<double>(doc["epsilon"], "epsilon");
    if (doc.contains("seed_radius")) cfg.seed_radius = get_field<double>(doc["seed_radius"], "seed_radius");
    if (doc.contains("delta")) {
        if (doc["delta"].is_null())
            cfg.delta.reset();
        else
            cfg.delta = get_field<double>(doc["delta"], "delta");
    }
    if (doc.contains("tolerances")) {
        const auto& t = doc["tolerances"];
        reject_unknown(t, "tolerances.", {"gtol", "tol", "event_refine_tol"});
        if (t.contains("gtol")) cfg.gtol = get_field<double>(t["gtol"], "tolerances.gtol");
        if (t.contains("tol")) cfg.tol = get_field<double>(t["tol"], "tolerances.tol");
        if (t.contains("event_refine_tol"))
            cfg.event_refine_tol = get_field<double>(t["event_refine_tol"], "tolerances.event_refine_tol");
    }
    if (doc.contains("budgets")) {
        const auto& b = doc["budgets"];
        reject_unknown(b, "budgets.", {"max_iter", "t_max", "kbar_max"});
        if (b.contains("max_iter")) cfg.max_iter = get_field<std::int64_t>(b["max_iter"], "budgets.max_iter");
        if (b.contains("t_max")) cfg.t_max = get_field<double>(b["t_max"], "budgets.t_max");
        if (b.contains("kbar_max")) cfg.kbar_max = get_field<std::int64_t>(b["kbar_max"], "budgets.kbar_max");
    }
    if (doc.contains("flow")) {
        reject_unknown(doc["flow"], "flow.", {"h"});
        if (doc["flow"].contains("h")) cfg.h = get_field<double>(doc["flow"]["h"], "flow.h");
    }
    if (doc.contains("probe")) {
        const auto& p = doc["probe"];
        reject_unknown(p, "probe.", {"samples", "bisection_steps"});
        if (p.contains("samples")) cfg.probe_samples = get_field<int>(p["samples"], "probe.samples");
        if (p.contains("bisection_steps"))
            cfg.bisection_steps = get_field<int>(p["bisection_steps"], "probe.bisection_steps");
    }
    if (doc.contains("trials")) cfg.trials = get_field<int>(doc["trials"], "trials");
    if (doc.contains("seed")) cfg.seed = get_field<std::uint64_t>(doc["seed"], "seed");
    if (doc.contains("output_dir")) cfg.output_dir = get_field<std::string>(doc["output_dir"], "output_dir");
}

io::json to_json(const RunConfig& cfg)
{
    io::json j;
    j["function"] = {{"name", cfg.function}, {"params", cfg.params}};
    j["schedule"] = cfg.schedule;
    j["procedure"] = cfg.procedure;
    j["mode"] = cfg.mode;
    j["direction"] = cfg.direction;
    if (cfg.target)
        j["target"] = *cfg.target;
    else if (cfg.target_index)
        j["target"] = {{"index", *cfg.target_index}};
    else
        j["target"] = nullptr;
    j["x0"] = cfg.x0 ? io::json(*cfg.x0) : io::json(nullptr);
    j["seed_direction"] = cfg.seed_direction ? io::json(*cfg.seed_direction) : io::json(nullptr);
    j["alpha"] = cfg.alpha;
    j["epsilon"] = cfg.epsilon;
    j["seed_radius"] = cfg.seed_radius;
    j["delta"] = cfg.delta ? io::json(*cfg.delta) : io::json(nullptr);
    j["tolerances"] = {{"gtol", cfg.gtol}, {"tol", cfg.tol}, {"event_refine_tol", cfg.event_refine_tol}};
    j["budgets"] = {{"max_iter", cfg.max_iter}, {"t_max", cfg.t_max}, {"kbar_max", cfg.kbar_max}};
    j["flow"] = {{"h", cfg.h}};
    j["probe"] = {{"samples", cfg.probe_samples}, {"bisection_steps", cfg.bisection_steps}};
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    return j;
}

namespace {

// ---------------------------------------------------------------------------
// Resolution of config fields into library objects

ObjectiveFunction resolve_function(const RunConfig& cfg)
{
    try {
        return make_builtin(cfg.function, cfg.params);
    } catch (const PreconditionError& e) {
        throw ConfigError("function", e.what());
    }
}

StepSchedule resolve_schedule(const RunConfig& cfg)
{
    try {
        return StepSchedule::parse(cfg.schedule);
    } catch (const PreconditionError& e) {
        throw ConfigError("schedule", e.what());
    }
}

Vec resolve_target(const RunConfig& cfg, const ObjectiveFunction& f, std::optional<CriticalKind> wanted)
{
    if (cfg.target) {
        if (static_cast<int>(cfg.target->size()) != f.dim()) throw ConfigError("target", "dimension mismatch");
        return make_vec(*cfg.target);
    }
    const auto& cps = f.critical_points();
    if (cfg.target_index) {
        if (*cfg.target_index < 0 || *cfg.target_index >= static_cast<int>(cps.size()))
            throw ConfigError("target.index", "out of range for " + f.name() + "'s catalog");
        return cps[static_cast<std::size_t>(*cfg.target_index)].point;
    }
    for (const auto& cp : cps) {
        if (!wanted || cp.kind == *wanted) return cp.point;
    }
    throw ConfigError("target", "no default target in the catalog; pass one explicitly");
}

Vec resolve_x0(const RunConfig& cfg, const ObjectiveFunction& f)
{
    if (!cfg.x0) throw ConfigError("x0", "required by procedure '" + cfg.procedure + "'");
    if (static_cast<int>(cfg.x0->size()) != f.dim()) throw ConfigError("x0", "dimension mismatch");
    return make_vec(*cfg.x0);
}

ProbeMode resolve_mode(const RunConfig& cfg)
{
    if (cfg.mode == "discrete") return ProbeMode::discrete;
    if (cfg.mode == "continuous") return ProbeMode::continuous;
    throw ConfigError("mode", "expected 'discrete' or 'continuous', got '" + cfg.mode + "'");
}

FlowSettings resolve_flow(const RunConfig& cfg, const ObjectiveFunction& f)
{
    FlowSettings fs;
    fs.h = cfg.h;
    fs.t_max = cfg.t_max;
    fs.gtol = cfg.gtol;
    fs.event_refine_tol = cfg.event_refine_tol;
    try {
        fs.validate(f.lipschitz());
    } catch (const PreconditionError& e) {
        throw ConfigError("flow.h", e.what());
    }
    return fs;
}

ReachBudgets resolve_budgets(const RunConfig& cfg)
{
    ReachBudgets b;
    b.gtol = cfg.gtol;
    b.max_iter = cfg.max_iter;
    b.kbar_max = cfg.kbar_max;
    b.delta = cfg.delta;
    b.seed = cfg.seed;
    b.probe.n_samples = cfg.probe_samples;
    b.probe.bisection_steps = cfg.bisection_steps;
    b.probe.seed = cfg.seed;
    return b;
}

void require_admissible(const StepSchedule& s, const ObjectiveFunction& f, Regime regime)
{
    if (!admissible(s, f, regime)) {
        std::ostringstream msg;
        msg << s.to_string() << " is inadmissible for " << f.name() << " (L = " << io::format_double(f.lipschitz())
            << "): need sup alpha < " << (regime == Regime::prox ? "1/L" : "2/L");
        throw ConfigError("schedule", msg.str());
    }
}

// ---------------------------------------------------------------------------
// Output

class OutputDir {
public:
    explicit OutputDir(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

    template <class Writer>
    void write(const std::string& name, Writer&& writer) const
    {
        std::ofstream os(root_ / name, std::ios::binary);
        if (!os) throw Error("cannot open " + (root_ / name).string() + " for writing");
        writer(os);
    }

    void write_json(const std::string& name, const io::json& j) const
    {
        write(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    }

private:
    fs::path root_;
};

struct Outcome {
    io::json summary;
    bool ok;
};

Outcome do_gd(const RunConfig& cfg, const OutputDir& out)
{
    const auto f = resolve_function(cfg);
    const auto s = resolve_schedule(cfg);
    require_admissible(s, f, Regime::stability);
    const Vec x0 = resolve_x0(cfg, f);
    const Trajectory traj = run_gd(f, x0, s, GdOptions{cfg.gtol, cfg.max_iter, false, true});
    out.write("trajectory.csv", [&](std::ostream& os) { io::write_trajectory_csv(os, traj, f.dim()); });

    io::json j = {
        {"procedure", "gd"},
        {"function", f.name()},
        {"schedule", s.to_string()},
        {"status", to_string(traj.status)},
        {"iterations", traj.back().k},
        {"f_final", traj.back().f},
        {"gnorm_final", traj.back().gnorm},
        {"path_length", path_length(traj)},
        {"certificate_violations", descent_violations(f, traj, s)},
        {"trajectory_csv_path", "trajectory.csv"},
    };
    if (traj.limit) {
        j["limit"] = io::to_json(*traj.limit);
        j["classification"] = to_string(classify_limit(f, *traj.limit, std::max(1e-6, 10.0 * cfg.gtol)).kind);
    }
    return {j, traj.status == TerminalStatus::converged};
}

Outcome do_flow(const RunConfig& cfg, const OutputDir& out)
{
    const auto f = resolve_function(cfg);
    const FlowSettings fs = resolve_flow(cfg, f);
    const Vec x0 = resolve_x0(cfg, f);
    Direction dir;
    if (cfg.direction == "forward")
        dir = Direction::forward;
    else if (cfg.direction == "reverse")
        dir = Direction::reverse;
    else
        throw ConfigError("direction", "expected 'forward' or 'reverse'");

    const Trajectory traj = integrate(f, x0, dir, fs);
    out.write("trajectory.csv", [&](std::ostream& os) { io::write_trajectory_csv(os, traj, f.dim()); });
    io::json j = {
        {"procedure", "flow"},
        {"function", f.name()},
        {"direction", to_string(dir)},
        {"status", to_string(traj.status)},
        {"t_final", traj.back().t},
        {"x_final", io::to_json(traj.back().x)},
        {"f_final", traj.back().f},
        {"path_length", path_length(traj)},
        {"trajectory_csv_path", "trajectory.csv"},
    };
    if (cfg.delta) {
        const Vec center = cfg.target || cfg.target_index ? resolve_target(cfg, f, std::nullopt) : x0;
        try {
            const SphereExit ex = sphere_exit(f, x0, dir, center, *cfg.delta, fs);
            j["sphere_exit"] = {{"t_exit", ex.t_exit}, {"b", io::to_json(ex.b)}, {"center", io::to_json(center)}};
        } catch (const NoCrossingError& e) {
            j["sphere_exit"] = {{"error", "no_crossing"}, {"message", e.what()}};
        }
    }
    const bool ok = dir == Direction::reverse || traj.status == TerminalStatus::converged;
    return {j, ok};
}

Outcome do_reach(const RunConfig& cfg, const OutputDir& out, bool general)
{
    const auto f = resolve_function(cfg);
    const ProbeMode mode = resolve_mode(cfg);
    const ReachBudgets budgets = resolve_budgets(cfg);
    ReachReport rep;
    std::optional<StepSchedule> s;
    if (mode == ProbeMode::discrete) {
        s = resolve_schedule(cfg);
        require_admissible(*s, f, Regime::prox);
    }

    if (general) {
        const Vec target = resolve_target(cfg, f, CriticalKind::saddle);
        GeneralParams gp;
        gp.seed_radius = cfg.seed_radius;
        gp.tol = cfg.tol;
        gp.delta = cfg.delta;
        gp.schedule = s;
        if (mode == ProbeMode::continuous) gp.flow = resolve_flow(cfg, f);
        if (cfg.seed_direction) gp.seed_direction = make_vec(*cfg.seed_direction);
        gp.budgets = budgets;
        rep = reach_general(f, target, cfg.epsilon, mode, gp);
    } else {
        const Vec target = resolve_target(cfg, f, CriticalKind::local_min);
        if (mode == ProbeMode::discrete)
            rep = reach_discrete(f, target, cfg.epsilon, *s, cfg.seed_radius, cfg.tol, budgets);
        else
            rep = reach_continuous(f, target, cfg.epsilon, resolve_flow(cfg, f), cfg.seed_radius, cfg.tol, budgets);
    }

    std::string fwd_path, rev_path;
    if (!rep.forward.states.empty()) {
        fwd_path = "forward.csv";
        out.write(fwd_path, [&](std::ostream& os) { io::write_trajectory_csv(os, rep.forward, f.dim()); });
    }
    if (rep.reverse_orbit) {
        rev_path = "reverse.csv";
        out.write(rev_path, [&](std::ostream& os) {
            io::write_reverse_csv(os, *rep.reverse_orbit, f, rep.schedule_used ? *rep.schedule_used : *s);
        });
    } else if (rep.reverse_flow) {
        rev_path = "reverse.csv";
        out.write(rev_path, [&](std::ostream& os) {
            io::write_trajectory_csv(os, *rep.reverse_flow, f.dim(), "reverse");
        });
    }
    io::json j = io::to_json(rep, fwd_path, rev_path);
    j["procedure"] = general ? "reach-general" : "reach";
    j["function"] = f.name();
    return {j, rep.status == ReachStatus::success};
}

Outcome do_probe(const RunConfig& cfg)
{
    const auto f = resolve_function(cfg);
    const ProbeMode mode = resolve_mode(cfg);
    const Vec target = resolve_target(cfg, f, CriticalKind::local_min);
    ProbeOptions po;
    po.n_samples = cfg.probe_samples;
    po.bisection_steps = cfg.bisection_steps;
    po.seed = cfg.seed;
    po.max_iter = cfg.max_iter;
    StepSchedule s = StepSchedule::constant(1.0);
    if (mode == ProbeMode::discrete) {
        s = resolve_schedule(cfg);
        require_admissible(s, f, Regime::stability);
    } else {
        po.flow = resolve_flow(cfg, f);
    }
    const StabilityEstimate est = stability_probe(f, target, cfg.epsilon, s, mode, po);
    io::json j = io::to_json(est);
    j["procedure"] = "probe";
    j["function"] = f.name();
    j["target"] = io::to_json(target);
    j["mode"] = to_string(mode);
    return {j, est.delta_hat > 0.0};
}

Outcome do_eos(const RunConfig& cfg, const OutputDir& out)
{
    const auto f = resolve_function(cfg);
    if (f.name() != "quad") throw ConfigError("function", "eos needs the quad builtin");
    const Vec x0 = cfg.x0 ? resolve_x0(cfg, f) : Vec::Ones(f.dim());
    const EosResult eos = edge_of_stability(f, cfg.alpha, x0);
    out.write("trajectory.csv", [&](std::ostream& os) { io::write_trajectory_csv(os, eos.run, f.dim()); });
    io::json j = io::to_json(eos);
    j["procedure"] = "eos";
    j["alpha"] = cfg.alpha;
    j["eigenvalues"] = f.params();
    j["threshold_2_over_L"] = 2.0 / f.lipschitz();
    j["trajectory_csv_path"] = "trajectory.csv";
    return {j, true};
}

Outcome do_prox_check(const RunConfig& cfg)
{
    const auto f = resolve_function(cfg);
    DirectionSampler rng(cfg.seed);
    const Box& box = f.box();
    double worst = 0.0;
    int dec_fail = 0, step_fail = 0, box_fail = 0;
    for (int i = 0; i < cfg.trials; ++i) {
        Vec x(f.dim());
        for (int d = 0; d < f.dim(); ++d) x[d] = box.lower[d] + rng.uniform() * (box.upper[d] - box.lower[d]);
        const double lambda = (0.9 / f.lipschitz()) * (1.0 - rng.uniform());
        try {
            const Vec xp = prox(f, x, lambda);
            worst = std::max(worst, (xp - (x - lambda * f.gradient(xp))).norm() / (1.0 + x.norm()));
            const auto cert = prox_certificates(f, x, lambda, xp);
            dec_fail += !cert.dec_ok;
            step_fail += !cert.step_ok;
        } catch (const LeftBoxError&) {
            ++box_fail;
        }
    }
    const bool ok = worst <= 1e-10 && dec_fail == 0 && step_fail == 0;
    io::json j = {
        {"procedure", "prox-check"},
        {"function", f.name()},
        {"trials", cfg.trials},
        {"max_relative_residual", worst},
        {"dec_failures", dec_fail},
        {"step_failures", step_fail},
        {"left_box", box_fail},
        {"status", ok ? "pass" : "fail"},
    };
    return {j, ok};
}

void print_catalog(std::ostream& out)
{
    for (const auto& name : builtin_names()) {
        std::vector<double> params;
        if (name == "quad") params = {1.0};
        const auto f = make_builtin(name, params);
        out << name << "  (dim " << f.dim() << ", L = " << io::format_double(f.lipschitz()) << " on box "
            << format_point(f.box().lower) << " .. " << format_point(f.box().upper) << ")\n";
        for (const auto& cp : f.critical_points()) {
            out << "    " << format_point(cp.point) << "  " << to_string(cp.kind) << "  f = " << io::format_double(cp.f_value)
                << '\n';
        }
    }
    out << "quad takes its eigenvalues as parameters, e.g. quad:1,4; the table shows quad:1.\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"basinreach: reachability experiments for gradient descent and gradient flow"};
    app.require_subcommand(1);

    auto* bench = app.add_subcommand("bench", "Benchmark catalog");
    bench->add_subcommand("list", "Print the builtins with their critical points");
    bench->require_subcommand(1);

    std::map<std::string, std::string> flags;
    std::string config_path;
    bool general = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        for (const char* name : {"function", "schedule", "procedure", "mode", "direction", "target", "x0",
                                 "seed-direction", "alpha", "epsilon", "seed-radius", "delta", "gtol", "tol",
                                 "event-refine-tol", "max-iter", "t-max", "kbar-max", "flow-h", "samples",
                                 "bisection-steps", "trials", "seed", "out"}) {
            sub->add_option(std::string("--") + name, flags[name]);
        }
    };
    auto* run_cmd = app.add_subcommand("run", "Run the configured procedure (default gd)");
    auto* reach_cmd = app.add_subcommand("reach", "Construct an initial point reaching a target");
    reach_cmd->add_flag("--general", general, "Target a saddle via the capped/level-crossing construction");
    auto* probe_cmd = app.add_subcommand("probe", "Estimate the stability radius of a local minimum");
    auto* eos_cmd = app.add_subcommand("eos", "Edge-of-stability verdict on a quadratic");
    auto* check_cmd = app.add_subcommand("check", "Proximal identity and certificate sweep");
    for (auto* sub : {run_cmd, reach_cmd, probe_cmd, eos_cmd, check_cmd}) add_common(sub);

    std::vector<const char*> argv{"basinreach"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (bench->parsed()) {
        print_catalog(out);
        return 0;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw ConfigError("config", "cannot open '" + config_path + "'");
            io::json doc;
            try {
                doc = io::json::parse(is);
            } catch (const io::json::parse_error& e) {
                throw ConfigError("config", std::string("malformed JSON: ") + e.what());
            }
            apply_json(cfg, doc);
        }
        if (reach_cmd->parsed()) cfg.procedure = general ? "reach-general" : "reach";
        if (probe_cmd->parsed()) cfg.procedure = "probe";
        if (eos_cmd->parsed()) cfg.procedure = "eos";
        if (check_cmd->parsed()) cfg.procedure = "prox-check";

        auto has = [&](const char* k) { return !flags[k].empty(); };
        auto num = [&](const char* k) { return parse_list(std::string("--") + k, flags[k]).front(); };
        if (has("function")) std::tie(cfg.function, cfg.params) = parse_function_spec(flags["function"]);
        if (has("schedule")) cfg.schedule = flags["schedule"];
        if (has("procedure") && run_cmd->parsed()) cfg.procedure = flags["procedure"];
        if (has("mode")) cfg.mode = flags["mode"];
        if (has("direction")) cfg.direction = flags["direction"];
        if (has("target")) {
            const std::string& t = flags["target"];
            if (t[0] == '#') {
                cfg.target_index = static_cast<int>(parse_list("--target", t.substr(1)).front());
                cfg.target.reset();
            } else {
                cfg.target = parse_list("--target", t);
                cfg.target_index.reset();
            }
        }
        if (has("x0")) cfg.x0 = parse_list("--x0", flags["x0"]);
        if (has("seed-direction")) cfg.seed_direction = parse_list("--seed-direction", flags["seed-direction"]);
        if (has("alpha")) cfg.alpha = num("alpha");
        if (has("epsilon")) cfg.epsilon = num("epsilon");
        if (has("seed-radius")) cfg.seed_radius = num("seed-radius");
        if (has("delta")) cfg.delta = num("delta");
        if (has("gtol")) cfg.gtol = num("gtol");
        if (has("tol")) cfg.tol = num("tol");
        if (has("event-refine-tol")) cfg.event_refine_tol = num("event-refine-tol");
        if (has("max-iter")) cfg.max_iter = static_cast<std::int64_t>(num("max-iter"));
        if (has("t-max")) cfg.t_max = num("t-max");
        if (has("kbar-max")) cfg.kbar_max = static_cast<std::int64_t>(num("kbar-max"));
        if (has("flow-h")) cfg.h = num("flow-h");
        if (has("samples")) cfg.probe_samples = static_cast<int>(num("samples"));
        if (has("bisection-steps")) cfg.bisection_steps = static_cast<int>(num("bisection-steps"));
        if (has("trials")) cfg.trials = static_cast<int>(num("trials"));
        if (has("seed")) cfg.seed = static_cast<std::uint64_t>(num("seed"));
        if (has("out")) cfg.output_dir = flags["out"];
        if (const char* env = std::getenv("BASINREACH_OUT"); env && *env) cfg.output_dir = env;

        const OutputDir dir(cfg.output_dir);
        dir.write_json("config.json", to_json(cfg));

        Outcome res;
        if (cfg.procedure == "gd")
            res = do_gd(cfg, dir);
        else if (cfg.procedure == "flow")
            res = do_flow(cfg, dir);
        else if (cfg.procedure == "reach")
            res = do_reach(cfg, dir, false);
        else if (cfg.procedure == "reach-general")
            res = do_reach(cfg, dir, true);
        else if (cfg.procedure == "probe")
            res = do_probe(cfg);
        else if (cfg.procedure == "eos")
            res = do_eos(cfg, dir);
        else if (cfg.procedure == "prox-check")
            res = do_prox_check(cfg);
        else
            throw ConfigError("procedure", "unknown procedure '" + cfg.procedure + "'");

        dir.write_json("summary.json", res.summary);
        out << res.summary.dump(2) << '\n';
        return res.ok ? 0 : 1;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace basinreach::cli
