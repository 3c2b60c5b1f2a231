#include "doctest.h"

#include "basinreach/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace basinreach;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / "basinreach_cli_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

io::json read_json(const fs::path& p) { return io::json::parse(slurp(p)); }

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream os(p);
    os << text;
}

}  // namespace

TEST_CASE("bench list prints every builtin with its critical points")
{
    const auto r = run_cli({"bench", "list"});
    CHECK(r.code == 0);
    for (const char* name : {"quad", "double_well", "himmelblau"}) CHECK(r.out.find(name) != std::string::npos);
    CHECK(r.out.find("local_max") != std::string::npos);
    CHECK(r.out.find("saddle") != std::string::npos);
}

TEST_CASE("run emits a trajectory and a summary")
{
    const auto dir = scratch("run");
    const auto r = run_cli({"run", "--x0", "0.3", "--schedule", "constant:0.05", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto summary = read_json(dir / "summary.json");
    CHECK(summary["status"] == "converged");
    CHECK(summary["certificate_violations"] == 0);
    CHECK(std::abs(summary["limit"][0].get<double>() - 1.0) <= 1e-6);
    const std::string csv = slurp(dir / "trajectory.csv");
    CHECK(csv.rfind("k,t,x_1,f,gnorm\n", 0) == 0);
    CHECK(fs::exists(dir / "config.json"));
}

TEST_CASE("reach from a config file")
{
    const auto dir = scratch("reach");
    write_file(dir / "dw.json", R"({
        "procedure": "reach",
        "function": {"name": "double_well", "params": [1.4]},
        "schedule": {"kind": "constant", "c": 0.05},
        "target": [1.0],
        "epsilon": 0.4,
        "seed_radius": 1e-3,
        "tolerances": {"tol": 1e-4}
    })");
    const auto out = dir / "out";
    const auto r = run_cli({"reach", "--config", (dir / "dw.json").string(), "--out", out.string()});
    CHECK(r.code == 0);
    const auto s = read_json(out / "summary.json");
    CHECK(s["status"] == "success");
    CHECK(s["final_distance"].get<double>() <= 1e-4);
    for (const char* key : {"target", "x0", "delta_used", "seed_radius", "final_distance", "status",
                            "forward_csv_path", "reverse_csv_path"})
        CHECK(s.contains(key));
    CHECK(fs::exists(out / s["forward_csv_path"].get<std::string>()));
    const std::string rev = slurp(out / s["reverse_csv_path"].get<std::string>());
    CHECK(rev.rfind("k,t,x_1,f,gnorm,direction\n", 0) == 0);
    CHECK(rev.find(",reverse\n") != std::string::npos);
}

TEST_CASE("eos verdict is output, not failure")
{
    const auto dir = scratch("eos");
    const auto r = run_cli({"eos", "--function", "quad:1", "--alpha", "2.1", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(read_json(dir / "summary.json")["verdict"] == "diverges");
}

TEST_CASE("check sweeps the proximal identity")
{
    const auto dir = scratch("check");
    const auto r = run_cli({"check", "--function", "himmelblau", "--trials", "200", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto s = read_json(dir / "summary.json");
    CHECK(s["status"] == "pass");
    CHECK(s["max_relative_residual"].get<double>() <= 1e-10);
}

TEST_CASE("probe subcommand")
{
    const auto dir = scratch("probe");
    const auto r = run_cli({"probe", "--target", "1", "--epsilon", "0.5", "--schedule", "constant:0.05", "--out",
                            dir.string()});
    CHECK(r.code == 0);
    CHECK(read_json(dir / "summary.json")["delta_hat"].get<double>() >= 0.4);
}

TEST_CASE("configuration errors exit with 2 and name the field")
{
    const auto dir = scratch("errors");
    const std::string out = (dir / "o").string();
    auto r = run_cli({"run", "--function", "rosenbrock", "--x0", "1", "--out", out});
    CHECK(r.code == 2);
    CHECK(r.err.find("function") != std::string::npos);

    r = run_cli({"run", "--schedule", "cosine:1", "--x0", "0.3", "--out", out});
    CHECK(r.code == 2);
    CHECK(r.err.find("schedule") != std::string::npos);

    r = run_cli({"reach", "--target", "1", "--schedule", "constant:0.05", "--out", out});
    CHECK(r.code == 2);
    CHECK(r.err.find("schedule") != std::string::npos);
    CHECK(r.err.find("1/L") != std::string::npos);

    write_file(dir / "bad.json", "{\"function\": \"double_well\", \"bogus\": 1}");
    r = run_cli({"run", "--config", (dir / "bad.json").string(), "--x0", "0.3", "--out", out});
    CHECK(r.code == 2);
    CHECK(r.err.find("bogus") != std::string::npos);

    write_file(dir / "broken.json", "{\"function\": ");
    r = run_cli({"run", "--config", (dir / "broken.json").string(), "--out", out});
    CHECK(r.code == 2);
    CHECK(r.err.find("config") != std::string::npos);

    r = run_cli({"run", "--out", out});
    CHECK(r.code == 2);
    CHECK(r.err.find("x0") != std::string::npos);

    r = run_cli({"reach", "--target", "0", "--schedule", "constant:0.01", "--out", out});
    CHECK(r.code == 2);

    r = run_cli({"frobnicate"});
    CHECK(r.code == 2);
}

TEST_CASE("procedure failures exit with 1")
{
    const auto dir = scratch("fail");
    const auto r = run_cli({"run", "--x0", "0.3", "--max-iter", "3", "--out", dir.string()});
    CHECK(r.code == 1);
    CHECK(read_json(dir / "summary.json")["status"] == "budget_exhausted");
}

TEST_CASE("identical configs give byte-identical outputs, and the echoed config reproduces them")
{
    const auto a = scratch("repro_a"), b = scratch("repro_b"), c = scratch("repro_c");
    const std::vector<std::string> args{"reach", "--function", "himmelblau", "--target", "#0", "--schedule",
                                        "power:0.0015:0.5", "--samples", "8", "--tol", "1e-4"};
    auto with_out = [&](const fs::path& d) {
        auto v = args;
        v.push_back("--out");
        v.push_back(d.string());
        return v;
    };
    REQUIRE(run_cli(with_out(a)).code == 0);
    REQUIRE(run_cli(with_out(b)).code == 0);
    for (const char* file : {"summary.json", "forward.csv", "reverse.csv"}) CHECK(slurp(a / file) == slurp(b / file));
    // the echoed configs differ only in where they were written
    auto ca = read_json(a / "config.json"), cb = read_json(b / "config.json");
    CHECK(ca["output_dir"] == a.string());
    ca.erase("output_dir");
    cb.erase("output_dir");
    CHECK(ca == cb);

    REQUIRE(run_cli({"run", "--config", (a / "config.json").string(), "--out", c.string()}).code == 0);
    for (const char* file : {"summary.json", "forward.csv", "reverse.csv"}) CHECK(slurp(a / file) == slurp(c / file));
}

TEST_CASE("BASINREACH_OUT overrides the output directory")
{
    const auto dir = scratch("env");
    ::setenv("BASINREACH_OUT", dir.string().c_str(), 1);
    const auto r = run_cli({"eos", "--function", "quad:1", "--alpha", "1.9", "--out", (dir / "ignored").string()});
    ::unsetenv("BASINREACH_OUT");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "summary.json"));
    CHECK_FALSE(fs::exists(dir / "ignored"));
}

TEST_CASE("config round trip")
{
    cli::RunConfig cfg;
    cfg.function = "himmelblau";
    cfg.params = {4.5};
    cfg.target_index = 2;
    cfg.delta = 0.25;
    cfg.seed = 7;
    cli::RunConfig back;
    cli::apply_json(back, cli::to_json(cfg));
    CHECK(cli::to_json(back) == cli::to_json(cfg));
    CHECK(cli::parse_function_spec("quad:1,4").second == std::vector<double>{1.0, 4.0});
    CHECK(cli::parse_function_spec("double_well").second.empty());
    CHECK_THROWS_AS(cli::parse_function_spec("quad:1,x"), cli::ConfigError);
}
