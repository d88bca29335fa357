// Command-line front end: solve the barrier problem, evaluate the value
// function, run the HJB verification sweep, Monte Carlo a barrier strategy or
// the stopping problem, and sweep parameters for comparative statics.
//
// Exit codes: 0 success, 1 input/solver error (structured JSON on stderr),
// 2 a verification/trend assertion failed.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "extraction/json_io.hpp"

using namespace extraction;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("BadInput", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("BadInput", std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

// Accepts either a raw parameter file or a previously emitted solution file
// (recognized by its "bstar" key); the latter round-trips losslessly.
BarrierSolution load_solution(const std::string& path) {
    const json j = load_json(path);
    if (j.contains("bstar")) return solution_from_json(j);
    return solve(params_from_json(j));
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) throw ValidationError("BadInput", "cannot write " + out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

// Generic CSV fallback: one "path,value" row per leaf of the JSON document.
std::string flat_csv(const json& j) {
    std::ostringstream os;
    os << "key,value\n";
    const json flat = j.flatten();  // keep alive: items() stores a reference
    for (const auto& [k, v] : flat.items()) os << k << ',' << v.dump() << '\n';
    return os.str();
}

std::string render(const json& j, const std::string& format) {
    return format == "csv" ? flat_csv(j) : j.dump(2);
}

StatePoint parse_point(const std::string& s) {
    StatePoint pt;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> pt.x >> comma >> pt.y) || comma != ',')
        throw ValidationError("BadInput", "expected x,y but got: " + s);
    return pt;
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> g;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) g.push_back(std::stod(tok));
    if (g.size() < 2) throw ValidationError("BadInput", "grid needs at least 2 values");
    return g;
}

struct SimArgs {
    long paths = 200000;
    double dt = 0.0, horizon = 0.0;
    std::uint64_t seed = 0;
};

PathConfig make_config(const ModelParams& p, const SimArgs& a) {
    PathConfig cfg = default_config(p, a.seed, a.paths);
    if (a.dt > 0.0) cfg.dt = a.dt;
    if (a.horizon > 0.0) cfg.horizon = a.horizon;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal commodity extraction under price impact: solver and checks"};
    app.require_subcommand(1);

    std::string params_path, out_path, format = "json";
    SimArgs sim;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--params", params_path, "parameter JSON file")->required();
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--seed", sim.seed, "random seed");
    };

    CLI::App* c_solve = app.add_subcommand("solve", "barrier, coefficients, residuals");
    add_common(c_solve);

    CLI::App* c_value = app.add_subcommand("value", "evaluate the value function");
    add_common(c_value);
    std::vector<std::string> point_specs;
    c_value->add_option("--point", point_specs, "state as x,y (repeatable)")->required();

    CLI::App* c_verify = app.add_subcommand("verify", "HJB residual sweep");
    add_common(c_verify);

    CLI::App* c_sim = app.add_subcommand("simulate", "Monte Carlo a barrier strategy");
    add_common(c_sim);
    double x0 = 0.0, y0 = 1.0, barrier = 0.0;
    bool have_b = false;
    c_sim->add_option("--x0", x0, "initial price")->required();
    c_sim->add_option("--y0", y0, "initial inventory");
    c_sim->add_option("--b", barrier, "barrier level (default solved bstar)")
        ->each([&](const std::string&) { have_b = true; });
    c_sim->add_option("--paths", sim.paths, "number of paths");
    c_sim->add_option("--dt", sim.dt, "grid step (default 1e-3/rho)");
    c_sim->add_option("--horizon", sim.horizon, "time horizon (default ln(1e9)/rho)");

    CLI::App* c_stop = app.add_subcommand("stopping", "Monte Carlo the stopping payoff");
    add_common(c_stop);
    c_stop->add_option("--x0", x0, "initial price")->required();
    c_stop->add_option("--paths", sim.paths, "number of paths");
    c_stop->add_option("--dt", sim.dt, "grid step");
    c_stop->add_option("--horizon", sim.horizon, "time horizon");

    CLI::App* c_sweep = app.add_subcommand("sweep", "comparative statics over one parameter");
    add_common(c_sweep);
    std::string sweep_param, grid_spec, target = "bstar";
    std::vector<std::string> sweep_points;
    c_sweep->add_option("--param", sweep_param, "parameter name to vary")->required();
    c_sweep->add_option("--grid", grid_spec, "comma-separated values")->required();
    c_sweep->add_option("--target", target, "bstar, value, or roots")
        ->check(CLI::IsMember({"bstar", "value", "roots"}));
    c_sweep->add_option("--probe", sweep_points, "state x,y for value sweeps (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*c_solve) {
            emit(out_path, render(solution_to_json(load_solution(params_path)), format));
        } else if (*c_value) {
            const BarrierSolution sol = load_solution(params_path);
            json rows = json::array();
            std::ostringstream csv;
            csv << "x,y,region,value,dvdx,d2vdx2,dvdy,u\n";
            for (const std::string& spec : point_specs) {
                const StatePoint pt = parse_point(spec);
                const json row = {{"x", pt.x},
                                  {"y", pt.y},
                                  {"region", region_name(classify(sol, pt))},
                                  {"value", value(sol, pt)},
                                  {"dvdx", dVdx(sol, pt)},
                                  {"d2vdx2", d2Vdx2(sol, pt)},
                                  {"dvdy", dVdy(sol, pt)},
                                  {"u", directional_u(sol, pt.x)}};
                rows.push_back(row);
                csv << row["x"].dump() << ',' << row["y"].dump() << ','
                    << row["region"].get<std::string>() << ',' << row["value"].dump() << ','
                    << row["dvdx"].dump() << ',' << row["d2vdx2"].dump() << ','
                    << row["dvdy"].dump() << ',' << row["u"].dump() << '\n';
            }
            emit(out_path, format == "csv" ? csv.str() : rows.dump(2));
        } else if (*c_verify) {
            const BarrierSolution sol = load_solution(params_path);
            const HjbReport rep = run_verification(sol);
            json j = hjb_report_to_json(rep);
            const bool ok = verification_passes(rep, sol);
            j["passed"] = ok;
            emit(out_path, render(j, format));
            if (!ok) return 2;
        } else if (*c_sim) {
            const BarrierSolution sol = load_solution(params_path);
            const double b = have_b ? barrier : sol.bstar;
            const SimEstimate est =
                mc_value(sol.params, x0, y0, b, make_config(sol.params, sim));
            json j = estimate_to_json(est);
            j["x0"] = x0;
            j["y0"] = y0;
            j["b"] = b;
            emit(out_path, render(j, format));
        } else if (*c_stop) {
            const BarrierSolution sol = load_solution(params_path);
            const StopEstimate est =
                mc_stopping(sol.params, x0, sol.bstar, make_config(sol.params, sim));
            json j = stop_estimate_to_json(est);
            j["x0"] = x0;
            j["bstar"] = sol.bstar;
            emit(out_path, render(j, format));
        } else if (*c_sweep) {
            const ModelParams base = params_from_json(load_json(params_path));
            const std::vector<double> grid = parse_grid(grid_spec);
            bool ok = true;
            json j;
            if (target == "roots") {
                const RootSweepReport rep = sweep_roots(base, sweep_param, grid);
                j = root_sweep_report_to_json(rep);
                ok = rep.asserted_ok;
            } else if (target == "value") {
                std::vector<StatePoint> probes;
                for (const std::string& s : sweep_points) probes.push_back(parse_point(s));
                if (probes.empty()) probes.push_back({base.c, 1.0});
                const SweepReport rep = sweep_value(base, sweep_param, grid, probes);
                j = sweep_report_to_json(rep);
                ok = !rep.asserted || rep.trend_holds;
            } else {
                const SweepReport rep = sweep_bstar(base, sweep_param, grid);
                j = sweep_report_to_json(rep);
                ok = !rep.asserted || rep.trend_holds;
            }
            emit(out_path, render(j, format));
            if (!ok) return 2;
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump()
                  << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"kind", "Unknown"}, {"message", e.what()}}}}.dump()
                  << '\n';
        return 1;
    }
    return 0;
}
