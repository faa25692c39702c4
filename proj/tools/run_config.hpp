#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace frechet_cli {

// Run configuration shared by all subcommands; round-trips through JSON
// unchanged.
struct RunConfig {
    std::string experiment = "solve";
    std::string problem = "scalar-quadratic";
    double target = 0.5;
    double eps0 = 0.1;
    int k0 = 0;
    double tol = 1e-10;
    int max_outer = 200;
    int samples = 100;
    std::uint64_t seed = 0;
    double rel_tol = 1e-6;
    std::string ode = "linear-scalar";
    double r = 0.1;
    int grid = 200;
    // implicit-map experiments: optional parameter box override and the
    // number of parameter draws
    std::vector<std::array<double, 2>> p_box;
    int ift_grid = 0;
    std::string out;
    bool trace = false;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["experiment"] = experiment;
        j["problem"] = problem;
        j["target"] = target;
        j["solver"] = {{"eps0", eps0}, {"k0", k0}, {"tol", tol}, {"max_outer", max_outer}};
        j["verification"] = {{"samples", samples}, {"seed", seed}, {"rel_tol", rel_tol}};
        j["ode"] = {{"ode", ode}, {"r", r}, {"grid", grid}};
        {
            nlohmann::json ift = nlohmann::json::object();
            if (!p_box.empty()) ift["p_box"] = p_box;
            if (ift_grid > 0) ift["grid"] = ift_grid;
            j["ift"] = ift;
        }
        j["out"] = out;
        j["trace"] = trace;
        return j;
    }

    static RunConfig from_json(const nlohmann::json& j) {
        RunConfig c;
        c.experiment = j.value("experiment", c.experiment);
        c.problem = j.value("problem", c.problem);
        c.target = j.value("target", c.target);
        if (j.contains("solver")) {
            const nlohmann::json& s = j.at("solver");
            c.eps0 = s.value("eps0", c.eps0);
            c.k0 = s.value("k0", c.k0);
            c.tol = s.value("tol", c.tol);
            c.max_outer = s.value("max_outer", c.max_outer);
        }
        if (j.contains("verification")) {
            const nlohmann::json& v = j.at("verification");
            c.samples = v.value("samples", c.samples);
            c.seed = v.value("seed", c.seed);
            c.rel_tol = v.value("rel_tol", c.rel_tol);
        }
        if (j.contains("ode")) {
            const nlohmann::json& o = j.at("ode");
            c.ode = o.value("ode", c.ode);
            c.r = o.value("r", c.r);
            c.grid = o.value("grid", c.grid);
        }
        if (j.contains("ift")) {
            const nlohmann::json& f = j.at("ift");
            if (f.contains("p_box"))
                c.p_box = f.at("p_box").get<std::vector<std::array<double, 2>>>();
            c.ift_grid = f.value("grid", c.ift_grid);
        }
        c.out = j.value("out", c.out);
        c.trace = j.value("trace", c.trace);
        return c;
    }
};

} // namespace frechet_cli
