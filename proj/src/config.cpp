#include "hysir/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace hysir {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::string& where,
                    const std::set<std::string>& known) {
    for (const auto& [key, value] : j.items())
        if (!known.contains(key))
            throw ConfigError(where.empty() ? key : where + "." + key, "unknown field");
}

double require_number(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ConfigError(field, "missing required field");
    if (!j[field].is_number()) throw ConfigError(field, "expected a number");
    return j[field].get<double>();
}

}  // namespace

Density DensitySpec::to_density() const {
    if (kind == "uniform") return Density::uniform();
    if (kind == "grid") return Density::grid(nx, ny, values);
    if (kind == "atomic") return Density::atomic(relays);
    throw ConfigError("density.kind", "expected uniform, grid or atomic, got '" + kind + "'");
}

DensitySpec DensitySpec::from_density(const Density& d) {
    DensitySpec spec;
    switch (d.kind()) {
        case Density::Kind::uniform:
            spec.kind = "uniform";
            break;
        case Density::Kind::grid:
            spec.kind = "grid";
            spec.nx = d.grid_nx();
            spec.ny = d.grid_ny();
            spec.values = d.grid_values();
            break;
        case Density::Kind::atomic:
            spec.kind = "atomic";
            spec.relays = d.atoms();
            break;
    }
    return spec;
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    reject_unknown(j, "", {"r0_nat", "r0_int", "rho", "density", "initial", "integrator",
                           "seed", "output", "program", "sweep", "resolution"});
    ScenarioConfig c;
    c.r0_nat = require_number(j, "r0_nat");
    c.r0_int = require_number(j, "r0_int");
    c.rho = require_number(j, "rho");
    if (!(c.r0_int > 1.0)) throw ConfigError("r0_int", "hypotheses require r0_int > 1");
    if (!(c.r0_nat >= c.r0_int))
        throw ConfigError("r0_nat", "hypotheses require r0_nat >= r0_int");
    if (!(c.rho > 0.0 && c.rho < 1.0)) throw ConfigError("rho", "must lie in (0, 1)");

    if (!j.contains("density")) throw ConfigError("density", "missing required field");
    const json& jd = j["density"];
    reject_unknown(jd, "density", {"kind", "nx", "ny", "values", "relays"});
    if (!jd.contains("kind") || !jd["kind"].is_string())
        throw ConfigError("density.kind", "missing or not a string");
    c.density.kind = jd["kind"].get<std::string>();
    if (c.density.kind == "grid") {
        c.density.nx = jd.value("nx", 0);
        c.density.ny = jd.value("ny", 0);
        if (!jd.contains("values") || !jd["values"].is_array())
            throw ConfigError("density.values", "grid density needs a values array");
        c.density.values = jd["values"].get<std::vector<double>>();
    } else if (c.density.kind == "atomic") {
        if (!jd.contains("relays") || !jd["relays"].is_array())
            throw ConfigError("density.relays", "atomic density needs a relays array");
        for (const auto& jr : jd["relays"]) {
            reject_unknown(jr, "density.relays[]", {"a1", "a2", "w"});
            c.density.relays.push_back({require_number(jr, "a1"), require_number(jr, "a2"),
                                        require_number(jr, "w")});
        }
    } else if (c.density.kind != "uniform") {
        throw ConfigError("density.kind", "expected uniform, grid or atomic");
    }
    try {
        (void)c.density.to_density();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("density", e.what());
    }

    if (!j.contains("initial")) throw ConfigError("initial", "missing required field");
    const json& ji = j["initial"];
    reject_unknown(ji, "initial", {"I0", "S0", "memory"});
    c.initial_infected = require_number(ji, "I0");
    c.initial_susceptible = require_number(ji, "S0");
    if (!(c.initial_infected > 0.0))
        throw ConfigError("initial.I0", "phase space requires I > 0");
    if (!(c.initial_susceptible > 0.0))
        throw ConfigError("initial.S0", "phase space requires S > 0");
    if (!(c.initial_infected + c.initial_susceptible <= 1.0))
        throw ConfigError("initial", "phase space requires I0 + S0 <= 1");
    if (ji.contains("memory")) {
        if (ji["memory"].is_string()) {
            if (ji["memory"].get<std::string>() != "virgin")
                throw ConfigError("initial.memory", "expected \"virgin\" or a list of extrema");
        } else if (ji["memory"].is_array()) {
            c.memory_extrema = ji["memory"].get<std::vector<double>>();
        } else {
            throw ConfigError("initial.memory", "expected \"virgin\" or a list of extrema");
        }
    }
    try {
        (void)c.to_initial_state();
    } catch (const Error& e) {
        throw ConfigError("initial.memory", e.what());
    }

    if (j.contains("integrator")) {
        const json& jt = j["integrator"];
        reject_unknown(jt, "integrator", {"rtol", "atol", "event_tol", "t_max"});
        c.rtol = jt.value("rtol", c.rtol);
        c.atol = jt.value("atol", c.atol);
        c.event_tol = jt.value("event_tol", c.event_tol);
        c.t_max = jt.value("t_max", c.t_max);
        if (!(c.rtol > 0.0) || !(c.atol > 0.0))
            throw ConfigError("integrator", "tolerances must be positive");
        if (!(c.event_tol > 0.0)) throw ConfigError("integrator.event_tol", "must be positive");
        if (!(c.t_max > 0.0)) throw ConfigError("integrator.t_max", "must be positive");
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output")) c.output = j["output"].get<std::string>();
    if (j.contains("resolution")) {
        c.resolution = j["resolution"].get<int>();
        if (c.resolution < 2) throw ConfigError("resolution", "must be at least 2");
    }
    if (j.contains("program")) {
        c.program = j["program"].get<std::vector<double>>();
        for (double v : *c.program)
            if (!(v >= 0.0 && v <= 1.0))
                throw ConfigError("program", "target values must lie in [0, 1]");
    }
    if (j.contains("sweep")) {
        const json& js = j["sweep"];
        SweepSpec s;
        if (!js.contains("param") || !js["param"].is_string())
            throw ConfigError("sweep.param", "missing or not a string");
        s.param = js["param"].get<std::string>();
        if (s.param == "delta") {
            reject_unknown(js, "sweep", {"param", "from", "to", "n"});
            s.from = require_number(js, "from");
            s.to = require_number(js, "to");
            s.n = js.value("n", 0);
            if (s.n < 1 || s.n > 10000) throw ConfigError("sweep.n", "need 1 <= n <= 10^4");
            if (!(s.from >= 0.0) || !(s.to >= s.from))
                throw ConfigError("sweep", "need 0 <= from <= to");
            if (!(c.r0_nat - s.to > 1.0))
                throw ConfigError("sweep.to", "r0_nat - delta must stay above 1");
        } else if (s.param == "thresholds") {
            reject_unknown(js, "sweep",
                           {"param", "a1_min", "a1_max", "n1", "a2_min", "a2_max", "n2"});
            s.a1_min = require_number(js, "a1_min");
            s.a1_max = require_number(js, "a1_max");
            s.a2_min = require_number(js, "a2_min");
            s.a2_max = require_number(js, "a2_max");
            s.n1 = js.value("n1", 0);
            s.n2 = js.value("n2", 0);
            if (s.n1 < 1 || s.n2 < 1 || s.n1 * s.n2 > 10000)
                throw ConfigError("sweep", "grid must have between 1 and 10^4 cells");
        } else {
            throw ConfigError("sweep.param", "expected delta or thresholds");
        }
        c.sweep = s;
    }
    return c;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return from_json(j);
}

json ScenarioConfig::to_json() const {
    json jd;
    jd["kind"] = density.kind;
    if (density.kind == "grid") {
        jd["nx"] = density.nx;
        jd["ny"] = density.ny;
        jd["values"] = density.values;
    } else if (density.kind == "atomic") {
        jd["relays"] = json::array();
        for (const auto& a : density.relays)
            jd["relays"].push_back({{"a1", a.alpha1}, {"a2", a.alpha2}, {"w", a.weight}});
    }
    json j{{"r0_nat", r0_nat},
           {"r0_int", r0_int},
           {"rho", rho},
           {"density", jd},
           {"initial",
            {{"I0", initial_infected},
             {"S0", initial_susceptible},
             {"memory", memory_extrema.empty() ? json("virgin") : json(memory_extrema)}}},
           {"integrator",
            {{"rtol", rtol}, {"atol", atol}, {"event_tol", event_tol}, {"t_max", t_max}}},
           {"seed", seed},
           {"output", output},
           {"resolution", resolution}};
    if (program) j["program"] = *program;
    if (sweep) {
        json js{{"param", sweep->param}};
        if (sweep->param == "delta") {
            js["from"] = sweep->from;
            js["to"] = sweep->to;
            js["n"] = sweep->n;
        } else {
            js["a1_min"] = sweep->a1_min;
            js["a1_max"] = sweep->a1_max;
            js["n1"] = sweep->n1;
            js["a2_min"] = sweep->a2_min;
            js["a2_max"] = sweep->a2_max;
            js["n2"] = sweep->n2;
        }
        j["sweep"] = js;
    }
    return j;
}

SirParams ScenarioConfig::to_params() const {
    return {rho, PreisachOperator(density.to_density(), r0_nat, r0_int)};
}

SirState ScenarioConfig::to_initial_state() const {
    MemoryCurve memory = MemoryCurve::from_extrema(memory_extrema, initial_infected);
    return {initial_infected, initial_susceptible, memory};
}

IntegratorConfig ScenarioConfig::to_integrator_config() const {
    IntegratorConfig cfg;
    cfg.rtol = rtol;
    cfg.atol = atol;
    cfg.event_tol = event_tol;
    return cfg;
}

}  // namespace hysir
