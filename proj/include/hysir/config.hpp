#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hysir/integrate.hpp"
#include "hysir/sir.hpp"

namespace hysir {

/// Density specification as it appears in scenario configs.
struct DensitySpec {
    std::string kind;  // "uniform" | "grid" | "atomic"
    std::size_t nx = 0, ny = 0;
    std::vector<double> values;
    std::vector<Density::Atom> relays;

    Density to_density() const;
    static DensitySpec from_density(const Density& d);
};

struct SweepSpec {
    std::string param;  // "delta" | "thresholds"
    // delta sweep
    double from = 0.0, to = 0.0;
    int n = 0;
    // threshold sweep (single-relay atomic density over (a1, a2) cells)
    double a1_min = 0.0, a1_max = 0.0;
    double a2_min = 0.0, a2_max = 0.0;
    int n1 = 0, n2 = 0;
};

/// One fully resolved scenario. JSON form uses exactly these field names;
/// unknown fields are rejected.
struct ScenarioConfig {
    double r0_nat = 0.0, r0_int = 0.0, rho = 0.0;
    DensitySpec density;
    double initial_infected = 0.0, initial_susceptible = 0.0;
    std::vector<double> memory_extrema;  // empty = virgin history risen to I0
    double rtol = 1e-10, atol = 1e-12, event_tol = 1e-10, t_max = 500.0;
    std::uint64_t seed = 0;
    std::string output = "out";
    std::optional<std::vector<double>> program;  // loop-diagram input program
    std::optional<SweepSpec> sweep;
    int resolution = 101;

    static ScenarioConfig from_json(const nlohmann::json& j);
    static ScenarioConfig load(const std::string& path);
    nlohmann::json to_json() const;

    SirParams to_params() const;
    SirState to_initial_state() const;
    IntegratorConfig to_integrator_config() const;
};

}  // namespace hysir
