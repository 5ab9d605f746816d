#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hysir/config.hpp"
#include "hysir/export.hpp"
#include "hysir/lemma_checks.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_override;
};

fs::path prepare_out_dir(const hysir::ScenarioConfig& cfg, const CommonArgs& args) {
    const fs::path dir = args.out_override.empty() ? fs::path(cfg.output)
                                                   : fs::path(args.out_override);
    fs::create_directories(dir);
    return dir;
}

void write_summary(const fs::path& dir, const hysir::ScenarioConfig& cfg,
                   const std::string& command, json result) {
    json summary{{"command", command},
                 {"prng", "mt19937_64"},
                 {"config", cfg.to_json()},
                 {"result", std::move(result)}};
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
}

json simulate_result(const hysir::ScenarioConfig& cfg, const hysir::Trajectory& traj) {
    const auto params = cfg.to_params();
    const auto segment = hysir::endemic_segment(params, cfg.resolution);
    const auto& fin = traj.final_state;
    return {{"converged", traj.outcome == hysir::Outcome::converged},
            {"orbit_detected", traj.outcome == hysir::Outcome::orbit},
            {"limit", {{"I", fin.infected}, {"S", fin.susceptible}}},
            {"on_segment", segment.contains(fin.infected, fin.susceptible, 1e-6)},
            {"n_switches", traj.switches.size()},
            {"grazing_flagged", traj.grazing_flagged},
            {"final_time", traj.final_time}};
}

int cmd_simulate(const hysir::ScenarioConfig& cfg, const CommonArgs& args) {
    const auto dir = prepare_out_dir(cfg, args);
    const auto traj =
        hysir::integrate(cfg.to_params(), cfg.to_initial_state(), cfg.t_max,
                         cfg.to_integrator_config());
    std::ofstream csv(dir / "trajectory.csv");
    hysir::write_trajectory_csv(csv, traj);
    write_summary(dir, cfg, "simulate", simulate_result(cfg, traj));
    return 0;
}

int cmd_loop_diagram(const hysir::ScenarioConfig& cfg, const CommonArgs& args) {
    if (!cfg.program) throw hysir::ConfigError("program", "loop-diagram needs a program");
    const auto dir = prepare_out_dir(cfg, args);
    hysir::PreisachOperator op = cfg.to_params().op;
    op.set_memory(cfg.to_initial_state().memory);

    std::ofstream csv(dir / "loop.csv");
    csv << "I,R0\n";
    const auto emit = [&](double I, double r0) {
        csv << hysir::format_double(I) << ',' << hysir::format_double(r0) << '\n';
    };
    emit(op.memory().current(), op.output());
    for (double target : *cfg.program) {
        const double start = op.memory().current();
        const int n = std::max(2, int(std::ceil(std::abs(target - start) / 0.005)));
        for (int i = 1; i <= n; ++i) {
            op.apply_to(i == n ? target : start + (target - start) * double(i) / n);
            emit(op.memory().current(), op.output());
        }
    }
    write_summary(dir, cfg, "loop-diagram",
                  {{"final_I", op.memory().current()}, {"final_R0", op.output()}});
    return 0;
}

int cmd_certify(const hysir::ScenarioConfig& cfg, const CommonArgs& args) {
    const auto dir = prepare_out_dir(cfg, args);
    const auto cert = hysir::compute_certificate(cfg.to_params());
    const json j = hysir::certificate_to_json(cert);
    std::ofstream(dir / "certificate.json") << j.dump(2) << '\n';
    write_summary(dir, cfg, "certify", j);
    return 0;
}

int cmd_verify_lemmas(const hysir::ScenarioConfig& cfg, const CommonArgs& args) {
    const auto dir = prepare_out_dir(cfg, args);
    const auto params = cfg.to_params();
    const auto traj = hysir::integrate(params, cfg.to_initial_state(), cfg.t_max,
                                       cfg.to_integrator_config());
    const auto report = hysir::verify_lemmas(params, traj);
    std::ofstream(dir / "lemmas.json") << hysir::lemma_report_to_json(report).dump(2) << '\n';
    write_summary(dir, cfg, "verify-lemmas",
                  {{"n_checks", report.records.size()},
                   {"n_failures", report.failures()},
                   {"all_pass", report.all_pass()}});
    return 0;
}

int cmd_equilibria(const hysir::ScenarioConfig& cfg, const CommonArgs& args) {
    const auto dir = prepare_out_dir(cfg, args);
    const auto segment = hysir::endemic_segment(cfg.to_params(), cfg.resolution);
    std::ofstream csv(dir / "segment.csv");
    hysir::write_segment_csv(csv, segment);
    write_summary(dir, cfg, "equilibria",
                  {{"I_lo", segment.i_lo},
                   {"I_hi", segment.i_hi},
                   {"degenerate", segment.degenerate()}});
    return 0;
}

struct SweepRow {
    json params;
    std::string outcome;
    double limit_infected = std::nan("");
    double limit_susceptible = std::nan("");
    int kappa_sign = 0;  // +1 / -1, 0 when kappa is undefined (atomic)
};

int cmd_sweep(const hysir::ScenarioConfig& cfg, const CommonArgs& args, int jobs) {
    if (!cfg.sweep) throw hysir::ConfigError("sweep", "sweep needs a grid spec");
    const auto dir = prepare_out_dir(cfg, args);
    const auto& sw = *cfg.sweep;

    std::vector<hysir::ScenarioConfig> cells;
    if (sw.param == "delta") {
        for (int i = 0; i < sw.n; ++i) {
            hysir::ScenarioConfig cell = cfg;
            const double delta =
                sw.n > 1 ? sw.from + (sw.to - sw.from) * double(i) / (sw.n - 1) : sw.from;
            cell.r0_int = cfg.r0_nat - delta;
            cell.sweep.reset();
            cells.push_back(std::move(cell));
        }
    } else {
        for (int i = 0; i < sw.n1; ++i) {
            for (int jdx = 0; jdx < sw.n2; ++jdx) {
                hysir::ScenarioConfig cell = cfg;
                const double a1 = sw.n1 > 1
                                      ? sw.a1_min + (sw.a1_max - sw.a1_min) * double(i) / (sw.n1 - 1)
                                      : sw.a1_min;
                const double a2 = sw.n2 > 1
                                      ? sw.a2_min + (sw.a2_max - sw.a2_min) * double(jdx) / (sw.n2 - 1)
                                      : sw.a2_min;
                cell.density.kind = "atomic";
                cell.density.relays = {{a1, a2, 1.0}};
                cell.sweep.reset();
                cells.push_back(std::move(cell));
            }
        }
    }

    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= cells.size()) return;
            SweepRow& row = rows[i];
            const auto& cell = cells[i];
            row.params = {{"r0_int", cell.r0_int}};
            if (cell.density.kind == "atomic" && !cell.density.relays.empty()) {
                row.params["a1"] = cell.density.relays[0].alpha1;
                row.params["a2"] = cell.density.relays[0].alpha2;
            }
            try {
                const auto params = cell.to_params();
                if (params.op.density().bounded())
                    row.kappa_sign =
                        hysir::compute_certificate(params).kappa > 0.0 ? 1 : -1;
                const auto traj = hysir::integrate(params, cell.to_initial_state(),
                                                   cell.t_max, cell.to_integrator_config());
                switch (traj.outcome) {
                    case hysir::Outcome::converged: row.outcome = "equilibrium"; break;
                    case hysir::Outcome::orbit: row.outcome = "orbit"; break;
                    case hysir::Outcome::timeout: row.outcome = "timeout"; break;
                }
                row.limit_infected = traj.final_state.infected;
                row.limit_susceptible = traj.final_state.susceptible;
            } catch (const hysir::Error& e) {
                std::string msg = std::string("error: ") + e.what();
                std::replace(msg.begin(), msg.end(), ',', ';');
                std::replace(msg.begin(), msg.end(), '\n', ' ');
                row.outcome = std::move(msg);
            }
        }
    };
    const int n_threads = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::ofstream csv(dir / "sweep.csv");
    const bool thresholds = sw.param == "thresholds";
    csv << (thresholds ? "a1,a2" : "delta") << ",outcome,limit_I,limit_S,kappa_sign\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (thresholds)
            csv << hysir::format_double(row.params["a1"].get<double>()) << ','
                << hysir::format_double(row.params["a2"].get<double>());
        else
            csv << hysir::format_double(cfg.r0_nat - cells[i].r0_int);
        csv << ',' << row.outcome << ',' << hysir::format_double(row.limit_infected) << ','
            << hysir::format_double(row.limit_susceptible) << ',' << row.kappa_sign << '\n';
    }
    write_summary(dir, cfg, "sweep", {{"cells", rows.size()}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIR epidemic dynamics with a Preisach hysteresis transmission rate"};
    app.require_subcommand(1);

    CommonArgs args;
    int jobs = 1;
    const char* names[] = {"simulate", "loop-diagram", "certify",
                           "verify-lemmas", "equilibria", "sweep"};
    for (const char* name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", args.config_path, "scenario config (JSON)")->required();
        sub->add_option("--out", args.out_override, "output directory (overrides config)");
        if (std::string(name) == "sweep")
            sub->add_option("--jobs", jobs, "parallel sweep workers")->check(CLI::PositiveNumber);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = hysir::ScenarioConfig::load(args.config_path);
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "simulate") return cmd_simulate(cfg, args);
        if (cmd == "loop-diagram") return cmd_loop_diagram(cfg, args);
        if (cmd == "certify") return cmd_certify(cfg, args);
        if (cmd == "verify-lemmas") return cmd_verify_lemmas(cfg, args);
        if (cmd == "equilibria") return cmd_equilibria(cfg, args);
        if (cmd == "sweep") return cmd_sweep(cfg, args, jobs);
        std::cerr << "unknown command\n";
        return 2;
    } catch (const hysir::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const hysir::InvalidHypotheses& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const hysir::Error& e) {
        std::cerr << "runtime failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << '\n';
        return 2;
    }
}
