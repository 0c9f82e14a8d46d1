// tmoctl: model inspection, frequency-domain analysis, and closed-loop
// simulation of the delayed two-mass oscillator under the FO loop-shaping
// and 2DOF H-inf controllers. Emits plot-ready CSV and JSON artifacts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmoctl/config.hpp"
#include "tmoctl/errors.hpp"
#include "tmoctl/controllers.hpp"
#include "tmoctl/frequency.hpp"
#include "tmoctl/hinf_norm.hpp"
#include "tmoctl/margins.hpp"
#include "tmoctl/metrics.hpp"
#include "tmoctl/pade.hpp"
#include "tmoctl/plant.hpp"
#include "tmoctl/simulate.hpp"

namespace fs = std::filesystem;
using namespace tmoctl;
using nlohmann::json;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    long seed = -1;
    double tau_factor = 0.0;   // 0 = all configured factors
    std::string controller;    // "", "fo", "hinf"
};

RunConfig load_config(const CliOptions& opt) {
    RunConfig rc = opt.config_path.empty() ? RunConfig::defaults()
                                           : RunConfig::load(opt.config_path);
    if (opt.seed >= 0) {
        rc.seed = static_cast<std::uint32_t>(opt.seed);
        for (auto& sc : rc.scenarios)
            if (sc.disturbance) sc.disturbance->seed = rc.seed;
    }
    if (!opt.out_dir.empty()) rc.out_dir = opt.out_dir;
    return rc;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw tmoctl::Error("cannot write " + path.string());
    f << content;
}

json margin_json(const MarginReport& rep) {
    json j;
    j["omega_c_rad_s"] = rep.omega_c;
    j["phase_margin_deg"] = rep.phase_margin_deg;
    j["gain_margin"] = rep.gain_margin;
    j["omega_pc_rad_s"] = rep.omega_pc;
    j["gain_crossovers"] = json::array();
    for (const auto& c : rep.gain_crossovers)
        j["gain_crossovers"].push_back({{"omega", c.omega}, {"pm_deg", c.phase_margin_deg}});
    j["phase_crossovers"] = json::array();
    for (const auto& c : rep.phase_crossovers)
        j["phase_crossovers"].push_back({{"omega", c.omega}, {"gm", c.gain_margin}});
    return j;
}

int cmd_model(const CliOptions& opt) {
    const RunConfig rc = load_config(opt);
    const PlantParams& p = rc.plant;
    fs::create_directories(rc.out_dir);

    const RationalTF gyu = plant_tf(p, 0.0);
    const auto pz = poles_zeros(gyu);
    const double w0 = plant_omega0(p);

    json j;
    j["omega0_rad_s"] = w0;
    j["tau_n_s"] = p.tau_n;
    j["gain"] = gyu.num().leading() / gyu.den().leading();
    j["u_d_V"] = gravity_feedforward(p);
    j["mean_inverse_gain"] = mean_inverse_gain(p);
    j["zeros"] = json::array();
    for (const auto& z : pz.zeros) j["zeros"].push_back({z.real(), z.imag()});
    j["poles"] = json::array();
    for (const auto& pole : pz.poles) j["poles"].push_back({pole.real(), pole.imag()});

    std::cout << "two-mass oscillator model\n";
    std::cout << "  omega0 = " << w0 << " rad/s\n";
    std::cout << "  tau_n  = " << p.tau_n << " s (" << std::llround(std::ceil(p.tau_n / 2e-4))
              << " samples at Ts = 2e-4 s)\n";
    std::cout << "  G_yu gain " << j["gain"] << ", zero " << pz.zeros[0].real() << "\n";
    std::cout << "  poles:";
    for (const auto& pole : pz.poles)
        std::cout << " (" << pole.real() << (pole.imag() >= 0 ? "+" : "") << pole.imag() << "j)";
    std::cout << "\n  u_d = " << gravity_feedforward(p) << " V\n";

    write_file(fs::path(rc.out_dir) / "model.json", j.dump(2) + "\n");
    write_file(fs::path(rc.out_dir) / "controllers.json",
               controller_set_to_zpk_json(make_controller_set()) + "\n");
    std::cout << "wrote " << rc.out_dir << "/model.json, controllers.json\n";
    return 0;
}

int cmd_analyze(const CliOptions& opt, const std::string& which) {
    const RunConfig rc = load_config(opt);
    const PlantParams& p = rc.plant;
    fs::create_directories(rc.out_dir);
    const ControllerSet set = make_controller_set();
    const RationalTF g = plant_tf(p, 1.0);
    int failures = 0;

    if (which == "bode" || which == "all") {
        const auto grid = log_grid_n(1e-2, 1e3, 400);
        const struct {
            const char* name;
            RationalTF sys;
        } items[] = {{"L_fo", set.c_fo * g},
                     {"L_inf", -1.0 * set.c_inf_2 * g},
                     {"G", g},
                     {"C_fo", set.c_fo},
                     {"C_inf_1", set.c_inf_1},
                     {"C_inf_2", set.c_inf_2}};
        for (const auto& item : items) {
            std::ofstream f(fs::path(rc.out_dir) / (std::string("bode_") + item.name + ".csv"));
            freq_response(item.sys, grid).write_csv(f);
        }
        std::cout << "wrote bode_*.csv (400 points, [1e-2, 1e3] rad/s)\n";
    }
    if (which == "margins" || which == "all") {
        json j;
        j["L_fo"] = margin_json(stability_margins(set.c_fo * g));
        j["L_inf"] = margin_json(stability_margins(-1.0 * set.c_inf_2 * g));
        write_file(fs::path(rc.out_dir) / "margins.json", j.dump(2) + "\n");
        std::cout << "L_FO : wc = " << j["L_fo"]["omega_c_rad_s"] << " rad/s, PM = "
                  << j["L_fo"]["phase_margin_deg"] << " deg, GM = " << j["L_fo"]["gain_margin"]
                  << "\n";
        std::cout << "L_inf: wc = " << j["L_inf"]["omega_c_rad_s"] << " rad/s, PM = "
                  << j["L_inf"]["phase_margin_deg"] << " deg, GM = "
                  << j["L_inf"]["gain_margin"] << "\n";
    }
    if (which == "sensitivity" || which == "all") {
        const auto grid = log_grid_n(1e-2, 1e3, 400);
        json j;
        const struct {
            const char* name;
            RationalTF c;
        } loops[] = {{"fo", set.c_fo}, {"hinf", -1.0 * set.c_inf_2}};
        for (const auto& loop : loops) {
            const SensitivityYd s = sensitivity_yd(loop.c, p, p.tau_n);
            std::ofstream f(fs::path(rc.out_dir) /
                            (std::string("sensitivity_") + loop.name + ".csv"));
            f << "omega_rad_s,mag\n";
            for (double w : grid) f << w << "," << std::abs(s.eval(w)) << "\n";
            double wpk = 0.0;
            const double pk = s.peak(&wpk);
            j[loop.name] = {{"peak_exact_delay", pk},
                            {"peak_pade1", s.peak(nullptr, LoopDelayModel::pade1)},
                            {"omega_peak_rad_s", wpk},
                            {"nyquist_winding", s.nyquist_winding()}};
        }
        write_file(fs::path(rc.out_dir) / "sensitivity.json", j.dump(2) + "\n");
        std::cout << "||S_yd,FO|| = " << j["fo"]["peak_exact_delay"] << " (pade-1 "
                  << j["fo"]["peak_pade1"] << "), ||S_yd,inf|| = "
                  << j["hinf"]["peak_exact_delay"] << " (pade-1 " << j["hinf"]["peak_pade1"]
                  << ")\n";
    }
    if (which == "feedforward" || which == "all") {
        const auto grid = log_grid_n(1e-2, 1e3, 400);
        const FrequencyResponse f_fo = ff_transfer(set.c_fo, p, grid);
        std::ofstream f(fs::path(rc.out_dir) / "feedforward.csv");
        f << "omega_rad_s,mag_F_fo,mag_F_inf\n";
        for (size_t i = 0; i < grid.size(); ++i) {
            f << grid[i] << "," << std::abs(f_fo.values[i]) << ","
              << std::abs(set.c_inf_1.eval(grid[i])) << "\n";
        }
        std::cout << "wrote feedforward.csv\n";
    }
    return failures;
}

int run_scenarios(const CliOptions& opt, bool write_timeseries) {
    RunConfig rc = load_config(opt);
    fs::create_directories(rc.out_dir);

    std::vector<Scenario> scenarios;
    for (const Scenario& sc : rc.scenarios) {
        if (opt.tau_factor > 0.0 && std::abs(sc.tau_factor - opt.tau_factor) > 1e-12) continue;
        if (opt.controller == "fo" && sc.controller != ControllerKind::fo) continue;
        if (opt.controller == "hinf" && sc.controller != ControllerKind::hinf) continue;
        scenarios.push_back(sc);
    }
    if (scenarios.empty()) {
        std::cerr << "no scenarios match the requested filters\n";
        return 1;
    }

    const ControllerSet set = make_controller_set();
    const auto outcomes = run_matrix(scenarios, rc.plant, set);

    std::vector<MetricsReport> reports;
    int failures = 0;
    for (const auto& oc : outcomes) {
        if (!oc.error.empty()) {
            std::cerr << "scenario " << oc.scenario.label << " failed: " << oc.error << "\n";
            ++failures;
            continue;
        }
        reports.push_back(*oc.metrics);
        if (write_timeseries) {
            std::ofstream f(fs::path(rc.out_dir) / (oc.scenario.label + ".csv"));
            oc.result->write_csv(f);
        }
    }

    std::ostringstream table;
    write_metrics_csv(table, reports);
    std::cout << table.str();
    if (opt.format == "json") {
        write_file(fs::path(rc.out_dir) / "metrics.json", metrics_to_json(reports) + "\n");
    } else {
        write_file(fs::path(rc.out_dir) / "metrics.csv", table.str());
        write_file(fs::path(rc.out_dir) / "metrics.json", metrics_to_json(reports) + "\n");
    }
    std::cout << "wrote metrics to " << rc.out_dir << "\n";
    return failures;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-mass oscillator control study: model, analysis, simulation"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    CliOptions opt;
    app.add_option("--config", opt.config_path, "TOML-style run configuration");
    app.add_option("--seed", opt.seed, "override the disturbance seed");
    app.add_option("--out", opt.out_dir, "output directory (default from config)");
    app.add_option("--tau-factor", opt.tau_factor, "run only scenarios at this delay factor");
    app.add_option("--controller", opt.controller, "run only 'fo' or 'hinf' scenarios")
        ->check(CLI::IsMember({"fo", "hinf", ""}));
    app.add_option("--format", opt.format, "metrics output format")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* model = app.add_subcommand("model", "plant summary: poles, zeros, omega0, tau_n");
    auto* analyze = app.add_subcommand("analyze", "frequency-domain exports");
    std::string which = "all";
    analyze->add_option("--which", which, "bode | margins | sensitivity | feedforward | all")
        ->check(CLI::IsMember({"bode", "margins", "sensitivity", "feedforward", "all"}));
    auto* simulate_cmd =
        app.add_subcommand("simulate", "run the scenario matrix, write time series + metrics");
    auto* report = app.add_subcommand("report", "run the scenario matrix, metrics only");

    CLI11_PARSE(app, argc, argv);

    try {
        if (model->parsed()) return cmd_model(opt);
        if (analyze->parsed()) return cmd_analyze(opt, which);
        if (simulate_cmd->parsed()) return run_scenarios(opt, true);
        if (report->parsed()) return run_scenarios(opt, false);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
