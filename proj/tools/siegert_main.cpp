// Command-line front end: config-driven pole tables, trajectories,
// uncertainty sweeps, state dumps and the model verification suite.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "siegert/siegert.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    int workers = 0;     // 0: take the config's value
    double tol = 0.0;    // 0: take the config's value
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file")->required();
    cmd->add_option("--out", args.out_path, "output path (default: stdout)");
    cmd->add_option("--format", args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", args.workers, "parallel grid workers");
    cmd->add_option("--tol", args.tol, "Newton tolerance override");
}

void apply_overrides(siegert::RunOptions& opt, const CommonArgs& args) {
    if (args.workers > 0) opt.workers = args.workers;
    if (args.tol > 0.0) {
        opt.newton.tol = args.tol;
        opt.search.newton.tol = args.tol;
        opt.track.newton.tol = args.tol;
        opt.track.search.newton.tol = args.tol;
    }
}

int emit(const siegert::CommandOutput& out, const CommonArgs& args, bool human_to_stdout) {
    const std::string& payload = args.format == "json" ? out.json.dump(2) + "\n" : out.csv;
    if (args.out_path.empty()) {
        std::cout << (human_to_stdout && args.format == "csv" ? out.human : payload);
    } else {
        std::ofstream file(args.out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file " << args.out_path << "\n";
            return siegert::kExitConfigError;
        }
        file << payload;
        if (human_to_stdout) std::cout << out.human;
    }
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonance-state toolkit: poles, states, expectation values, uncertainty"};
    app.require_subcommand(1);

    CommonArgs poles_args, traj_args, sweep_args, dump_args, verify_args;
    CLI::App* cmd_poles = app.add_subcommand("poles", "solve the first n_max complex poles");
    add_common(cmd_poles, poles_args);
    CLI::App* cmd_traj = app.add_subcommand("trajectory", "continuation of poles along a parameter grid");
    add_common(cmd_traj, traj_args);
    CLI::App* cmd_sweep = app.add_subcommand("uncertainty-sweep",
                                             "uncertainty products across a parameter grid");
    add_common(cmd_sweep, sweep_args);
    CLI::App* cmd_dump = app.add_subcommand("state-dump", "sample one eigenfunction on a grid");
    add_common(cmd_dump, dump_args);
    CLI::App* cmd_verify = app.add_subcommand("verify", "run the model identity suite");
    add_common(cmd_verify, verify_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_poles->parsed()) {
            auto run = siegert::make_poles_run(siegert::ConfigData::parse_file(poles_args.config_path));
            apply_overrides(run.options, poles_args);
            return emit(siegert::run_poles(run), poles_args, false);
        }
        if (cmd_traj->parsed()) {
            auto run = siegert::make_trajectory_run(siegert::ConfigData::parse_file(traj_args.config_path));
            apply_overrides(run.options, traj_args);
            return emit(siegert::run_trajectory(run), traj_args, false);
        }
        if (cmd_sweep->parsed()) {
            auto run = siegert::make_uncertainty_sweep_run(
                siegert::ConfigData::parse_file(sweep_args.config_path));
            apply_overrides(run.options, sweep_args);
            return emit(siegert::run_uncertainty_sweep(run), sweep_args, false);
        }
        if (cmd_dump->parsed()) {
            auto run = siegert::make_state_dump_run(siegert::ConfigData::parse_file(dump_args.config_path));
            apply_overrides(run.options, dump_args);
            return emit(siegert::run_state_dump(run), dump_args, false);
        }
        if (cmd_verify->parsed()) {
            auto run = siegert::make_verify_run(siegert::ConfigData::parse_file(verify_args.config_path));
            apply_overrides(run.options, verify_args);
            const siegert::CommandOutput out = siegert::run_verify(run);
            if (verify_args.format == "json" || !verify_args.out_path.empty()) {
                CommonArgs json_args = verify_args;
                json_args.format = "json";
                return emit(out, json_args, true);
            }
            std::cout << out.human;
            return out.exit_code;
        }
    } catch (const siegert::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return siegert::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return siegert::kExitConfigError;
    }
    return siegert::kExitConfigError;
}
