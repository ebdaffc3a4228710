// Command-line driver: run, sweep-m, convergence, verify.
//
// Exit status: 0 on success/PASS, 1 on a failed check or runtime error,
// 2 on usage or configuration errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chemsim/config.hpp"
#include "chemsim/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

chemsim::RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw chemsim::UsageError("cannot open config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return chemsim::parse_config(text.str());
    } catch (const chemsim::ConfigError& e) {
        throw chemsim::ConfigError(0, path + ": " + e.what());
    }
}

std::string config_dir(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    return parent.empty() ? std::string(".") : parent.string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chemotaxis-consumption simulator and property verifier"};
    app.require_subcommand(1);

    std::string run_cfg;
    auto* run = app.add_subcommand("run", "run a simulation and write diagnostics.csv");
    run->add_option("config", run_cfg, "config file")->required();

    std::string sweep_cfg;
    std::vector<int> sweep_m;
    auto* sweep = app.add_subcommand("sweep-m", "compare runs across truncation levels");
    sweep->add_option("config", sweep_cfg, "config file")->required();
    sweep->add_option("--m", sweep_m, "comma-separated truncation levels")->required()->delimiter(',');

    std::string conv_cfg;
    std::string conv_axis;
    int conv_levels = 4;
    auto* conv = app.add_subcommand("convergence", "estimate the convergence order against an oracle");
    conv->add_option("config", conv_cfg, "config file")->required();
    conv->add_option("--axis", conv_axis, "space or time")->required()->check(CLI::IsMember({"space", "time"}));
    conv->add_option("--levels", conv_levels, "number of refinement levels");

    std::vector<int> verify_n{32, 64, 128};
    int verify_dim = 2;
    double verify_extent = 1.0;
    bool verify_constant = false;
    auto* verify = app.add_subcommand("verify", "check the integral identities on a manufactured field");
    verify->add_option("--n", verify_n, "comma-separated resolutions")->delimiter(',');
    verify->add_option("--dim", verify_dim, "grid dimension (must be 2)");
    verify->add_option("--extent", verify_extent, "square side length");
    verify->add_flag("--constant", verify_constant, "use the constant field z = 2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*run) {
            const auto out = chemsim::cmd_run(load_config(run_cfg), config_dir(run_cfg));
            std::cout << "wrote " << out.rows.size() << " rows to " << out.csv_path << '\n';
            return kOk;
        }
        if (*sweep) {
            const auto rep = chemsim::cmd_sweep_m(load_config(sweep_cfg), sweep_m, config_dir(sweep_cfg));
            std::cout << rep.to_string();
            return rep.pass ? kOk : kCheckFailed;
        }
        if (*conv) {
            const auto axis = conv_axis == "space" ? chemsim::ConvergenceAxis::Space : chemsim::ConvergenceAxis::Time;
            auto cfg = load_config(conv_cfg);
            const auto rep = chemsim::cmd_convergence(cfg, axis, conv_levels);
            std::cout << rep.to_string();
            return rep.pass ? kOk : kCheckFailed;
        }
        if (*verify) {
            const auto rep = chemsim::cmd_verify(verify_dim, verify_n, verify_extent, verify_constant);
            std::cout << rep.to_string();
            return rep.pass ? kOk : kCheckFailed;
        }
    } catch (const chemsim::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const chemsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kUsage;
}
