// Command-line runner for semiclassical entanglement and chaos experiments.
//
//   entchaos run <config>        execute an experiment config
//   entchaos validate <config>   check a config without running it
//   entchaos list-experiments    show the configs shipped under experiments/

#include "entchaos/experiment.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>

namespace {

int report_config_error(const entchaos::ConfigError& e) {
    nlohmann::ordered_json err;
    err["error"] = "validation";
    err["field"] = e.field;
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
}

std::filesystem::path experiments_dir() {
    if (const char* env = std::getenv("ENTCHAOS_EXPERIMENTS_DIR")) return env;
    return "experiments";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiclassical entanglement and chaos simulator"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("config", config_path, "flat-key config file")->required();
    auto* validate = app.add_subcommand("validate", "validate an experiment config");
    validate->add_option("config", config_path, "flat-key config file")->required();
    auto* list = app.add_subcommand("list-experiments", "list shipped experiment configs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            const auto dir = experiments_dir();
            if (!std::filesystem::is_directory(dir)) {
                std::cerr << "no experiments directory at " << dir << "\n";
                return 1;
            }
            for (const auto& entry : std::filesystem::directory_iterator(dir))
                if (entry.path().extension() == ".cfg") std::cout << entry.path().string() << "\n";
            return 0;
        }

        const auto cfg = entchaos::load_config(config_path);
        if (validate->parsed()) {
            std::cout << "ok: " << config_path << "\n";
            return 0;
        }

        const auto result = entchaos::run_experiment(cfg);
        for (const auto& f : result.files) std::cout << f << "\n";
        std::cout << result.manifest_path << "\n";
        return result.exit_code;
    } catch (const entchaos::ConfigError& e) {
        return report_config_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
