#include "coalab/config.hpp"
#include "coalab/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int run_command(const std::string& command, const std::string& path, const coalab::ConfigOverrides& overrides) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot read config '" << path << "'\n";
        return coalab::exit_invalid_config;
    }
    std::stringstream text;
    text << in.rdbuf();
    const auto parsed = coalab::parse_config(text.str(), command, overrides);
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors) std::cerr << path << ": " << e << '\n';
        return coalab::exit_invalid_config;
    }
    try {
        const auto outcome = coalab::run(*parsed.config);
        for (const auto& f : outcome.files) std::cout << "wrote " << f << '\n';
        std::cout << command << ": " << outcome.summary << '\n';
        return outcome.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << command << ": " << e.what() << '\n';
        return coalab::exit_invalid_config;
    } catch (const std::exception& e) {
        std::cerr << command << ": " << e.what() << '\n';
        return coalab::exit_tolerance_failure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coalescent genealogies of exponential-growth populations"};
    app.set_version_flag("--version", std::string(COALAB_VERSION));
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    std::string out;
    unsigned threads = 1;
    for (const auto& name : coalab::known_commands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config file")->required();
        sub->add_option("--seed", seed, "master seed (overrides the config)");
        sub->add_option("--out", out, "output directory (overrides the config)");
        sub->add_option("--threads", threads, "worker threads, 0 = all cores (overrides the config)")->check(CLI::NonNegativeNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : coalab::exit_invalid_config;
    }

    auto* sub = app.get_subcommands().front();
    coalab::ConfigOverrides overrides;
    if (sub->count("--seed")) overrides.seed = seed;
    if (sub->count("--out")) overrides.out = out;
    if (sub->count("--threads")) overrides.threads = threads;
    return run_command(sub->get_name(), config_path, overrides);
}
