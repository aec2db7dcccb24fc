// oamswipt: rate-energy region and field-map experiment runner.
//
//   oamswipt run <scenario> [--<key> value ...] [--config path] [--out dir]
//                [--seed u64] [--samples n] [--format csv,json,svg]
//
// Exit codes: 0 success, 2 configuration error, 3 model error, 4 I/O error.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "oamswipt/config.hpp"
#include "oamswipt/output.hpp"
#include "oamswipt/scenario.hpp"

namespace {

std::string dashed(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

} // namespace

int main(int argc, char** argv) {
    using namespace oamswipt;

    CLI::App app{"OAM SWIPT rate-energy simulator"};
    app.require_subcommand(1);
    auto* run = app.add_subcommand("run", "run a named scenario");

    std::string scenario;
    std::string config_path;
    std::map<std::string, std::string> overrides;
    run->add_option("scenario", scenario, "fig2, fig3, fig5, field or custom")->required();
    run->add_option("--config", config_path, "flat key = value configuration file");
    for (const auto& key : config_keys()) {
        if (key == "scenario") continue;
        std::string names = "--" + key;
        if (dashed(key) != key) names += ",--" + dashed(key);
        run->add_option_function<std::string>(names, [&overrides, key](const std::string& v) { overrides[key] = v; }, "override " + key);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    ScenarioConfig config;
    try {
        if (!config_path.empty()) apply_config_file(config, config_path);
        apply_setting(config, "scenario", scenario); // the positional argument wins over the file
        for (const auto& [key, value] : overrides) apply_setting(config, key, value);
        validate(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        const auto bundle = run_scenario(config);
        for (const auto& path : emit_results(bundle, config.formats, config.out)) std::cout << path.string() << '\n';
        for (const auto& c : bundle.curves)
            std::cerr << c.baseline << ' ' << to_string(c.region.method) << ' ' << c.param_name << '=' << c.param_value
                      << " peak_rate=" << format_number(c.peak_rate()) << " max_harvested=" << format_number(c.max_harvested()) << '\n';
        for (const auto& f : bundle.fields)
            std::cerr << "mode " << f.mode << " ring_radius_m=" << format_number(f.ring_radius_m)
                      << " captured=" << format_number(f.captured_power_m2) << '\n';
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
