#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oamswipt {

// Bad or unknown configuration key. `key()` names the offending entry,
// prefixed with "file:line:" when it came from a config file.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

enum class MisalignmentSweep { Joint, Separate };

struct ScenarioConfig {
    std::string scenario = "custom";

    // physical setup
    int elements = 8;
    double radius_m = 0.1;
    double distance_m = 5.0;
    double frequency_hz = 28e9;
    double tx_power_dbm_per_hz = 40.0;
    double noise_dbm_per_hz = -20.0;
    double cov_ratio = 0.05; // conversion noise as a multiple of the channel noise
    double efficiency = 1.0;
    double bandwidth_hz = 1.0;
    double lateral_offset_m = 0.0;
    double tilt_deg = 0.0;

    // sampler
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    std::size_t grid_size = 200;
    unsigned workers = 0; // 0: one per hardware thread
    std::vector<std::string> baselines; // empty: scenario default
    bool oracle = true;

    // sweeps
    std::vector<double> cov_ratios{0.05, 0.5, 5.0};
    std::vector<double> distances_m{5.0, 10.0, 15.0};
    std::vector<double> offsets_m{0.0, 0.5, 1.0};
    std::vector<double> tilts_deg{0.0, 5.0, 10.0};
    MisalignmentSweep misalignment = MisalignmentSweep::Joint;
    double reference_offset_m = 1.0;
    double reference_tilt_deg = 10.0;

    // field maps
    double field_z_m = 5.0;
    double field_extent_m = 2.0;
    int field_resolution = 256;
    std::vector<int> field_modes{0, 1, 2, 3, 4};
    double aperture_m = 0.25;

    // output
    std::filesystem::path out = "results";
    std::vector<std::string> formats{"csv", "json", "svg"};

    std::vector<std::string> effective_baselines() const;
    unsigned effective_workers() const;
};

const std::vector<std::string>& scenario_names();
const std::vector<std::string>& known_baselines();

// Every recognised key, in echo order.
std::vector<std::string> config_keys();

// Sets one key from its textual value. Throws ConfigError.
void apply_setting(ScenarioConfig& config, const std::string& key, const std::string& value);

// Flat `key = value` text; '#' starts a comment.
void apply_config_text(ScenarioConfig& config, const std::string& text, const std::string& origin = "config");
void apply_config_file(ScenarioConfig& config, const std::filesystem::path& path);

// Cross-field checks that a single key cannot see.
void validate(const ScenarioConfig& config);

// Fully resolved key/value echo; feeding it back through apply_setting
// reproduces the configuration exactly.
std::vector<std::pair<std::string, std::string>> echo(const ScenarioConfig& config);

std::string format_number(double value);

} // namespace oamswipt
