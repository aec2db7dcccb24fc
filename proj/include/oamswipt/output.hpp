#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "oamswipt/scenario.hpp"

namespace oamswipt {

class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& cause)
        : std::runtime_error(path.string() + ": " + cause), path_(path) {}
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// baseline,method,param_name,param_value,energy_w_per_hz,max_rate_bps_per_hz
std::string curves_csv(const ResultBundle& bundle);

// mode,x_m,y_m,intensity_rel
std::string field_csv(const ResultBundle& bundle);

// mode,mode_order,ring_radius_m,captured_power_rel_m2,on_axis_intensity_rel
std::string field_summary_csv(const ResultBundle& bundle);

nlohmann::ordered_json bundle_to_json(const ResultBundle& bundle);
ResultBundle bundle_from_json(const nlohmann::ordered_json& j);

// Rate (x) against harvested power (y), one polyline per curve. For field
// bundles: azimuth-averaged intensity against radius, one polyline per mode.
std::string bundle_svg(const ResultBundle& bundle);

// Writes <out>/<scenario>.{csv,json,svg} (plus <scenario>_summary.csv for
// field maps) for the requested formats and returns the written paths.
std::vector<std::filesystem::path> emit_results(const ResultBundle& bundle, const std::vector<std::string>& formats,
                                                const std::filesystem::path& out_dir);

} // namespace oamswipt
