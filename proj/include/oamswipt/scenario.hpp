#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "oamswipt/config.hpp"
#include "oamswipt/field_map.hpp"
#include "oamswipt/re_region.hpp"

namespace oamswipt {

// One rate-energy curve of a scenario, e.g. OAM at sigma_cov^2 = 0.5 sigma^2.
struct Curve {
    std::string baseline;
    std::string param_name;
    std::string param_value;
    RERegion<double> region;
    // Full sample cloud behind a Monte Carlo region, for evaluating the
    // envelope at thresholds off the region's own grid. Not serialized.
    std::shared_ptr<const ParetoFront<double>> front;

    double peak_rate() const { return region.max_rate.empty() ? 0.0 : region.max_rate.front(); }
    double max_harvested() const { return region.energy_grid.empty() ? 0.0 : region.energy_grid.back(); }

    // Envelope at an arbitrary threshold: exact from the sample cloud when
    // present, otherwise the grid value at the first threshold >= q.
    double rate_at(double threshold) const;

    bool operator==(const Curve& o) const {
        return baseline == o.baseline && param_name == o.param_name && param_value == o.param_value && region == o.region;
    }
};

struct FieldSummary {
    int mode = 0;
    int mode_order = 0;
    double ring_radius_m = 0;
    double captured_power_m2 = 0; // relative intensity integrated over the capture disk
    double on_axis_intensity = 0; // relative to mode 0 on axis
    std::vector<double> profile_radius_m;
    std::vector<double> profile_intensity;

    friend bool operator==(const FieldSummary&, const FieldSummary&) = default;
};

struct ResultBundle {
    std::string scenario;
    std::uint64_t seed = 0;
    double bandwidth_hz = 1;
    std::vector<std::pair<std::string, std::string>> config; // resolved echo
    std::vector<Curve> curves;
    std::vector<FieldSummary> fields;
    std::vector<FieldMap<double>> maps; // parallel to `fields`; CSV only

    const Curve* find(const std::string& baseline, const std::string& param_value,
                      TraceMethod method = TraceMethod::MonteCarlo) const;

    bool operator==(const ResultBundle& o) const {
        return scenario == o.scenario && seed == o.seed && bandwidth_hz == o.bandwidth_hz && config == o.config &&
               curves == o.curves && fields == o.fields;
    }
};

// Misalignment cases of the fig5 scenario as (lateral offset m, tilt deg),
// sorted, with the reference case included.
std::vector<std::pair<double, double>> misalignment_cases(const ScenarioConfig& config);

std::string misalignment_label(double offset_m, double tilt_deg);

ResultBundle run_scenario(const ScenarioConfig& config);

} // namespace oamswipt
