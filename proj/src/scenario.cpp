#include "oamswipt/scenario.hpp"

#include <algorithm>
#include <numbers>
#include <set>

namespace oamswipt {

namespace {

constexpr double deg = std::numbers::pi / 180.0;

struct LinkCase {
    std::string param_name;
    std::string param_value;
    Pose<double> pose;
    double cov_ratio = 0;
};

template <typename Evaluator>
Curve monte_carlo_curve(const std::string& baseline, const LinkCase& c, const Evaluator& evaluate, Eigen::Index dim,
                        const MonteCarloOptions& opt) {
    auto front = std::make_shared<const ParetoFront<double>>(sample_split_points<double>(evaluate, dim, opt));
    const double q_max = evaluate(SplitVector<double>::Zero(dim)).harvested;
    Curve curve{baseline, c.param_name, c.param_value, front->region(uniform_grid(q_max, opt.grid_size), TraceMethod::MonteCarlo, opt.samples, opt.seed), front};
    return curve;
}

auto stream_evaluator(const StreamSet<double>& s) {
    return [&s](const Eigen::Ref<const RealVector<double>>& rho) { return s.evaluate(rho); };
}

void add_link_curves(ResultBundle& bundle, const ScenarioConfig& cfg, const LinkCase& c) {
    const ArrayGeometry<double> geom{cfg.elements, cfg.radius_m};
    const Carrier<double> carrier{cfg.frequency_hz};
    const double noise = dbm_to_watts(cfg.noise_dbm_per_hz);
    const auto budget = LinkBudget<double>::equal_split(dbm_to_watts(cfg.tx_power_dbm_per_hz), cfg.elements, noise,
                                                        c.cov_ratio * noise, cfg.efficiency, cfg.bandwidth_hz);
    const auto h = uca_channel(geom, c.pose, carrier);
    const MonteCarloOptions opt{cfg.samples, cfg.seed, cfg.grid_size, cfg.effective_workers()};

    for (const auto& baseline : cfg.effective_baselines()) {
        if (baseline == "oam") {
            const bool aligned = c.pose.aligned();
            const auto streams = aligned ? aligned_oam_streams(h, budget) : oam_streams(make_mode_channel(h, Transceiver::Oam), budget);
            bundle.curves.push_back(monte_carlo_curve(baseline, c, stream_evaluator(streams), streams.size(), opt));
            if (aligned && cfg.oracle) {
                auto trace = trace_lagrangian(streams, default_multiplier_grid(streams), 1024, cfg.grid_size);
                bundle.curves.push_back({baseline, c.param_name, c.param_value, std::move(trace.region), nullptr});
            }
        } else if (baseline == "mimo-svd") {
            const auto streams = mimo_svd_streams(h, budget);
            bundle.curves.push_back(monte_carlo_curve(baseline, c, stream_evaluator(streams), streams.size(), opt));
        } else if (baseline == "mimo-zf") {
            const auto zf = zero_forcing_model(h, budget);
            auto evaluate = [&zf](const Eigen::Ref<const RealVector<double>>& rho) { return zf.evaluate(rho(0)); };
            bundle.curves.push_back(monte_carlo_curve(baseline, c, evaluate, 1, opt));
        } else if (baseline == "siso") {
            const auto streams = siso_streams(siso_gain(c.pose, carrier), budget);
            bundle.curves.push_back(monte_carlo_curve(baseline, c, stream_evaluator(streams), 1, opt));
        } else {
            throw InvalidInput("unknown baseline '" + baseline + "'");
        }
    }
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Pose<double> base_pose(const ScenarioConfig& cfg, double distance) {
    return {distance, cfg.lateral_offset_m, cfg.tilt_deg * deg};
}

void add_field_maps(ResultBundle& bundle, const ScenarioConfig& cfg) {
    const ArrayGeometry<double> geom{cfg.elements, cfg.radius_m};
    const Carrier<double> carrier{cfg.frequency_hz};
    const double reference = on_axis_intensity(geom, carrier, 0, cfg.field_z_m);
    for (int mode : cfg.field_modes) {
        auto map = compute_field(geom, carrier, mode, cfg.field_z_m, cfg.field_extent_m, cfg.field_resolution);
        const auto profile = radial_profile(map);
        FieldSummary s{mode,
                       mode_order(mode, cfg.elements),
                       ring_radius(map),
                       captured_power(map, cfg.aperture_m),
                       on_axis_intensity(geom, carrier, mode, cfg.field_z_m) / reference,
                       profile.radius,
                       profile.intensity};
        bundle.fields.push_back(std::move(s));
        bundle.maps.push_back(std::move(map));
    }
}

} // namespace

double Curve::rate_at(double threshold) const {
    if (front) return front->max_rate(threshold);
    const auto& g = region.energy_grid;
    const auto it = std::lower_bound(g.begin(), g.end(), threshold);
    return it == g.end() ? 0.0 : region.max_rate[std::size_t(it - g.begin())];
}

const Curve* ResultBundle::find(const std::string& baseline, const std::string& param_value, TraceMethod method) const {
    for (const auto& c : curves)
        if (c.baseline == baseline && c.param_value == param_value && c.region.method == method) return &c;
    return nullptr;
}

std::string misalignment_label(double offset_m, double tilt_deg) {
    return format_number(offset_m) + "/" + format_number(tilt_deg);
}

std::vector<std::pair<double, double>> misalignment_cases(const ScenarioConfig& cfg) {
    std::set<std::pair<double, double>> cases;
    if (cfg.misalignment == MisalignmentSweep::Joint) {
        for (std::size_t i = 0; i < cfg.offsets_m.size() && i < cfg.tilts_deg.size(); ++i) cases.insert({cfg.offsets_m[i], cfg.tilts_deg[i]});
    } else {
        for (double o : cfg.offsets_m) cases.insert({o, 0.0});
        for (double t : cfg.tilts_deg) cases.insert({0.0, t});
    }
    cases.insert({cfg.reference_offset_m, cfg.reference_tilt_deg});
    return {cases.begin(), cases.end()};
}

ResultBundle run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    ResultBundle bundle;
    bundle.scenario = cfg.scenario;
    bundle.seed = cfg.seed;
    bundle.bandwidth_hz = cfg.bandwidth_hz;
    bundle.config = echo(cfg);

    if (cfg.scenario == "fig2") {
        for (double cov : sorted_unique(cfg.cov_ratios))
            add_link_curves(bundle, cfg, {"cov_ratio", format_number(cov), base_pose(cfg, cfg.distance_m), cov});
    } else if (cfg.scenario == "fig3") {
        for (double d : sorted_unique(cfg.distances_m))
            add_link_curves(bundle, cfg, {"distance_m", format_number(d), base_pose(cfg, d), cfg.cov_ratio});
    } else if (cfg.scenario == "fig5") {
        for (const auto& [offset, tilt] : misalignment_cases(cfg))
            add_link_curves(bundle, cfg,
                            {"dx_m/theta_x_deg", misalignment_label(offset, tilt), Pose<double>{cfg.distance_m, offset, tilt * deg}, cfg.cov_ratio});
    } else if (cfg.scenario == "field") {
        add_field_maps(bundle, cfg);
    } else if (cfg.scenario == "custom") {
        add_link_curves(bundle, cfg, {"distance_m", format_number(cfg.distance_m), base_pose(cfg, cfg.distance_m), cfg.cov_ratio});
    } else {
        throw ConfigError("scenario", "unknown scenario '" + cfg.scenario + "'");
    }
    return bundle;
}

} // namespace oamswipt
