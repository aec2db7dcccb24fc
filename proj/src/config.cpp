#include "oamswipt/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace oamswipt {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0;
    const auto s = trim(text);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw ConfigError(key, "expected a number, got '" + text + "'");
    if (!std::isfinite(v)) throw ConfigError(key, "value must be finite");
    return v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
    Int v = 0;
    const auto s = trim(text);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw ConfigError(key, "expected an integer, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const auto s = trim(text);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(key, "expected true or false, got '" + text + "'");
}

std::vector<double> parse_doubles(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError(key, "list must not be empty");
    return out;
}

void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) throw ConfigError(key, message);
}

template <typename T>
std::string join(const std::vector<T>& values, const std::function<std::string(const T&)>& fmt) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + fmt(values[i]);
    return out;
}

struct Key {
    std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

std::string fmt_double(const double& v) { return format_number(v); }

// Keys in echo order.
const std::vector<std::pair<std::string, Key>>& key_table() {
    static const std::vector<std::pair<std::string, Key>> table = [] {
        std::vector<std::pair<std::string, Key>> t;
        auto number = [&t](const std::string& name, double ScenarioConfig::*field, std::function<bool(double)> ok, std::string rule) {
            t.push_back({name, {[=](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                    const double x = parse_double(k, v);
                                    require(ok(x), k, rule);
                                    c.*field = x;
                                },
                                [=](const ScenarioConfig& c) { return format_number(c.*field); }}});
        };
        auto numbers = [&t](const std::string& name, std::vector<double> ScenarioConfig::*field, std::function<bool(double)> ok,
                            std::string rule) {
            t.push_back({name, {[=](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                    auto xs = parse_doubles(k, v);
                                    for (double x : xs) require(ok(x), k, rule);
                                    c.*field = std::move(xs);
                                },
                                [=](const ScenarioConfig& c) { return join<double>(c.*field, fmt_double); }}});
        };
        auto positive = [](double x) { return x > 0; };
        auto non_negative = [](double x) { return x >= 0; };
        auto any = [](double) { return true; };
        auto tilt_ok = [](double x) { return x >= 0 && x < 90; };

        t.push_back({"scenario", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                      const auto s = trim(v);
                                      const auto& names = scenario_names();
                                      require(std::find(names.begin(), names.end(), s) != names.end(), k, "unknown scenario '" + s + "'");
                                      c.scenario = s;
                                  },
                                  [](const ScenarioConfig& c) { return c.scenario; }}});
        t.push_back({"elements", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                      const int n = parse_int<int>(k, v);
                                      require(n >= 1 && n <= 4096, k, "must lie in [1, 4096]");
                                      c.elements = n;
                                  },
                                  [](const ScenarioConfig& c) { return std::to_string(c.elements); }}});
        number("radius_m", &ScenarioConfig::radius_m, positive, "must be positive");
        number("distance_m", &ScenarioConfig::distance_m, positive, "must be positive");
        number("frequency_hz", &ScenarioConfig::frequency_hz, positive, "must be positive");
        number("tx_power_dbm_per_hz", &ScenarioConfig::tx_power_dbm_per_hz, any, "");
        number("noise_dbm_per_hz", &ScenarioConfig::noise_dbm_per_hz, any, "");
        number("cov_ratio", &ScenarioConfig::cov_ratio, non_negative, "must be non-negative");
        number("efficiency", &ScenarioConfig::efficiency, [](double x) { return x > 0 && x <= 1; }, "must lie in (0, 1]");
        number("bandwidth_hz", &ScenarioConfig::bandwidth_hz, positive, "must be positive");
        number("lateral_offset_m", &ScenarioConfig::lateral_offset_m, non_negative, "must be non-negative");
        number("tilt_deg", &ScenarioConfig::tilt_deg, tilt_ok, "must lie in [0, 90)");
        t.push_back({"samples", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                     const auto n = parse_int<std::uint64_t>(k, v);
                                     require(n >= 1, k, "must be at least 1");
                                     c.samples = n;
                                 },
                                 [](const ScenarioConfig& c) { return std::to_string(c.samples); }}});
        t.push_back({"seed", {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.seed = parse_int<std::uint64_t>(k, v); },
                              [](const ScenarioConfig& c) { return std::to_string(c.seed); }}});
        t.push_back({"grid_size", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                       const auto n = parse_int<std::size_t>(k, v);
                                       require(n >= 2, k, "must be at least 2");
                                       c.grid_size = n;
                                   },
                                   [](const ScenarioConfig& c) { return std::to_string(c.grid_size); }}});
        t.push_back({"workers", {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.workers = parse_int<unsigned>(k, v); },
                                 [](const ScenarioConfig& c) { return std::to_string(c.workers); }}});
        t.push_back({"baselines", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                       auto items = split_list(v);
                                       const auto& known = known_baselines();
                                       for (const auto& b : items)
                                           require(std::find(known.begin(), known.end(), b) != known.end(), k, "unknown baseline '" + b + "'");
                                       c.baselines = std::move(items);
                                   },
                                   [](const ScenarioConfig& c) {
                                       return join<std::string>(c.baselines, [](const std::string& s) { return s; });
                                   }}});
        t.push_back({"oracle", {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.oracle = parse_bool(k, v); },
                                [](const ScenarioConfig& c) { return std::string(c.oracle ? "true" : "false"); }}});
        numbers("cov_ratios", &ScenarioConfig::cov_ratios, non_negative, "entries must be non-negative");
        numbers("distances_m", &ScenarioConfig::distances_m, positive, "entries must be positive");
        numbers("offsets_m", &ScenarioConfig::offsets_m, non_negative, "entries must be non-negative");
        numbers("tilts_deg", &ScenarioConfig::tilts_deg, tilt_ok, "entries must lie in [0, 90)");
        t.push_back({"misalignment", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                          const auto s = trim(v);
                                          if (s == "joint") c.misalignment = MisalignmentSweep::Joint;
                                          else if (s == "separate") c.misalignment = MisalignmentSweep::Separate;
                                          else throw ConfigError(k, "expected joint or separate, got '" + s + "'");
                                      },
                                      [](const ScenarioConfig& c) {
                                          return std::string(c.misalignment == MisalignmentSweep::Joint ? "joint" : "separate");
                                      }}});
        number("reference_offset_m", &ScenarioConfig::reference_offset_m, non_negative, "must be non-negative");
        number("reference_tilt_deg", &ScenarioConfig::reference_tilt_deg, tilt_ok, "must lie in [0, 90)");
        number("field_z_m", &ScenarioConfig::field_z_m, positive, "must be positive");
        number("field_extent_m", &ScenarioConfig::field_extent_m, positive, "must be positive");
        t.push_back({"field_resolution", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                              const int n = parse_int<int>(k, v);
                                              require(n >= 2 && n <= 8192, k, "must lie in [2, 8192]");
                                              c.field_resolution = n;
                                          },
                                          [](const ScenarioConfig& c) { return std::to_string(c.field_resolution); }}});
        t.push_back({"field_modes", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                         std::vector<int> modes;
                                         for (const auto& item : split_list(v)) {
                                             const int m = parse_int<int>(k, item);
                                             require(m >= 0, k, "modes must be non-negative");
                                             modes.push_back(m);
                                         }
                                         require(!modes.empty(), k, "list must not be empty");
                                         c.field_modes = std::move(modes);
                                     },
                                     [](const ScenarioConfig& c) {
                                         return join<int>(c.field_modes, [](const int& m) { return std::to_string(m); });
                                     }}});
        number("aperture_m", &ScenarioConfig::aperture_m, positive, "must be positive");
        t.push_back({"out", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                 const auto s = trim(v);
                                 require(!s.empty(), k, "must not be empty");
                                 c.out = s;
                             },
                             [](const ScenarioConfig& c) { return c.out.generic_string(); }}});
        t.push_back({"format", {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                                    auto items = split_list(v);
                                    require(!items.empty(), k, "list must not be empty");
                                    for (const auto& f : items) require(f == "csv" || f == "json" || f == "svg", k, "unknown format '" + f + "'");
                                    c.formats = std::move(items);
                                },
                                [](const ScenarioConfig& c) {
                                    return join<std::string>(c.formats, [](const std::string& s) { return s; });
                                }}});
        return t;
    }();
    return table;
}

const Key& find_key(const std::string& key) {
    for (const auto& [name, k] : key_table())
        if (name == key) return k;
    throw ConfigError(key, "unknown key");
}

} // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"fig2", "fig3", "fig5", "field", "custom"};
    return names;
}

const std::vector<std::string>& known_baselines() {
    static const std::vector<std::string> names{"oam", "mimo-svd", "mimo-zf", "siso"};
    return names;
}

std::vector<std::string> ScenarioConfig::effective_baselines() const {
    if (!baselines.empty()) return baselines;
    if (scenario == "fig5") return {"oam", "siso"};
    return known_baselines();
}

unsigned ScenarioConfig::effective_workers() const {
    if (workers > 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [name, k] : key_table()) keys.push_back(name);
    return keys;
}

void apply_setting(ScenarioConfig& config, const std::string& key, const std::string& value) {
    find_key(key).set(config, key, value);
}

void apply_config_text(ScenarioConfig& config, const std::string& text, const std::string& origin) {
    std::stringstream ss(text);
    int line_no = 0;
    for (std::string line; std::getline(ss, line);) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        try {
            apply_setting(config, key, trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(where + ":" + e.key(), std::string(e.what()).substr(e.key().size() + 2));
        }
    }
}

void apply_config_file(ScenarioConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(config, buf.str(), path.string());
}

void validate(const ScenarioConfig& c) {
    if (c.misalignment == MisalignmentSweep::Joint)
        require(c.offsets_m.size() == c.tilts_deg.size(), "offsets_m", "joint misalignment sweep needs as many offsets as tilts");
    if (c.scenario == "field")
        for (int m : c.field_modes) require(m < c.elements, "field_modes", "mode " + std::to_string(m) + " is not below elements");
}

std::vector<std::pair<std::string, std::string>> echo(const ScenarioConfig& config) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [name, k] : key_table()) out.emplace_back(name, k.get(config));
    return out;
}

} // namespace oamswipt
