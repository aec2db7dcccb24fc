#include "oamswipt/output.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace oamswipt {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

TraceMethod method_from_string(const std::string& s) {
    if (s == "monte-carlo") return TraceMethod::MonteCarlo;
    if (s == "lagrangian") return TraceMethod::Lagrangian;
    if (s == "envelope") return TraceMethod::Envelope;
    throw std::invalid_argument("unknown trace method '" + s + "'");
}

const char* palette(const std::string& baseline) {
    if (baseline == "oam") return "#d62728";
    if (baseline == "mimo-svd") return "#9467bd";
    if (baseline == "mimo-zf") return "#1f77b4";
    if (baseline == "siso") return "#2ca02c";
    return "#444444";
}

const char* mode_palette(std::size_t i) {
    static const char* colors[] = {"#000000", "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};
    return colors[i % 8];
}

struct Plot {
    double width = 820, height = 560;
    double left = 110, right = 200, top = 30, bottom = 70;
    double x_max = 1, y_max = 1;
    std::ostringstream body;

    double px(double x) const { return left + (width - left - right) * x / x_max; }
    double py(double y) const { return height - bottom - (height - top - bottom) * y / y_max; }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, const std::string& dash) {
        body << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (!dash.empty()) body << " stroke-dasharray=\"" << dash << "\"";
        body << " points=\"";
        for (const auto& [x, y] : pts) body << format_number(px(x)) << ',' << format_number(py(y)) << ' ';
        body << "\"/>\n";
    }

    void legend(std::size_t index, const std::string& label, const std::string& color, const std::string& dash) {
        const double y = top + 16 * double(index) + 10;
        const double x = width - right + 15;
        body << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 24 << "\" y2=\"" << y << "\" stroke=\"" << color
             << "\" stroke-width=\"1.5\"" << (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") << "/>\n";
        body << "<text x=\"" << x + 30 << "\" y=\"" << y + 4 << "\" font-size=\"11\">" << label << "</text>\n";
    }

    std::string render(const std::string& x_label, const std::string& y_label) {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" font-family=\"sans-serif\">\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        const double x0 = px(0), x1 = px(x_max), y0 = py(0), y1 = py(y_max);
        out << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
            << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 5; ++i) {
            const double xv = x_max * i / 5, yv = y_max * i / 5;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", xv);
            out << "<text x=\"" << px(xv) << "\" y=\"" << y0 + 18 << "\" font-size=\"11\" text-anchor=\"middle\">" << buf << "</text>\n";
            std::snprintf(buf, sizeof buf, "%.3g", yv);
            out << "<text x=\"" << x0 - 6 << "\" y=\"" << py(yv) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << buf << "</text>\n";
        }
        out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << height - 20 << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label
            << "</text>\n";
        out << "<text transform=\"translate(22," << (y0 + y1) / 2 << ") rotate(-90)\" font-size=\"13\" text-anchor=\"middle\">" << y_label
            << "</text>\n";
        out << body.str() << "</svg>\n";
        return out.str();
    }
};

std::string region_svg(const ResultBundle& bundle) {
    Plot plot;
    double x_max = 0, y_max = 0;
    for (const auto& c : bundle.curves) {
        x_max = std::max(x_max, c.peak_rate());
        y_max = std::max(y_max, c.max_harvested());
    }
    plot.x_max = x_max > 0 ? x_max * 1.05 : 1;
    plot.y_max = y_max > 0 ? y_max * 1.05 : 1;

    std::vector<std::string> params;
    for (const auto& c : bundle.curves)
        if (std::find(params.begin(), params.end(), c.param_value) == params.end()) params.push_back(c.param_value);
    static const char* dashes[] = {"", "6,3", "2,2", "10,3,2,3", "1,4"};

    std::size_t index = 0;
    for (const auto& c : bundle.curves) {
        // Staircase: each grid threshold q holds rate max_rate(q).
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < c.region.energy_grid.size(); ++i) pts.emplace_back(c.region.max_rate[i], c.region.energy_grid[i]);
        const auto p = std::size_t(std::find(params.begin(), params.end(), c.param_value) - params.begin());
        std::string dash = c.region.method == TraceMethod::Lagrangian ? "1,3" : dashes[p % 5];
        const std::string color = palette(c.baseline);
        plot.polyline(pts, color, dash);
        std::string label = c.baseline + " " + c.param_name + "=" + c.param_value;
        if (c.region.method == TraceMethod::Lagrangian) label += " (oracle)";
        plot.legend(index++, label, color, dash);
    }
    return plot.render("Rate (bit/s/Hz)", "Harvested power (W/Hz)");
}

std::string field_svg(const ResultBundle& bundle) {
    Plot plot;
    double x_max = 0, y_max = 0;
    for (const auto& f : bundle.fields) {
        if (!f.profile_radius_m.empty()) x_max = std::max(x_max, f.profile_radius_m.back());
        for (double v : f.profile_intensity) y_max = std::max(y_max, v);
    }
    plot.x_max = x_max > 0 ? x_max : 1;
    plot.y_max = y_max > 0 ? y_max * 1.05 : 1;
    for (std::size_t i = 0; i < bundle.fields.size(); ++i) {
        const auto& f = bundle.fields[i];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < f.profile_radius_m.size(); ++k) pts.emplace_back(f.profile_radius_m[k], f.profile_intensity[k]);
        plot.polyline(pts, mode_palette(i), "");
        plot.legend(i, "mode " + std::to_string(f.mode), mode_palette(i), "");
    }
    return plot.render("Radius (m)", "Azimuth-averaged intensity (rel. to mode 0 on axis)");
}

} // namespace

void write_file_atomic(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError(path.parent_path(), ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(tmp, std::strerror(errno));
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        if (!out) throw IoError(tmp, std::strerror(errno));
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError(path, ec.message());
    }
}

std::string curves_csv(const ResultBundle& bundle) {
    std::string out = "baseline,method,param_name,param_value,energy_w_per_hz,max_rate_bps_per_hz\n";
    for (const auto& c : bundle.curves) {
        const std::string prefix = csv_field(c.baseline) + "," + to_string(c.region.method) + "," + csv_field(c.param_name) + "," +
                                   csv_field(c.param_value) + ",";
        for (std::size_t i = 0; i < c.region.energy_grid.size(); ++i)
            out += prefix + format_number(c.region.energy_grid[i]) + "," + format_number(c.region.max_rate[i]) + "\n";
    }
    return out;
}

std::string field_csv(const ResultBundle& bundle) {
    std::string out = "mode,x_m,y_m,intensity_rel\n";
    for (const auto& map : bundle.maps) {
        const std::string mode = std::to_string(map.mode) + ",";
        for (int iy = 0; iy < map.resolution; ++iy) {
            const std::string y = format_number(map.coordinate(iy));
            for (int ix = 0; ix < map.resolution; ++ix)
                out += mode + format_number(map.coordinate(ix)) + "," + y + "," + format_number(map.intensity(iy, ix)) + "\n";
        }
    }
    return out;
}

std::string field_summary_csv(const ResultBundle& bundle) {
    std::string out = "mode,mode_order,ring_radius_m,captured_power_rel_m2,on_axis_intensity_rel\n";
    for (const auto& f : bundle.fields)
        out += std::to_string(f.mode) + "," + std::to_string(f.mode_order) + "," + format_number(f.ring_radius_m) + "," +
               format_number(f.captured_power_m2) + "," + format_number(f.on_axis_intensity) + "\n";
    return out;
}

json bundle_to_json(const ResultBundle& b) {
    json j;
    j["scenario"] = b.scenario;
    j["seed"] = b.seed;
    j["bandwidth_hz"] = b.bandwidth_hz;
    json config = json::object();
    for (const auto& [k, v] : b.config) config[k] = v;
    j["config"] = std::move(config);

    json curves = json::array();
    json summary = json::array();
    for (const auto& c : b.curves) {
        curves.push_back({{"baseline", c.baseline},
                          {"method", to_string(c.region.method)},
                          {"param_name", c.param_name},
                          {"param_value", c.param_value},
                          {"sample_count", c.region.sample_count},
                          {"seed", c.region.seed},
                          {"energy_w_per_hz", c.region.energy_grid},
                          {"max_rate_bps_per_hz", c.region.max_rate}});
        summary.push_back({{"baseline", c.baseline},
                           {"method", to_string(c.region.method)},
                           {"param_value", c.param_value},
                           {"peak_rate_bps_per_hz", c.peak_rate()},
                           {"max_harvested_w_per_hz", c.max_harvested()},
                           {"peak_throughput_bps", c.peak_rate() * b.bandwidth_hz},
                           {"max_harvested_w", c.max_harvested() * b.bandwidth_hz}});
    }
    j["curves"] = std::move(curves);

    json fields = json::array();
    for (const auto& f : b.fields)
        fields.push_back({{"mode", f.mode},
                          {"mode_order", f.mode_order},
                          {"ring_radius_m", f.ring_radius_m},
                          {"captured_power_rel_m2", f.captured_power_m2},
                          {"on_axis_intensity_rel", f.on_axis_intensity},
                          {"profile_radius_m", f.profile_radius_m},
                          {"profile_intensity_rel", f.profile_intensity}});
    j["fields"] = std::move(fields);
    j["summary"] = std::move(summary);
    return j;
}

ResultBundle bundle_from_json(const json& j) {
    ResultBundle b;
    b.scenario = j.at("scenario").get<std::string>();
    b.seed = j.at("seed").get<std::uint64_t>();
    b.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    for (const auto& [k, v] : j.at("config").items()) b.config.emplace_back(k, v.get<std::string>());
    for (const auto& c : j.at("curves")) {
        Curve curve;
        curve.baseline = c.at("baseline").get<std::string>();
        curve.param_name = c.at("param_name").get<std::string>();
        curve.param_value = c.at("param_value").get<std::string>();
        curve.region.method = method_from_string(c.at("method").get<std::string>());
        curve.region.sample_count = c.at("sample_count").get<std::uint64_t>();
        curve.region.seed = c.at("seed").get<std::uint64_t>();
        curve.region.energy_grid = c.at("energy_w_per_hz").get<std::vector<double>>();
        curve.region.max_rate = c.at("max_rate_bps_per_hz").get<std::vector<double>>();
        b.curves.push_back(std::move(curve));
    }
    for (const auto& f : j.at("fields")) {
        FieldSummary s;
        s.mode = f.at("mode").get<int>();
        s.mode_order = f.at("mode_order").get<int>();
        s.ring_radius_m = f.at("ring_radius_m").get<double>();
        s.captured_power_m2 = f.at("captured_power_rel_m2").get<double>();
        s.on_axis_intensity = f.at("on_axis_intensity_rel").get<double>();
        s.profile_radius_m = f.at("profile_radius_m").get<std::vector<double>>();
        s.profile_intensity = f.at("profile_intensity_rel").get<std::vector<double>>();
        b.fields.push_back(std::move(s));
    }
    return b;
}

std::string bundle_svg(const ResultBundle& bundle) {
    return bundle.fields.empty() ? region_svg(bundle) : field_svg(bundle);
}

std::vector<fs::path> emit_results(const ResultBundle& bundle, const std::vector<std::string>& formats, const fs::path& out_dir) {
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path p = out_dir / name;
        write_file_atomic(p, content);
        written.push_back(p);
    };
    const bool field = !bundle.fields.empty();
    for (const auto& f : formats) {
        if (f == "csv") {
            emit(bundle.scenario + ".csv", field ? field_csv(bundle) : curves_csv(bundle));
            if (field) emit(bundle.scenario + "_summary.csv", field_summary_csv(bundle));
        } else if (f == "json") {
            emit(bundle.scenario + ".json", bundle_to_json(bundle).dump(2) + "\n");
        } else if (f == "svg") {
            emit(bundle.scenario + ".svg", bundle_svg(bundle));
        } else {
            throw std::invalid_argument("unknown output format '" + f + "'");
        }
    }
    return written;
}

} // namespace oamswipt
