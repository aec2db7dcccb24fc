#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "oamswipt/channel.hpp"
#include "oamswipt/errors.hpp"
#include "oamswipt/geometry.hpp"

namespace oamswipt {

// Scalar field radiated by the transmit UCA excited with OAM mode `mode`:
// E(r) = sum_m exp(j 2 pi m l / N) / sqrt(N) * lambda / (4 pi d_m) * exp(-j 2 pi d_m / lambda).
template <typename Scalar>
std::complex<Scalar> mode_field(const Positions<Scalar>& tx, const Carrier<Scalar>& carrier, int mode, const Point3<Scalar>& at) {
    const Eigen::Index n = tx.cols();
    const Scalar norm = Scalar(1) / std::sqrt(Scalar(n));
    std::complex<Scalar> e = 0;
    for (Eigen::Index m = 0; m < n; ++m) {
        const Scalar phase = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar((m * mode) % n) / Scalar(n);
        e += std::polar(norm, phase) * los_gain<Scalar>((at - tx.col(m)).norm(), carrier);
    }
    return e;
}

template <typename Scalar>
Scalar mode_intensity(const ArrayGeometry<Scalar>& geom, const Carrier<Scalar>& carrier, int mode, const Point3<Scalar>& at) {
    return std::norm(mode_field(element_positions(geom, Pose<Scalar>{}, Side::Transmit), carrier, mode, at));
}

// |E|^2 on a square grid in the plane z = plane_distance, relative to the
// mode-0 on-axis intensity in that plane. Row index is y, column index is x;
// both run over [-extent, extent].
template <typename Scalar = double>
struct FieldMap {
    int mode = 0;
    Scalar plane_distance = 0;
    Scalar extent = 0;
    int resolution = 0;
    Scalar reference_intensity = 0; // absolute mode-0 on-axis |E|^2
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> intensity;

    Scalar spacing() const { return Scalar(2) * extent / Scalar(resolution - 1); }
    Scalar coordinate(int i) const { return -extent + spacing() * Scalar(i); }
};

template <typename Scalar>
void check_field_request(const ArrayGeometry<Scalar>& geom, int mode, Scalar z) {
    geom.validate();
    if (!std::isfinite(z) || !(z > 0)) throw InvalidInput("observation plane distance must be positive");
    if (mode < 0 || mode >= geom.element_count) throw InvalidInput("mode index must lie in [0, N)");
}

template <typename Scalar>
Scalar on_axis_intensity(const ArrayGeometry<Scalar>& geom, const Carrier<Scalar>& carrier, int mode, Scalar z) {
    check_field_request(geom, mode, z);
    return mode_intensity(geom, carrier, mode, Point3<Scalar>(0, 0, z));
}

template <typename Scalar>
FieldMap<Scalar> compute_field(const ArrayGeometry<Scalar>& geom, const Carrier<Scalar>& carrier, int mode, Scalar z,
                               Scalar extent, int resolution) {
    check_field_request(geom, mode, z);
    if (resolution < 2) throw InvalidInput("field map resolution must be at least 2");
    if (!std::isfinite(extent) || !(extent > 0)) throw InvalidInput("field map extent must be positive");

    FieldMap<Scalar> map{mode, z, extent, resolution, on_axis_intensity(geom, carrier, 0, z), {}};
    const Positions<Scalar> tx = element_positions(geom, Pose<Scalar>{}, Side::Transmit);
    map.intensity.resize(resolution, resolution);
    for (int iy = 0; iy < resolution; ++iy)
        for (int ix = 0; ix < resolution; ++ix)
            map.intensity(iy, ix) = std::norm(mode_field(tx, carrier, mode, Point3<Scalar>(map.coordinate(ix), map.coordinate(iy), z))) /
                                    map.reference_intensity;
    return map;
}

template <typename Scalar = double>
struct RadialProfile {
    std::vector<Scalar> radius;    // bin centers
    std::vector<Scalar> intensity; // mean relative intensity per bin
};

// Azimuth-averaged intensity from the map pixels, in bins one pixel wide out
// to the inscribed radius `extent`.
template <typename Scalar>
RadialProfile<Scalar> radial_profile(const FieldMap<Scalar>& map) {
    const Scalar width = map.spacing();
    const auto bins = std::size_t(map.extent / width);
    std::vector<Scalar> sum(bins, 0);
    std::vector<std::size_t> count(bins, 0);
    for (int iy = 0; iy < map.resolution; ++iy)
        for (int ix = 0; ix < map.resolution; ++ix) {
            const Scalar r = std::hypot(map.coordinate(ix), map.coordinate(iy));
            const auto b = std::size_t(r / width);
            if (b >= bins) continue;
            sum[b] += map.intensity(iy, ix);
            ++count[b];
        }
    RadialProfile<Scalar> out;
    for (std::size_t b = 0; b < bins; ++b) {
        if (count[b] == 0) continue;
        out.radius.push_back((Scalar(b) + Scalar(0.5)) * width);
        out.intensity.push_back(sum[b] / Scalar(count[b]));
    }
    return out;
}

template <typename Scalar>
Scalar ring_radius(const FieldMap<Scalar>& map) {
    const auto profile = radial_profile(map);
    if (profile.radius.empty()) throw InvalidInput("field map too coarse for a radial profile");
    std::size_t best = 0;
    for (std::size_t i = 1; i < profile.intensity.size(); ++i)
        if (profile.intensity[i] > profile.intensity[best]) best = i;
    return profile.radius[best];
}

// Relative intensity integrated over the centered disk of radius `aperture` (m^2).
template <typename Scalar>
Scalar captured_power(const FieldMap<Scalar>& map, Scalar aperture) {
    if (!(aperture > 0)) throw InvalidInput("capture aperture radius must be positive");
    Scalar total = 0;
    for (int iy = 0; iy < map.resolution; ++iy)
        for (int ix = 0; ix < map.resolution; ++ix)
            if (std::hypot(map.coordinate(ix), map.coordinate(iy)) <= aperture) total += map.intensity(iy, ix);
    return total * map.spacing() * map.spacing();
}

// Coefficient of variation of the intensity around a ring of the given radius.
template <typename Scalar>
Scalar azimuthal_variation(const ArrayGeometry<Scalar>& geom, const Carrier<Scalar>& carrier, int mode, Scalar z,
                           Scalar radius, int samples = 360) {
    check_field_request(geom, mode, z);
    const Positions<Scalar> tx = element_positions(geom, Pose<Scalar>{}, Side::Transmit);
    std::vector<Scalar> values(samples);
    Scalar mean = 0;
    for (int i = 0; i < samples; ++i) {
        const Scalar a = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(i) / Scalar(samples);
        values[i] = std::norm(mode_field(tx, carrier, mode, Point3<Scalar>(radius * std::cos(a), radius * std::sin(a), z)));
        mean += values[i];
    }
    mean /= Scalar(samples);
    Scalar var = 0;
    for (Scalar v : values) var += (v - mean) * (v - mean);
    return std::sqrt(var / Scalar(samples)) / mean;
}

} // namespace oamswipt
