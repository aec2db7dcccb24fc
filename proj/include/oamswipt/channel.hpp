#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "oamswipt/errors.hpp"
#include "oamswipt/geometry.hpp"

namespace oamswipt {

template <typename Scalar>
constexpr Scalar speed_of_light = Scalar(299792458);

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
class Carrier {
public:
    explicit Carrier(Scalar frequency_hz) : frequency_(frequency_hz) {
        if (!std::isfinite(frequency_hz) || !(frequency_hz > 0)) throw InvalidInput("carrier frequency must be positive");
    }

    Scalar frequency() const { return frequency_; }
    Scalar wavelength() const { return speed_of_light<Scalar> / frequency_; }
    Scalar wavenumber() const { return Scalar(2) * std::numbers::pi_v<Scalar> / wavelength(); }

private:
    Scalar frequency_;
};

// Free-space amplitude gain between two isotropic points:
// (lambda / (4 pi d)) * exp(-j 2 pi d / lambda).
template <typename Scalar>
std::complex<Scalar> los_gain(Scalar distance, const Carrier<Scalar>& carrier) {
    if (!std::isfinite(distance) || !(distance > 0)) throw InvalidInput("propagation distance must be positive");
    const Scalar lambda = carrier.wavelength();
    const Scalar magnitude = lambda / (Scalar(4) * std::numbers::pi_v<Scalar> * distance);
    return std::polar(magnitude, -carrier.wavenumber() * distance);
}

template <typename Scalar = double>
struct ChannelMatrix {
    ComplexMatrix<Scalar> entries; // rows: receive elements, cols: transmit elements
    Scalar wavelength = Scalar(0);

    Eigen::Index rx_count() const { return entries.rows(); }
    Eigen::Index tx_count() const { return entries.cols(); }
};

template <typename Scalar>
ChannelMatrix<Scalar> build_channel(const Positions<Scalar>& tx, const Positions<Scalar>& rx, const Carrier<Scalar>& carrier) {
    if (tx.cols() == 0 || rx.cols() == 0) throw InvalidInput("channel needs at least one transmit and one receive point");
    ChannelMatrix<Scalar> h{ComplexMatrix<Scalar>(rx.cols(), tx.cols()), carrier.wavelength()};
    for (Eigen::Index m = 0; m < tx.cols(); ++m) {
        for (Eigen::Index n = 0; n < rx.cols(); ++n) {
            const Scalar d = (rx.col(n) - tx.col(m)).norm();
            if (!(d > 0)) throw DegenerateGeometry("transmit and receive points coincide");
            h.entries(n, m) = los_gain(d, carrier);
        }
    }
    return h;
}

// Convenience: UCA-to-UCA channel for a given receive pose.
template <typename Scalar>
ChannelMatrix<Scalar> uca_channel(const ArrayGeometry<Scalar>& geom, const Pose<Scalar>& pose, const Carrier<Scalar>& carrier) {
    return build_channel(element_positions(geom, pose, Side::Transmit), element_positions(geom, pose, Side::Receive), carrier);
}

template <typename Scalar>
std::complex<Scalar> siso_gain(const Pose<Scalar>& pose, const Carrier<Scalar>& carrier) {
    const auto [tx, rx] = siso_positions(pose);
    return los_gain<Scalar>((rx - tx).norm(), carrier);
}

inline int mode_order(int mode, int element_count) {
    const int l = ((mode % element_count) + element_count) % element_count;
    return std::min(l, element_count - l);
}

// Largest deviation of H from the circulant matrix generated by its first row,
// relative to the largest entry magnitude.
template <typename Scalar>
Scalar circulant_mismatch(const ComplexMatrix<Scalar>& h) {
    if (h.rows() != h.cols() || h.rows() == 0) return std::numeric_limits<Scalar>::infinity();
    const Eigen::Index n = h.rows();
    const Scalar scale = h.cwiseAbs().maxCoeff();
    if (scale == 0) return Scalar(0);
    Scalar worst = 0;
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            worst = std::max(worst, std::abs(h(r, c) - h(0, (c - r + n) % n)));
    return worst / scale;
}

template <typename Scalar>
constexpr Scalar circulant_tolerance = Scalar(1e-9);

// Eigenvalues of a circulant channel ordered by OAM mode l = 0..N-1. For first
// row c these are sum_k c_k exp(+j 2 pi l k / N), i.e. the diagonal of
// F^H H F with F_{ml} = exp(j 2 pi m l / N) / sqrt(N).
template <typename Scalar>
ComplexVector<Scalar> circulant_mode_gains(const ChannelMatrix<Scalar>& h) {
    const auto& e = h.entries;
    if (e.rows() != e.cols()) throw StructureViolation("circulant mode gains need a square channel");
    const Scalar mismatch = circulant_mismatch<Scalar>(e);
    if (!(mismatch < circulant_tolerance<Scalar>))
        throw StructureViolation("channel is not circulant (relative mismatch " + std::to_string(double(mismatch)) + ")");
    const Eigen::Index n = e.rows();
    ComplexVector<Scalar> gains(n);
    for (Eigen::Index l = 0; l < n; ++l) {
        std::complex<Scalar> acc = 0;
        for (Eigen::Index k = 0; k < n; ++k)
            acc += e(0, k) * std::polar(Scalar(1), Scalar(2) * std::numbers::pi_v<Scalar> * Scalar((l * k) % n) / Scalar(n));
        gains(l) = acc;
    }
    return gains;
}

} // namespace oamswipt
