#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Dense>

#include "oamswipt/errors.hpp"

namespace oamswipt {

template <typename Scalar>
using Point3 = Eigen::Matrix<Scalar, 3, 1>;

// One column per element.
template <typename Scalar>
using Positions = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

enum class Side { Transmit, Receive };

// Uniform circular array: `element_count` isotropic elements on a circle of
// `radius` meters, element m at angle 2*pi*m/N.
template <typename Scalar = double>
struct ArrayGeometry {
    int element_count = 8;
    Scalar radius = Scalar(0.1);

    void validate() const {
        if (element_count < 1) throw InvalidInput("array needs at least one element");
        if (!std::isfinite(radius) || !(radius > 0)) throw InvalidInput("array radius must be positive and finite");
    }

    Scalar angle(int m) const { return Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(m) / Scalar(element_count); }
};

// Placement of the receive array relative to the transmit array, which sits in
// the z = 0 plane centered on the origin. The receive center is at
// (lateral_offset, 0, axial_distance) and its normal is the z-axis tilted by
// `tilt` radians about the y-axis.
template <typename Scalar = double>
struct Pose {
    Scalar axial_distance = Scalar(5);
    Scalar lateral_offset = Scalar(0);
    Scalar tilt = Scalar(0);

    void validate() const {
        if (!std::isfinite(axial_distance) || !std::isfinite(lateral_offset) || !std::isfinite(tilt))
            throw InvalidInput("pose parameters must be finite");
        if (!(axial_distance > 0)) throw InvalidInput("axial distance must be positive");
        if (lateral_offset < 0) throw InvalidInput("lateral offset must be non-negative");
        if (tilt < 0 || tilt >= std::numbers::pi_v<Scalar> / 2) throw InvalidInput("tilt must lie in [0, pi/2)");
    }

    bool aligned() const { return lateral_offset == 0 && tilt == 0; }

    Point3<Scalar> receive_center() const { return {lateral_offset, Scalar(0), axial_distance}; }

    Eigen::Matrix<Scalar, 3, 3> receive_rotation() const {
        return Eigen::AngleAxis<Scalar>(tilt, Point3<Scalar>::UnitY()).toRotationMatrix();
    }
};

template <typename Scalar>
Positions<Scalar> element_positions(const ArrayGeometry<Scalar>& geom, const Pose<Scalar>& pose, Side side) {
    geom.validate();
    pose.validate();
    Positions<Scalar> local(3, geom.element_count);
    for (int m = 0; m < geom.element_count; ++m) {
        const Scalar a = geom.angle(m);
        local.col(m) << geom.radius * std::cos(a), geom.radius * std::sin(a), Scalar(0);
    }
    if (side == Side::Transmit) return local;
    Positions<Scalar> placed = pose.receive_rotation() * local;
    placed.colwise() += pose.receive_center();
    return placed;
}

// SISO reference link: transmitter at the origin, receiver at the receive
// array's center. Tilt does not move the center.
template <typename Scalar>
std::pair<Point3<Scalar>, Point3<Scalar>> siso_positions(const Pose<Scalar>& pose) {
    pose.validate();
    return {Point3<Scalar>::Zero(), pose.receive_center()};
}

} // namespace oamswipt
