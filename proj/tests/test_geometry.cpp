#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oamswipt/geometry.hpp"

using namespace oamswipt;

namespace {

constexpr double deg = std::numbers::pi / 180.0;

void check_point(const Point3<double>& p, double x, double y, double z) {
    CHECK(p.x() == doctest::Approx(x).epsilon(1e-12).scale(1));
    CHECK(p.y() == doctest::Approx(y).epsilon(1e-12).scale(1));
    CHECK(p.z() == doctest::Approx(z).epsilon(1e-12).scale(1));
}

} // namespace

TEST_CASE("transmit elements sit on the z = 0 circle") {
    const ArrayGeometry<double> g{8, 0.1};
    const auto tx = element_positions(g, Pose<double>{}, Side::Transmit);
    REQUIRE(tx.cols() == 8);
    check_point(tx.col(0), 0.1, 0, 0);
    check_point(tx.col(2), 0, 0.1, 0);
    check_point(tx.col(4), -0.1, 0, 0);
}

TEST_CASE("aligned receive array is a pure translation") {
    const ArrayGeometry<double> g{8, 0.1};
    const Pose<double> pose{5, 0, 0};
    const auto tx = element_positions(g, pose, Side::Transmit);
    const auto rx = element_positions(g, pose, Side::Receive);
    check_point(rx.col(0), 0.1, 0, 5);
    for (int m = 0; m < 8; ++m) CHECK((rx.col(m) - tx.col(m) - Point3<double>(0, 0, 5)).norm() < 1e-15);
}

TEST_CASE("tilt rotates the receive plane about the y axis") {
    const ArrayGeometry<double> g{4, 1.0};
    const Pose<double> pose{5, 1, 30 * deg};
    const auto rx = element_positions(g, pose, Side::Receive);
    // element 0 lies on the rotated x axis (cos t, 0, -sin t)
    check_point(rx.col(0), 1 + std::cos(30 * deg), 0, 5 - std::sin(30 * deg));
    // element 1 sits on the y axis, which the rotation leaves alone
    check_point(rx.col(1), 1, 1, 5);
    // every element stays in the plane normal to the tilted axis
    const Point3<double> normal(std::sin(30 * deg), 0, std::cos(30 * deg));
    for (int m = 0; m < 4; ++m) CHECK(std::abs((rx.col(m) - pose.receive_center()).dot(normal)) < 1e-12);
}

TEST_CASE("siso endpoints") {
    auto [a, b] = siso_positions(Pose<double>{5, 0, 0});
    check_point(a, 0, 0, 0);
    check_point(b, 0, 0, 5);
    std::tie(a, b) = siso_positions(Pose<double>{5, 1, 0});
    check_point(b, 1, 0, 5);
    std::tie(a, b) = siso_positions(Pose<double>{10, 0, 10 * deg});
    check_point(b, 0, 0, 10);
}

TEST_CASE("invalid poses and arrays are rejected") {
    const ArrayGeometry<double> g{8, 0.1};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(element_positions(g, Pose<double>{nan, 0, 0}, Side::Receive), InvalidInput);
    CHECK_THROWS_AS(element_positions(g, Pose<double>{5, std::numeric_limits<double>::infinity(), 0}, Side::Receive), InvalidInput);
    CHECK_THROWS_AS(element_positions(g, Pose<double>{0, 0, 0}, Side::Receive), InvalidInput);
    CHECK_THROWS_AS(element_positions(g, Pose<double>{5, -1, 0}, Side::Receive), InvalidInput);
    CHECK_THROWS_AS(element_positions(g, Pose<double>{5, 0, std::numbers::pi / 2}, Side::Receive), InvalidInput);
    CHECK_THROWS_AS(siso_positions(Pose<double>{5, nan, 0}), InvalidInput);
    CHECK_THROWS_AS(element_positions(ArrayGeometry<double>{0, 0.1}, Pose<double>{}, Side::Transmit), InvalidInput);
    CHECK_THROWS_AS(element_positions(ArrayGeometry<double>{8, -0.1}, Pose<double>{}, Side::Transmit), InvalidInput);
}

TEST_CASE("property: intra-array distances are chord lengths for any pose") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.5, 20), off(0, 2), tilt(0, 1.5), rad(0.01, 1);
    std::uniform_int_distribution<int> count(1, 16);
    for (int trial = 0; trial < 200; ++trial) {
        const ArrayGeometry<double> g{count(rng), rad(rng)};
        const Pose<double> pose{dist(rng), off(rng), tilt(rng)};
        for (Side side : {Side::Transmit, Side::Receive}) {
            const auto p = element_positions(g, pose, side);
            for (int m = 0; m < g.element_count; ++m)
                for (int n = 0; n < g.element_count; ++n) {
                    const double chord = 2 * g.radius * std::sin(std::numbers::pi * std::abs(m - n) / g.element_count);
                    CHECK((p.col(m) - p.col(n)).norm() == doctest::Approx(chord).epsilon(1e-12).scale(g.radius));
                }
        }
    }
}

TEST_CASE("property: aligned cross distances depend only on the index difference") {
    for (int n : {3, 8, 13}) {
        const ArrayGeometry<double> g{n, 0.2};
        const Pose<double> pose{3.7, 0, 0};
        const auto tx = element_positions(g, pose, Side::Transmit);
        const auto rx = element_positions(g, pose, Side::Receive);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const double d = (rx.col(a) - tx.col(b)).norm();
                const double ref = (rx.col(0) - tx.col(((b - a) % n + n) % n)).norm();
                CHECK(std::abs(d - ref) < 1e-13);
            }
    }
}
