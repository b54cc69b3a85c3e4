#include "uavplan/channel.hpp"

#include "uavplan/errors.hpp"

#include "support.hpp"

#include <doctest.h>

#include <Eigen/Core>

#include <cmath>
#include <vector>

using namespace uavplan;
using testsupport::rel_err;
namespace oracle = testsupport::oracle;

namespace {

SampledPath hover_path(const Eigen::Vector3d& at, int n, double t) {
    SampledPath path;
    path.positions.assign(static_cast<std::size_t>(n), at);
    path.delta_tbar = 1.0 / (n - 1);
    path.mission_time = t;
    return path;
}

} // namespace

TEST_SUITE("channel") {

TEST_CASE("decibel conversion") {
    CHECK(ChannelParams::snr_db_to_linear(0.0) == 1.0);
    CHECK(ChannelParams::snr_db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(rel_err(ChannelParams::snr_db_to_linear(52.5), oracle::kReferenceSnrLinear) < 1e-12);
}

TEST_CASE("elevation angle spans -90 to 90 degrees") {
    const Eigen::Vector3d node(10.0, 10.0, 0.0);
    CHECK(elevation_angle(node + Eigen::Vector3d(0, 0, 100), node) ==
          doctest::Approx(90.0).epsilon(1e-12));
    CHECK(elevation_angle(node + Eigen::Vector3d(50, 0, 0), node) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(elevation_angle(node + Eigen::Vector3d(0, 0, -100), node) ==
          doctest::Approx(-90.0).epsilon(1e-12));
    CHECK(elevation_angle(node + Eigen::Vector3d(30, 0, 30), node) ==
          doctest::Approx(45.0).epsilon(1e-12));
}

TEST_CASE("coincident points are degenerate geometry") {
    const Eigen::Vector3d p(1.0, 2.0, 3.0);
    CHECK_THROWS_AS(elevation_angle(p, p), DegenerateGeometryError);
    CHECK_THROWS_AS(elevation_angle(p + Eigen::Vector3d(1e-9, 0, 0), p),
                    DegenerateGeometryError);
    // At exactly the minimum separation the link is still defined.
    CHECK_NOTHROW(elevation_angle(p + Eigen::Vector3d(0, 0, kMinLinkDistance), p));
    const ChannelParams params = testsupport::stock_channel();
    CHECK_THROWS_AS(expected_rate(p, p, params), DegenerateGeometryError);
}

TEST_CASE("line-of-sight probability at the sigmoid midpoint") {
    const ChannelParams params = testsupport::stock_channel();
    // theta equal to the offset makes the exponent zero: 1 / (1 + a).
    CHECK(std::fabs(los_probability(10.0, params) - 1.0 / 11.0) < 1e-15);
    CHECK(los_probability(90.0, params) > 0.99);
    CHECK(los_probability(0.0, params) < 0.01);
    double prev = -1.0;
    for (double theta = -90.0; theta <= 90.0; theta += 2.5) {
        const double p = los_probability(theta, params);
        CHECK(p > prev);
        CHECK(p > 0.0);
        CHECK(p < 1.0);
        prev = p;
    }
}

TEST_CASE("expected rate matches the reference chain") {
    const ChannelParams params = testsupport::stock_channel();
    const Eigen::Vector3d node(300.0, 300.0, 0.0);
    CHECK(rel_err(expected_rate(node + Eigen::Vector3d(0, 0, 100), node, params),
                  oracle::kRateOverhead100) < 1e-12);
    CHECK(rel_err(expected_rate(node + Eigen::Vector3d(0, 0, 0.5), node, params),
                  oracle::kRateOverheadHalf) < 1e-12);
}

TEST_CASE("rate decays with distance at fixed geometry") {
    const ChannelParams params = testsupport::stock_channel();
    const Eigen::Vector3d node(0.0, 0.0, 0.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double h = 10.0; h <= 640.0; h *= 2.0) {
        const double r = expected_rate(Eigen::Vector3d(0, 0, h), node, params);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("hovering overhead collects at the overhead rate") {
    const ChannelParams params = testsupport::stock_channel();
    std::vector<GroundNode> nodes(1);
    nodes[0].position = Eigen::Vector3d(50.0, 60.0, 0.0);
    nodes[0].data_requirement = 1.0e6;
    nodes[0].rate_threshold = 1.0e6;
    const int n = 100;
    const double t = 10.0;
    const SampledPath path = hover_path(nodes[0].position + Eigen::Vector3d(0, 0, 100), n, t);
    const LinkTrace trace = link_trace(path, nodes, params);

    REQUIRE(trace.rates.rows() == 1);
    REQUIRE(trace.rates.cols() == n);
    REQUIRE(trace.active.size() == 1);
    REQUIRE(trace.collected.size() == 1);
    const double rate = expected_rate(path.positions[0], nodes[0].position, params);
    for (int i = 0; i < n; ++i) {
        CHECK(trace.rates(0, i) == rate);
        CHECK(trace.active[0][static_cast<std::size_t>(i)] == 1);
    }
    // Every sample is weighted T / (n - 1); with n samples the hover
    // over-counts by one slot, which the discretization criterion bounds.
    CHECK(rel_err(trace.collected[0], t / (n - 1.0) * n * rate) < 1e-12);
    CHECK(rel_err(trace.collected[0], 24754606.827903766) < 1e-12);
}

TEST_CASE("the rate threshold is inclusive") {
    const ChannelParams params = testsupport::stock_channel();
    std::vector<GroundNode> nodes(1);
    nodes[0].position = Eigen::Vector3d(0.0, 0.0, 0.0);
    const SampledPath path = hover_path(Eigen::Vector3d(0, 0, 100), 10, 5.0);
    const double rate = expected_rate(path.positions[0], nodes[0].position, params);

    nodes[0].rate_threshold = rate;
    const LinkTrace at = link_trace(path, nodes, params);
    CHECK(at.active[0][0] == 1);
    CHECK(at.collected[0] > 0.0);

    nodes[0].rate_threshold = rate * (1.0 + 1e-12);
    const LinkTrace above = link_trace(path, nodes, params);
    CHECK(above.active[0][0] == 0);
    CHECK(above.collected[0] == 0.0);
}

TEST_CASE("communication energy counts active sample slots") {
    const ChannelParams params = testsupport::stock_channel();
    std::vector<GroundNode> nodes(1);
    nodes[0].position = Eigen::Vector3d(0.0, 0.0, 0.0);
    nodes[0].rate_threshold = 1.0e6;
    const int n = 100;
    const double t = 10.0;
    const SampledPath path = hover_path(Eigen::Vector3d(0, 0, 100), n, t);
    const LinkTrace trace = link_trace(path, nodes, params);
    CHECK(rel_err(comm_energy(trace, t, params), t / (n - 1.0) * params.comm_power * n) < 1e-12);

    // An unreachable threshold shuts the receiver off entirely.
    nodes[0].rate_threshold = 1.0e12;
    const LinkTrace off = link_trace(path, nodes, params);
    CHECK(comm_energy(off, t, params) == 0.0);
}

TEST_CASE("multiple nodes are traced independently") {
    const ChannelParams params = testsupport::stock_channel();
    std::vector<GroundNode> nodes(2);
    nodes[0].position = Eigen::Vector3d(0.0, 0.0, 0.0);
    nodes[0].rate_threshold = 1.0e6;
    nodes[1].position = Eigen::Vector3d(5000.0, 5000.0, 0.0);
    nodes[1].rate_threshold = 1.0e6;
    const SampledPath path = hover_path(Eigen::Vector3d(0, 0, 100), 20, 5.0);
    const LinkTrace trace = link_trace(path, nodes, params);
    CHECK(trace.collected[0] > 0.0);
    // The distant node is far below threshold and collects nothing.
    CHECK(trace.collected[1] == 0.0);
    CHECK(trace.rates(1, 0) > 0.0);
}

} // TEST_SUITE
