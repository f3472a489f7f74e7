#include <doctest.h>

#include <cmath>

#include "greenfn/geometry.hpp"

using namespace greenfn;

TEST_CASE("interval boundary is the two endpoints with unit weights") {
    const auto bd = discretize_boundary(Domain::interval(0.0, 1.0), 57);
    REQUIRE(bd.size() == 2);
    CHECK(bd.nodes[0].x() == 0.0);
    CHECK(bd.nodes[1].x() == 1.0);
    CHECK(bd.weights[0] == 1.0);
    CHECK(bd.weights[1] == 1.0);
}

TEST_CASE("circle trapezoid weights") {
    const Domain c1 = Domain::closed_curve(CurveSpec::circle(Point(0.0, 0.0), 1.0));
    const auto bd4 = discretize_boundary(c1, 4);
    for (int i = 0; i < 4; ++i) CHECK(bd4.weights[i] == doctest::Approx(2.0 * M_PI / 4.0));
    CHECK(bd4.weights.sum() == doctest::Approx(2.0 * M_PI));

    const Domain c2 = Domain::closed_curve(CurveSpec::circle(Point(0.0, 0.0), 2.0));
    const auto bd = discretize_boundary(c2, 128);
    CHECK(std::abs(bd.weights.sum() - 4.0 * M_PI) < 1e-10);
}

TEST_CASE("boundary nodes satisfy the domain equation") {
    const Domain e = Domain::closed_curve(CurveSpec::ellipse(Point(0.2, -0.1), 1.3, 0.7));
    const auto bd = discretize_boundary(e, 64);
    for (const Point& p : bd.nodes) {
        const double dx = (p.x() - 0.2) / 1.3, dy = (p.y() + 0.1) / 0.7;
        CHECK(std::abs(dx * dx + dy * dy - 1.0) < 1e-12);
    }
}

TEST_CASE("closed-curve quadrature converges spectrally for analytic integrands") {
    const Domain c = Domain::closed_curve(CurveSpec::circle(Point(0.0, 0.0), 1.0));
    auto quad = [&](int n) {
        const auto bd = discretize_boundary(c, n);
        double s = 0.0;
        for (int i = 0; i < bd.size(); ++i)
            s += bd.weights[i] * std::exp(bd.nodes[static_cast<size_t>(i)].x()) *
                 std::cos(bd.nodes[static_cast<size_t>(i)].y());
        return s;
    };
    const double d32 = std::abs(quad(32) - quad(16));
    const double d64 = std::abs(quad(64) - quad(32));
    CHECK(d64 < 1e-2 * d32);
}

TEST_CASE("gauss-legendre volume rule on the interval") {
    const auto vq = discretize_volume(Domain::interval(0.0, 1.0), 8);
    CHECK(std::abs(vq.weights.sum() - 1.0) < 1e-14);
    double ix = 0.0;
    for (int i = 0; i < vq.size(); ++i) ix += vq.weights[i] * vq.nodes[static_cast<size_t>(i)].x();
    CHECK(std::abs(ix - 0.5) < 1e-14);
    for (const Point& p : vq.nodes) CHECK((p.x() > 0.0 && p.x() < 1.0));
}

TEST_CASE("polar volume rule integrates the disk area") {
    const Domain disk = Domain::closed_curve(CurveSpec::circle(Point(0.0, 0.0), 1.0));
    const auto vq = discretize_volume(disk, 32);
    CHECK(std::abs(vq.weights.sum() - M_PI) < 1e-8);
    for (const Point& p : vq.nodes) CHECK(disk.contains(p));
    for (int i = 0; i < vq.size(); ++i) CHECK(vq.weights[i] > 0.0);
}

TEST_CASE("invalid domains are rejected") {
    CHECK_THROWS_AS(Domain::interval(1.0, 0.0), InvalidDomain);
    CHECK_THROWS_AS(CurveSpec::circle(Point(0.0, 0.0), -1.0), InvalidDomain);
    const Domain c = Domain::closed_curve(CurveSpec::circle(Point(0.0, 0.0), 1.0));
    CHECK_THROWS_AS(discretize_boundary(c, 7), InvalidDomain);
}
