#include <doctest.h>

#include <cmath>

#include "greenfn/fundamental.hpp"
#include "greenfn/oracle.hpp"

using namespace greenfn;

TEST_CASE("analytic dirichlet green function") {
    const auto ref = AnalyticGreen::dirichlet_helmholtz_1d(1.0, 0.0, 1.0);
    CHECK(std::abs(analytic_G(ref, Point(0.25), Point(0.75)) -
                   Complex(-0.0727401421556886, 0.0)) < 1e-15);
    // self-validation: unit jump and boundary values
    for (double xp : {0.3, 0.62}) {
        CHECK(jump_check([&](double x) { return analytic_G(ref, Point(x), Point(xp)); }, xp,
                         1e-5) < 1e-7);
        CHECK(std::abs(analytic_G(ref, Point(0.0), Point(xp))) < 1e-12);
        CHECK(std::abs(analytic_G(ref, Point(1.0), Point(xp))) < 1e-12);
    }
    CHECK_THROWS_AS(AnalyticGreen::dirichlet_helmholtz_1d(M_PI, 0.0, 1.0), EigenvalueParameters);
}

TEST_CASE("analytic periodic green function") {
    const auto ref = AnalyticGreen::periodic_helmholtz_1d(1.0, 1.0);
    CHECK(std::abs(analytic_G(ref, Point(0.2), Point(0.7)) - Complex(1.04291482146674, 0.0)) <
          1e-13);
    for (double xp : {0.3, 0.62}) {
        CHECK(jump_check([&](double x) { return analytic_G(ref, Point(x), Point(xp)); }, xp,
                         1e-5) < 1e-7);
        CHECK(std::abs(analytic_G(ref, Point(0.0), Point(xp)) -
                       analytic_G(ref, Point(1.0), Point(xp))) < 1e-14);
    }
    CHECK_THROWS_AS(AnalyticGreen::periodic_helmholtz_1d(2.0 * M_PI, 1.0), EigenvalueParameters);
}

TEST_CASE("disk image green function") {
    const auto ref = AnalyticGreen::disk_dirichlet_laplace(1.0);
    CHECK(std::abs(analytic_G(ref, Point(0.5, 0.0), Point(0.0, 0.0)) -
                   Complex(-0.110317800076326, 0.0)) < 1e-15);
    // vanishes on the boundary
    for (double t : {0.3, 2.0, 4.4})
        CHECK(std::abs(analytic_G(ref, Point(std::cos(t), std::sin(t)), Point(0.3, 0.2))) < 1e-13);
}

TEST_CASE("free-space kernel passes the jump check") {
    const FundamentalSolution helm(OperatorSpec::helmholtz1d(1.0));
    CHECK(jump_check([&](double x) { return helm.eval(Point(x), Point(0.4)); }, 0.4, 1e-5) < 1e-8);
}

namespace {
std::vector<BoundaryCondition> dirichlet_rows() {
    return {BoundaryCondition::dirichlet1d_at_a(), BoundaryCondition::dirichlet1d_at_b()};
}
}  // namespace

TEST_CASE("fd solver matches closed forms") {
    {
        // u'' + u = 1, u(0)=u(1)=0
        FdSolver1D s{OperatorSpec::helmholtz1d(1.0), 0.0, 1.0, dirichlet_rows(), 2000};
        const auto sol = fd_solve(s, [](double) { return Complex(1.0); }, {0.0, 0.0});
        CHECK(std::abs(sol.interp(0.5) - Complex(-0.139493927324549, 0.0)) < 5e-7);
    }
    {
        // u'' - u = 0, u(0)=1, u(1)=0 -> sinh(1-x)/sinh 1
        FdSolver1D s{OperatorSpec::modified_helmholtz1d(1.0), 0.0, 1.0, dirichlet_rows(), 2000};
        const auto sol = fd_solve(s, [](double) { return Complex(0.0); }, {1.0, 0.0});
        CHECK(std::abs(sol.interp(0.5) - Complex(0.443409441985037, 0.0)) < 5e-7);
    }
    {
        // zero data gives the zero grid
        FdSolver1D s{OperatorSpec::helmholtz1d(1.0), 0.0, 1.0, dirichlet_rows(), 300};
        const auto sol = fd_solve(s, [](double) { return Complex(0.0); }, {0.0, 0.0});
        CHECK(sol.u.cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("fd solver converges at second order") {
    // measured order under grid doubling must be at least 1.9
    FdSolver1D s{OperatorSpec::modified_helmholtz1d(1.0), 0.0, 1.0,
                 {BoundaryCondition::local1d(1.0, -1.0, 0.0, 0.0),
                  BoundaryCondition::local1d(0.0, 0.0, 1.0, 1.0)},
                 400};
    auto f = [](double x) { return Complex(std::cos(3.0 * x)); };
    auto solve_at = [&](int n) {
        FdSolver1D sn = s;
        sn.n = n;
        return fd_solve(sn, f, {0.0, 0.0});
    };
    const auto ref = solve_at(12800);
    auto err = [&](const FdSolution& sol) {
        double e = 0.0;
        for (double x : {0.2, 0.5, 0.8}) e = std::max(e, std::abs(sol.interp(x) - ref.interp(x)));
        return e;
    };
    const double e1 = err(solve_at(400));
    const double e2 = err(solve_at(800));
    const double order = std::log2(e1 / e2);
    CHECK(order >= 1.9);
}

TEST_CASE("fd solver input validation") {
    FdSolver1D s{OperatorSpec::helmholtz1d(1.0), 0.0, 1.0, dirichlet_rows(), 50};
    CHECK_THROWS_AS(fd_solve(s, [](double) { return Complex(0.0); }, {0.0, 0.0}), ShapeMismatch);
    // dependent rows make the system singular
    FdSolver1D s2{OperatorSpec::helmholtz1d(1.0), 0.0, 1.0,
                  {BoundaryCondition::dirichlet1d_at_a(), BoundaryCondition::dirichlet1d_at_a()},
                  300};
    CHECK_THROWS_AS(fd_solve(s2, [](double) { return Complex(1.0); }, {0.0, 1.0}),
                    SingularSystem);
}
