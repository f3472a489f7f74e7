#ifndef GREENFN_ORACLE_HPP
#define GREENFN_ORACLE_HPP

#include <functional>

#include "greenfn/boundary.hpp"

namespace greenfn {

// Closed-form reference Green functions, independent of the assembly path.
struct AnalyticGreen {
    enum class Kind { dirichlet_helmholtz_1d, periodic_helmholtz_1d, disk_dirichlet_laplace };
    Kind kind;
    Complex k{1.0, 0.0};
    double a = 0.0, b = 1.0;  // interval
    double L = 1.0;           // period
    double radius = 1.0;

    static AnalyticGreen dirichlet_helmholtz_1d(Complex k, double a, double b);
    static AnalyticGreen periodic_helmholtz_1d(Complex k, double L);
    static AnalyticGreen disk_dirichlet_laplace(double radius);
};

Complex analytic_G(const AnalyticGreen& ref, const Point& x, const Point& xp);

// Dense second-order finite-difference reference solver for 1D two-point
// problems with general local rows (one-sided second-order endpoint stencils).
struct FdSolver1D {
    OperatorSpec op;
    double a = 0.0, b = 1.0;
    std::vector<BoundaryCondition> rows;  // exactly 2 local1d rows
    int n = 2000;                         // grid intervals; n >= 100
};

struct FdSolution {
    std::vector<double> x;
    Vec u;
    Complex interp(double xq) const;  // piecewise linear
};

FdSolution fd_solve(const FdSolver1D& solver, const std::function<Complex(double)>& f,
                    const std::array<Complex, 2>& phi);

// |[d/dx G](xp+) - [d/dx G](xp-) - 1| by one-sided second-order differences.
double jump_check(const std::function<Complex(double)>& g_of_x, double xp, double h);

}  // namespace greenfn

#endif
