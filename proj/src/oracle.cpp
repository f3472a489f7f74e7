#include "greenfn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace greenfn {

AnalyticGreen AnalyticGreen::dirichlet_helmholtz_1d(Complex k, double a, double b) {
    if (std::abs(std::sin(k * (b - a))) < 1e-10)
        throw EigenvalueParameters("k(b-a) is within 1e-10 of a Dirichlet eigenvalue multiple of pi");
    AnalyticGreen g;
    g.kind = Kind::dirichlet_helmholtz_1d;
    g.k = k;
    g.a = a;
    g.b = b;
    return g;
}

AnalyticGreen AnalyticGreen::periodic_helmholtz_1d(Complex k, double L) {
    if (std::abs(std::sin(k * L / 2.0)) < 1e-10)
        throw EigenvalueParameters("kL is within 1e-10 of a periodic eigenvalue multiple of 2pi");
    AnalyticGreen g;
    g.kind = Kind::periodic_helmholtz_1d;
    g.k = k;
    g.L = L;
    return g;
}

AnalyticGreen AnalyticGreen::disk_dirichlet_laplace(double radius) {
    if (!(radius > 0.0)) throw InvalidDomain("disk radius must be positive");
    AnalyticGreen g;
    g.kind = Kind::disk_dirichlet_laplace;
    g.radius = radius;
    return g;
}

Complex analytic_G(const AnalyticGreen& ref, const Point& x, const Point& xp) {
    switch (ref.kind) {
        case AnalyticGreen::Kind::dirichlet_helmholtz_1d: {
            const double lo = std::min(x.x(), xp.x());
            const double hi = std::max(x.x(), xp.x());
            return -std::sin(ref.k * (lo - ref.a)) * std::sin(ref.k * (ref.b - hi)) /
                   (ref.k * std::sin(ref.k * (ref.b - ref.a)));
        }
        case AnalyticGreen::Kind::periodic_helmholtz_1d: {
            const double d = std::abs(x.x() - xp.x());
            return std::cos(ref.k * (d - ref.L / 2.0)) /
                   (2.0 * ref.k * std::sin(ref.k * ref.L / 2.0));
        }
        case AnalyticGreen::Kind::disk_dirichlet_laplace: {
            const double rho = std::hypot(xp.x(), xp.y());
            const double r = x.dist(xp);
            if (r == 0.0) throw SingularEvaluation("coincident points");
            if (rho < 1e-14) {
                const double rx = std::hypot(x.x(), x.y());
                return Complex((std::log(rx) - std::log(ref.radius)) / (2.0 * M_PI), 0.0);
            }
            const double s = ref.radius * ref.radius / (rho * rho);
            const Point image(xp.x() * s, xp.y() * s);
            return Complex(
                (std::log(r) - std::log(rho * x.dist(image) / ref.radius)) / (2.0 * M_PI), 0.0);
        }
    }
    throw Unsupported("analytic Green kind");
}

Complex FdSolution::interp(double xq) const {
    if (x.size() < 2) throw ShapeMismatch("empty grid");
    if (xq <= x.front()) return u[0];
    if (xq >= x.back()) return u[u.size() - 1];
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const auto i = static_cast<Eigen::Index>(it - x.begin());
    const double t = (xq - x[static_cast<size_t>(i - 1)]) /
                     (x[static_cast<size_t>(i)] - x[static_cast<size_t>(i - 1)]);
    return (1.0 - t) * u[i - 1] + t * u[i];
}

FdSolution fd_solve(const FdSolver1D& solver, const std::function<Complex(double)>& f,
                    const std::array<Complex, 2>& phi) {
    if (solver.n < 100) throw ShapeMismatch("fd grid must have n >= 100");
    if (solver.rows.size() != 2) throw ShapeMismatch("a second-order operator needs 2 boundary rows");
    if (solver.op.dim() != 1) throw Unsupported("fd_solve is 1D");
    const Complex c = solver.op.type == OperatorSpec::Type::helmholtz1d
                          ? solver.op.k * solver.op.k
                          : Complex(-solver.op.kappa * solver.op.kappa, 0.0);
    const int n = solver.n;
    const double h = (solver.b - solver.a) / n;
    std::vector<Eigen::Triplet<Complex>> trip;
    Vec rhs = Vec::Zero(n + 1);
    for (int i = 1; i < n; ++i) {
        trip.emplace_back(i, i - 1, Complex(1.0 / (h * h)));
        trip.emplace_back(i, i, Complex(-2.0 / (h * h)) + c);
        trip.emplace_back(i, i + 1, Complex(1.0 / (h * h)));
        rhs[i] = f(solver.a + i * h);
    }
    // Boundary rows: one-sided second-order derivative stencils.
    for (int r = 0; r < 2; ++r) {
        const BoundaryCondition& row = solver.rows[static_cast<size_t>(r)];
        if (row.kind != BoundaryCondition::Kind::local1d)
            throw ShapeMismatch("fd_solve accepts local1d rows");
        const int idx = r == 0 ? 0 : n;
        std::map<int, Complex> ent;
        ent[0] += row.a0;
        ent[n] += row.b0;
        ent[0] += row.a1 * Complex(-3.0 / (2.0 * h));
        ent[1] += row.a1 * Complex(4.0 / (2.0 * h));
        ent[2] += row.a1 * Complex(-1.0 / (2.0 * h));
        ent[n] += row.b1 * Complex(3.0 / (2.0 * h));
        ent[n - 1] += row.b1 * Complex(-4.0 / (2.0 * h));
        ent[n - 2] += row.b1 * Complex(1.0 / (2.0 * h));
        for (const auto& [col, v] : ent)
            if (v != Complex(0.0)) trip.emplace_back(idx, col, v);
        rhs[idx] = phi[static_cast<size_t>(r)];
    }
    Eigen::SparseMatrix<Complex> A(n + 1, n + 1);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw SingularSystem("fd system factorization failed");
    FdSolution sol;
    sol.u = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !sol.u.allFinite())
        throw SingularSystem("fd system solve failed");
    sol.x.resize(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) sol.x[static_cast<size_t>(i)] = solver.a + i * h;
    return sol;
}

double jump_check(const std::function<Complex(double)>& g, double xp, double h) {
    const Complex dplus = (-3.0 * g(xp) + 4.0 * g(xp + h) - g(xp + 2.0 * h)) / (2.0 * h);
    const Complex dminus = (3.0 * g(xp) - 4.0 * g(xp - h) + g(xp - 2.0 * h)) / (2.0 * h);
    return std::abs(dplus - dminus - 1.0);
}

}  // namespace greenfn
