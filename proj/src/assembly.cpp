#include "greenfn/assembly.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace greenfn {

namespace {

constexpr double kIllPosedThreshold = 1e12;
constexpr double kDeflationRelTol = 1e-12;
constexpr double kConsistencyRelTol = 1e-8;
constexpr double kHarmlessRelTol = 1e-10;

Mat laplace_single_layer(const BoundaryDiscretization& bd) {
    // Kussmaul-Martensen split: ln|x(t)-x(s)| = (1/2) ln(4 sin^2((t-s)/2)) + smooth,
    // the periodic log part integrated with its spectral quadrature weights,
    // the remainder by trapezoid with the analytic diagonal ln|gamma'(t)|.
    const int N = bd.size();
    const double h = 2.0 * M_PI / N;
    Mat S(N, N);
    RealVec speed(N);
    for (int i = 0; i < N; ++i) speed[i] = bd.weights[i] / h;
    for (int l = 0; l < N; ++l) {
        for (int m = 0; m < N; ++m) {
            const double dt = bd.params[static_cast<size_t>(l)] - bd.params[static_cast<size_t>(m)];
            double rw = 0.0;
            for (int k = 1; k < N / 2; ++k) rw += std::cos(k * dt) / k;
            rw = -(4.0 * M_PI / N) * rw - (4.0 * M_PI / (double(N) * N)) * std::cos((N / 2) * dt);
            double ks;
            if (l == m) {
                ks = std::log(speed[l]);
            } else {
                const double r = bd.nodes[static_cast<size_t>(l)].dist(bd.nodes[static_cast<size_t>(m)]);
                ks = std::log(r / std::abs(2.0 * std::sin(dt / 2.0)));
            }
            S(l, m) = Complex((0.5 * rw + h * ks) * speed[m] / (2.0 * M_PI), 0.0);
        }
    }
    return S;
}

}  // namespace

ETrace build_etrace(const FundamentalSolution& fs, const BoundaryDiscretization& bd) {
    ETrace et;
    et.dim = bd.dim();
    const int N = bd.size();
    if (et.dim == 1) {
        // Coincident-endpoint derivatives use the limit with the field point
        // displaced into the interior: sign(x - x') = +1 at a, -1 at b.
        const Side sides[2] = {Side::above, Side::below};
        et.T00.resize(N, N);
        et.T01.resize(N, N);
        et.T10.resize(N, N);
        et.T11.resize(N, N);
        for (int l = 0; l < N; ++l) {
            for (int m = 0; m < N; ++m) {
                const Point& xl = bd.nodes[static_cast<size_t>(l)];
                const Point& xm = bd.nodes[static_cast<size_t>(m)];
                et.T00(l, m) = fs.eval(xl, xm);
                et.T10(l, m) = fs.deriv(xl, xm, DerivArg::first, sides[l]);
                et.T01(l, m) = fs.deriv(xl, xm, DerivArg::second, sides[l]);
                et.T11(l, m) = fs.deriv2(xl, xm);
            }
        }
        return et;
    }
    if (fs.op().type != OperatorSpec::Type::laplace2d)
        throw Unsupported("2D boundary traces are implemented for the Laplace operator");
    et.T00 = laplace_single_layer(bd);
    if (fs.is_adjoint_wrapper()) et.T00 = et.T00.conjugate();  // kernel is real anyway
    et.T01 = Mat::Zero(N, N);
    et.T10 = Mat::Zero(N, N);
    et.T11 = Mat::Zero(N, N);
    return et;
}

DeflatedSolver::DeflatedSolver(const Mat& M) : M_(M), lu_(M) {
    const double rc = lu_.rcond();
    raw_cond_ = (rc > 0.0 && std::isfinite(rc)) ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (std::isfinite(raw_cond_) && raw_cond_ < kIllPosedThreshold) {
        use_lu_ = true;
        cond_ = std::max(1.0, raw_cond_);
        return;
    }
    use_lu_ = false;
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    U_ = svd.matrixU();
    V_ = svd.matrixV();
    sv_ = svd.singularValues();
    const double smax = sv_.size() ? sv_[0] : 0.0;
    n_keep_ = 0;
    for (int i = 0; i < sv_.size(); ++i)
        if (sv_[i] > smax * kDeflationRelTol) ++n_keep_;
    cond_ = n_keep_ > 0 ? std::max(1.0, smax / sv_[n_keep_ - 1]) : 1.0;
}

int DeflatedSolver::n_null() const { return use_lu_ ? 0 : static_cast<int>(sv_.size()) - n_keep_; }

Mat DeflatedSolver::null_directions() const {
    if (use_lu_) return Mat(M_.rows(), 0);
    return V_.rightCols(static_cast<int>(sv_.size()) - n_keep_);
}

Vec DeflatedSolver::solve(const Vec& rhs) const {
    if (use_lu_) return lu_.solve(rhs);
    const Vec c = U_.adjoint() * rhs;
    const double resid = c.tail(c.size() - n_keep_).norm();
    const double scale = rhs.norm() + (sv_.size() ? sv_[0] : 0.0);
    if (resid > kConsistencyRelTol * std::max(scale, 1e-300))
        throw IllPosed("right-hand side is inconsistent with the deflated null space", raw_cond_);
    Vec cs = Vec::Zero(c.size());
    for (int i = 0; i < n_keep_; ++i) cs[i] = c[i] / sv_[i];
    return V_ * cs;
}

Mat DeflatedSolver::solve(const Mat& rhs) const {
    if (use_lu_) return lu_.solve(rhs);
    Mat out(rhs.rows(), rhs.cols());
    for (int j = 0; j < rhs.cols(); ++j) out.col(j) = solve(Vec(rhs.col(j)));
    return out;
}

Vec GMatrix::flatten(const SpinorBoundaryFunction& phi) const {
    Vec v(offsets.back());
    for (size_t j = 0; j + 1 < offsets.size(); ++j) {
        if (phi.comps[j].size() != offsets[j + 1] - offsets[j])
            throw ShapeMismatch("spinor component " + std::to_string(j) + " has wrong size");
        v.segment(offsets[j], offsets[j + 1] - offsets[j]) = phi.comps[j];
    }
    return v;
}

SpinorBoundaryFunction GMatrix::unflatten(const Vec& v) const {
    SpinorBoundaryFunction phi;
    for (size_t j = 0; j + 1 < offsets.size(); ++j)
        phi.comps.push_back(v.segment(offsets[j], offsets[j + 1] - offsets[j]));
    return phi;
}

namespace {

Mat gblock(const DiscreteCondition& di, const DiscreteCondition& dj, const ETrace& et) {
    Mat b = di.A0 * et.T00 * dj.D0;
    b += di.A0 * et.T01 * dj.D1;
    b += di.A1 * et.T10 * dj.D0;
    b += di.A1 * et.T11 * dj.D1;
    return b;
}

// A null direction of g is harmless when the layer potential of its daggered
// density vanishes on the domain: the discarded spinor components then do not
// enter G at all (e.g. the log-capacity mode of the unit circle, or 1D local
// rows whose monopole+dipole field cancels identically).
bool null_direction_harmless(const FundamentalSolution& fs, const DiscreteBoundaryOperator& bop,
                             const GMatrix& gm, const Vec& nu) {
    const BoundaryFunction J = bop.apply_dagger(gm.unflatten(nu), WhichSet::adjoint);
    const BoundaryDiscretization& bd = bop.bd();
    double worst = 0.0, scale = 0.0;
    for (const Point& x : bd.domain.interior_probes(7)) {
        Complex p = 0.0;
        double s = 0.0;
        for (int l = 0; l < bd.size(); ++l) {
            const Complex e = fs.eval(x, bd.nodes[static_cast<size_t>(l)]);
            p += bd.weights[l] * e * J.values[l];
            s += bd.weights[l] * std::abs(e) * std::abs(J.values[l]);
            if (bd.dim() == 1) {
                const Complex de = fs.deriv(x, bd.nodes[static_cast<size_t>(l)], DerivArg::second);
                p += bd.weights[l] * de * J.derivs[l];
                s += bd.weights[l] * std::abs(de) * std::abs(J.derivs[l]);
            }
        }
        worst = std::max(worst, std::abs(p));
        scale = std::max(scale, s);
    }
    return worst <= kHarmlessRelTol * std::max(scale, 1e-300);
}

}  // namespace

GMatrix assemble_g(const FundamentalSolution& fs, const DiscreteBoundaryOperator& bop,
                   const ETrace& et) {
    if (et.dim == 2 && bop.any_derivative_coeff())
        throw Unsupported(
            "2D conditions with derivative coefficients need hypersingular boundary quadrature");
    const auto& di = bop.set(WhichSet::direct);
    const auto& dj = bop.set(WhichSet::adjoint);
    const int m = bop.m();
    GMatrix gm;
    gm.offsets.assign(1, 0);
    for (int j = 0; j < m; ++j) gm.offsets.push_back(gm.offsets.back() + dj[static_cast<size_t>(j)].n_out());
    gm.flat.resize(gm.offsets.back(), gm.offsets.back());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            gm.flat.block(gm.offsets[static_cast<size_t>(i)], gm.offsets[static_cast<size_t>(j)],
                          di[static_cast<size_t>(i)].n_out(), dj[static_cast<size_t>(j)].n_out()) =
                gblock(di[static_cast<size_t>(i)], dj[static_cast<size_t>(j)], et);
    gm.solver = DeflatedSolver(gm.flat);
    if (gm.solver.deflated()) {
        const Mat nulls = gm.solver.null_directions();
        for (int c = 0; c < nulls.cols(); ++c) {
            if (!null_direction_harmless(fs, bop, gm, Vec(nulls.col(c))))
                throw IllPosed("boundary-response matrix is singular (interior eigenvalue?)",
                               gm.solver.raw_cond_estimate());
        }
    }
    gm.condition_estimate = gm.solver.cond_estimate();
    return gm;
}

Complex GreenFunction::layer_potential(const Point& x, const BoundaryFunction& J) const {
    const FundamentalSolution& fs = fundamental();
    const BoundaryDiscretization& bd = discretization();
    Complex p = 0.0;
    for (int l = 0; l < bd.size(); ++l) {
        p += bd.weights[l] * fs.eval(x, bd.nodes[static_cast<size_t>(l)]) * J.values[l];
        if (bd.dim() == 1 && J.has_derivs())
            p += bd.weights[l] * fs.deriv(x, bd.nodes[static_cast<size_t>(l)], DerivArg::second) *
                 J.derivs[l];
    }
    return p;
}

Complex GreenFunction::layer_potential_deriv_x(const Point& x, const BoundaryFunction& J,
                                               std::optional<Side> side) const {
    const FundamentalSolution& fs = fundamental();
    const BoundaryDiscretization& bd = discretization();
    Complex p = 0.0;
    for (int l = 0; l < bd.size(); ++l) {
        p += bd.weights[l] * fs.deriv(x, bd.nodes[static_cast<size_t>(l)], DerivArg::first, side) *
             J.values[l];
        if (J.has_derivs())
            p += bd.weights[l] * fs.deriv2(x, bd.nodes[static_cast<size_t>(l)]) * J.derivs[l];
    }
    return p;
}

GreenOperator::GreenOperator(const FundamentalSolution& fs, const BoundaryConditionSet& bcs,
                             const BoundaryDiscretization& bd)
    : fs_(fs), bop_(bcs, bd), et_(build_etrace(fs, bop_.bd())), gm_(assemble_g(fs_, bop_, et_)) {}

SpinorBoundaryFunction GreenOperator::rhs_spinor(const Point& xp) const {
    return bop_.apply(trace_E(fs_, bop_.bd(), xp), WhichSet::direct);
}

BoundaryFunction GreenOperator::boundary_density(const Point& xp) const {
    const Vec psi = gm_.solver.solve(gm_.flatten(rhs_spinor(xp)));
    return bop_.apply_dagger(gm_.unflatten(psi), WhichSet::adjoint);
}

Complex GreenOperator::eval(const Point& x, const Point& xp) const {
    return fs_.eval(x, xp) - layer_potential(x, boundary_density(xp));
}

Complex GreenOperator::eval_deriv_x(const Point& x, const Point& xp,
                                    std::optional<Side> side) const {
    return fs_.deriv(x, xp, DerivArg::first, side) -
           layer_potential_deriv_x(x, boundary_density(xp), side);
}

BoundaryFunction GreenOperator::layer_potential_trace(const BoundaryFunction& J) const {
    BoundaryFunction out;
    out.values = et_.T00 * J.values;
    if (et_.dim == 1) out.derivs = et_.T10 * J.values;
    if (J.has_derivs() && et_.dim == 1) {
        out.values += et_.T01 * J.derivs;
        out.derivs += et_.T11 * J.derivs;
    }
    return out;
}

// 1D traces carry the sided endpoint derivative channel; the 2D normal
// derivative of G would need the double-layer matrix and is not provided.
BoundaryFunction GreenOperator::trace(const Point& xp) const {
    const BoundaryFunction e = trace_E(fs_, bop_.bd(), xp);
    const BoundaryFunction pot = layer_potential_trace(boundary_density(xp));
    BoundaryFunction out;
    out.values = e.values - pot.values;
    if (et_.dim == 1) out.derivs = e.derivs - pot.derivs;
    return out;
}

SpinorBoundaryFunction GreenOperator::gsolve(const SpinorBoundaryFunction& phi) const {
    return gm_.unflatten(gm_.solver.solve(gm_.flatten(phi)));
}

GreenOperator dirichlet_green(const FundamentalSolution& fs, const BoundaryDiscretization& bd) {
    std::vector<BoundaryCondition> rows;
    if (bd.dim() == 1) {
        rows = {BoundaryCondition::dirichlet1d_at_a(), BoundaryCondition::dirichlet1d_at_b()};
    } else {
        rows = {BoundaryCondition::local2d(1.0, 0.0)};
    }
    return GreenOperator(fs, BoundaryConditionSet::with_default_adjoint(rows, fs.op()), bd);
}

GreenOperator assemble_adjoint_path(const FundamentalSolution& fs, const BoundaryConditionSet& bcs,
                                    const BoundaryDiscretization& bd) {
    return GreenOperator(fs.adjoint_solution(), bcs.swapped(), bd);
}

double verify_right_action(const GreenFunction& gop, const Point& x) {
    const GreenOperator adj =
        assemble_adjoint_path(gop.fundamental(), gop.boundary_op().bcs(), gop.discretization());
    const SpinorBoundaryFunction r = adj.boundary_op().apply(adj.trace(x), WhichSet::direct);
    double worst = 0.0;
    for (const auto& c : r.comps) worst = std::max(worst, c.cwiseAbs().maxCoeff());
    return worst;
}

double verify_right_action(const GreenFunction& gop, const Point& x, int component,
                           int output_node) {
    const GreenOperator adj =
        assemble_adjoint_path(gop.fundamental(), gop.boundary_op().bcs(), gop.discretization());
    const SpinorBoundaryFunction r = adj.boundary_op().apply(adj.trace(x), WhichSet::direct);
    return std::abs(r.comps[static_cast<size_t>(component)][output_node]);
}

}  // namespace greenfn
