#include "greenfn/recursive.hpp"

#include <numeric>

namespace greenfn {

Mat block_inverse(const BlockMatrix2x2& bm) {
    const auto na = bm.A.rows();
    const auto nd = bm.D.rows();
    if (bm.A.cols() != na || bm.D.cols() != nd || bm.B.rows() != na || bm.B.cols() != nd ||
        bm.C.rows() != nd || bm.C.cols() != na)
        throw ShapeMismatch("block matrix shapes are incompatible");
    Eigen::PartialPivLU<Mat> luA(bm.A);
    const double rcA = luA.rcond();
    if (!(rcA > 1e-14)) throw SingularBlock("leading block A is numerically singular", 'A');
    const Mat AiB = luA.solve(bm.B);
    const Mat schur = bm.D - bm.C * AiB;
    Eigen::PartialPivLU<Mat> luR(schur);
    const double rcR = luR.rcond();
    if (!(rcR > 1e-14)) throw SingularBlock("Schur complement is numerically singular", 'R');
    const Mat R = luR.solve(Mat::Identity(nd, nd));
    Mat inv(na + nd, na + nd);
    const Mat Ai = luA.solve(Mat::Identity(na, na));
    const Mat CA = bm.C * Ai;
    inv.topLeftCorner(na, na) = Ai + AiB * R * CA;
    inv.topRightCorner(na, nd) = -AiB * R;
    inv.bottomLeftCorner(nd, na) = -R * CA;
    inv.bottomRightCorner(nd, nd) = R;
    return inv;
}

RecursiveGreen::RecursiveGreen(const FundamentalSolution& fs, const BoundaryConditionSet& bcs,
                               const BoundaryDiscretization& bd, std::vector<int> stage_order)
    : fs_(fs), bop_(bcs, bd), et0_(build_etrace(fs, bop_.bd())) {
    if (et0_.dim == 2 && bop_.any_derivative_coeff())
        throw Unsupported(
            "2D conditions with derivative coefficients need hypersingular boundary quadrature");
    const int m = bop_.m();
    if (stage_order.empty()) {
        stage_order.resize(static_cast<size_t>(m));
        std::iota(stage_order.begin(), stage_order.end(), 0);
    }
    if (static_cast<int>(stage_order.size()) != m)
        throw ShapeMismatch("stage order must be a permutation of the m conditions");

    ETrace T = et0_;
    const int N = bop_.bd().size();
    // Interior probe rows advanced with the recursion, for the per-stage
    // harmlessness check of deflated kernels.
    const auto probes = bop_.bd().domain.interior_probes(5);
    std::vector<Eigen::RowVectorXcd> prow0, prow1;
    for (const Point& x : probes) {
        Eigen::RowVectorXcd r0(N), r1(N);
        for (int mm = 0; mm < N; ++mm) {
            r0[mm] = bop_.bd().weights[mm] * fs_.eval(x, bop_.bd().nodes[static_cast<size_t>(mm)]);
            r1[mm] = et0_.dim == 1 ? bop_.bd().weights[mm] *
                                         fs_.deriv(x, bop_.bd().nodes[static_cast<size_t>(mm)],
                                                   DerivArg::second)
                                   : Complex(0.0);
        }
        prow0.push_back(r0);
        prow1.push_back(r1);
    }

    for (int s = 0; s < m; ++s) {
        const int j = stage_order[static_cast<size_t>(s)];
        const DiscreteCondition& dc = bop_.set(WhichSet::direct)[static_cast<size_t>(j)];
        const DiscreteCondition& ac = bop_.set(WhichSet::adjoint)[static_cast<size_t>(j)];
        Stage st;
        st.condition = j;
        const Mat gj = dc.A0 * T.T00 * ac.D0 + dc.A0 * T.T01 * ac.D1 + dc.A1 * T.T10 * ac.D0 +
                       dc.A1 * T.T11 * ac.D1;
        try {
            st.solver = DeflatedSolver(gj);
        } catch (const Error& e) {
            throw StageSingular(e.what(), s + 1);
        }
        st.Lfac0 = T.T00 * ac.D0 + T.T01 * ac.D1;
        st.Lfac1 = T.T10 * ac.D0 + T.T11 * ac.D1;
        const Mat Rfac0 = dc.A0 * T.T00 + dc.A1 * T.T10;
        const Mat Rfac1 = dc.A0 * T.T01 + dc.A1 * T.T11;
        if (st.solver.deflated()) {
            // The dropped directions must not contribute to the stage kernel:
            // their left factor, evaluated at interior probes, has to vanish.
            const Mat nulls = st.solver.null_directions();
            for (int c = 0; c < nulls.cols(); ++c) {
                double worst = 0.0, scale = 0.0;
                for (size_t p = 0; p < probes.size(); ++p) {
                    const Vec l = (prow0[p] * ac.D0 + prow1[p] * ac.D1).transpose();
                    worst = std::max(worst, std::abs((l.transpose() * nulls.col(c))(0)));
                    scale = std::max(scale, l.cwiseAbs().sum());
                }
                if (worst > 1e-10 * std::max(scale, 1e-300))
                    throw StageSingular("stage kernel is singular and its null space is not harmless",
                                        s + 1);
            }
        }
        st.GiR0 = st.solver.solve(Rfac0);
        st.GiR1 = st.solver.solve(Rfac1);
        T.T00 -= st.Lfac0 * st.GiR0;
        T.T01 -= st.Lfac0 * st.GiR1;
        T.T10 -= st.Lfac1 * st.GiR0;
        T.T11 -= st.Lfac1 * st.GiR1;
        for (size_t p = 0; p < probes.size(); ++p) {
            const Eigen::RowVectorXcd l = prow0[p] * ac.D0 + prow1[p] * ac.D1;
            prow0[p] -= l * st.GiR0;
            prow1[p] -= l * st.GiR1;
        }
        stages_.push_back(std::move(st));
    }
    et_final_ = T;
}

RecursiveGreen::Cols RecursiveGreen::initial_cols(const Point& xp) const {
    const BoundaryDiscretization& bd = bop_.bd();
    Cols c;
    c.c0.resize(bd.size());
    c.c1.resize(bd.size());
    for (int l = 0; l < bd.size(); ++l) {
        c.c0[l] = fs_.eval(bd.nodes[static_cast<size_t>(l)], xp);
        c.c1[l] = et0_.dim == 1
                      ? fs_.deriv(bd.nodes[static_cast<size_t>(l)], xp, DerivArg::first)
                      : Complex(0.0);
    }
    return c;
}

void RecursiveGreen::advance_cols(const Stage& st, Cols& cols, Vec* stage_sol) const {
    const DiscreteCondition& dc = bop_.set(WhichSet::direct)[static_cast<size_t>(st.condition)];
    const Vec r = dc.A0 * cols.c0 + dc.A1 * cols.c1;
    const Vec s = st.solver.solve(r);
    cols.c0 -= st.Lfac0 * s;
    cols.c1 -= st.Lfac1 * s;
    if (stage_sol) *stage_sol = s;
}

Complex RecursiveGreen::eval(const Point& x, const Point& xp) const {
    const BoundaryDiscretization& bd = bop_.bd();
    const int N = bd.size();
    Eigen::RowVectorXcd row0(N), row1(N);
    for (int mm = 0; mm < N; ++mm) {
        row0[mm] = bd.weights[mm] * fs_.eval(x, bd.nodes[static_cast<size_t>(mm)]);
        row1[mm] = et0_.dim == 1
                       ? bd.weights[mm] * fs_.deriv(x, bd.nodes[static_cast<size_t>(mm)], DerivArg::second)
                       : Complex(0.0);
    }
    Cols cols = initial_cols(xp);
    Complex val = fs_.eval(x, xp);
    for (const Stage& st : stages_) {
        const DiscreteCondition& ac = bop_.set(WhichSet::adjoint)[static_cast<size_t>(st.condition)];
        const Eigen::RowVectorXcd l = row0 * ac.D0 + row1 * ac.D1;
        Vec s;
        advance_cols(st, cols, &s);
        val -= (l * s)(0);
        row0 -= l * st.GiR0;
        row1 -= l * st.GiR1;
    }
    return val;
}

Complex RecursiveGreen::eval_deriv_x(const Point& x, const Point& xp,
                                     std::optional<Side> side) const {
    const BoundaryDiscretization& bd = bop_.bd();
    const int N = bd.size();
    if (et0_.dim != 1) throw Unsupported("eval_deriv_x is 1D only");
    Eigen::RowVectorXcd row0(N), row1(N), drow0(N), drow1(N);
    for (int mm = 0; mm < N; ++mm) {
        const Point& nm = bd.nodes[static_cast<size_t>(mm)];
        row0[mm] = bd.weights[mm] * fs_.eval(x, nm);
        row1[mm] = bd.weights[mm] * fs_.deriv(x, nm, DerivArg::second, side);
        drow0[mm] = bd.weights[mm] * fs_.deriv(x, nm, DerivArg::first, side);
        drow1[mm] = bd.weights[mm] * fs_.deriv2(x, nm);
    }
    Cols cols = initial_cols(xp);
    Complex val = fs_.deriv(x, xp, DerivArg::first, side);
    for (const Stage& st : stages_) {
        const DiscreteCondition& ac = bop_.set(WhichSet::adjoint)[static_cast<size_t>(st.condition)];
        const Eigen::RowVectorXcd l = row0 * ac.D0 + row1 * ac.D1;
        const Eigen::RowVectorXcd dl = drow0 * ac.D0 + drow1 * ac.D1;
        Vec s;
        advance_cols(st, cols, &s);
        val -= (dl * s)(0);
        row0 -= l * st.GiR0;
        row1 -= l * st.GiR1;
        drow0 -= dl * st.GiR0;
        drow1 -= dl * st.GiR1;
    }
    return val;
}

BoundaryFunction RecursiveGreen::trace(const Point& xp) const {
    Cols cols = initial_cols(xp);
    for (const Stage& st : stages_) advance_cols(st, cols, nullptr);
    BoundaryFunction out;
    out.values = cols.c0;
    if (et0_.dim == 1) out.derivs = cols.c1;
    return out;
}

BoundaryFunction RecursiveGreen::layer_potential_trace(const BoundaryFunction& J) const {
    BoundaryFunction out;
    out.values = et0_.T00 * J.values;
    if (et0_.dim == 1) out.derivs = et0_.T10 * J.values;
    if (J.has_derivs() && et0_.dim == 1) {
        out.values += et0_.T01 * J.derivs;
        out.derivs += et0_.T11 * J.derivs;
    }
    return out;
}

double RecursiveGreen::stage_residual(int j, const Point& xp, int upto) const {
    if (upto < 0) upto = stage_count();
    if (j < 1 || j > stage_count() || upto > stage_count())
        throw ShapeMismatch("stage index out of range");
    Cols cols = initial_cols(xp);
    for (int s = 0; s < upto; ++s) advance_cols(stages_[static_cast<size_t>(s)], cols, nullptr);
    const DiscreteCondition& dc = bop_.set(WhichSet::direct)[static_cast<size_t>(j - 1)];
    const Vec r = dc.A0 * cols.c0 + dc.A1 * cols.c1;
    return r.cwiseAbs().maxCoeff();
}

const GMatrix& RecursiveGreen::direct_gmatrix() const {
    std::call_once(lazy_gm_->once, [this] {
        lazy_gm_->gm = std::make_unique<GMatrix>(assemble_g(fs_, bop_, et0_));
    });
    return *lazy_gm_->gm;
}

SpinorBoundaryFunction RecursiveGreen::gsolve(const SpinorBoundaryFunction& phi) const {
    const GMatrix& gm = direct_gmatrix();
    return gm.unflatten(gm.solver.solve(gm.flatten(phi)));
}

BoundaryFunction RecursiveGreen::boundary_density(const Point& xp) const {
    const SpinorBoundaryFunction rhs = bop_.apply(trace_E(fs_, bop_.bd(), xp), WhichSet::direct);
    return bop_.apply_dagger(gsolve(rhs), WhichSet::adjoint);
}

double RecursiveGreen::condition_estimate() const {
    double c = 1.0;
    for (const Stage& st : stages_) c = std::max(c, st.solver.cond_estimate());
    return c;
}

RecursiveGreen recursive_green(const FundamentalSolution& fs, const BoundaryConditionSet& bcs,
                               const BoundaryDiscretization& bd, std::vector<int> stage_order) {
    return RecursiveGreen(fs, bcs, bd, std::move(stage_order));
}

}  // namespace greenfn
