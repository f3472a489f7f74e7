#include "greenfn/verify.hpp"

#include <random>

#include "greenfn/bvp.hpp"
#include "greenfn/oracle.hpp"
#include "greenfn/recursive.hpp"

namespace greenfn {

namespace {

std::vector<BoundaryCondition> dirichlet_rows_1d() {
    return {BoundaryCondition::dirichlet1d_at_a(), BoundaryCondition::dirichlet1d_at_b()};
}

std::vector<BoundaryCondition> periodic_rows_1d() {
    return {BoundaryCondition::local1d(1.0, 0.0, -1.0, 0.0),
            BoundaryCondition::local1d(0.0, 1.0, 0.0, -1.0)};
}

std::vector<BoundaryCondition> robin_rows_1d() {
    return {BoundaryCondition::local1d(1.0, -1.0, 0.0, 0.0),
            BoundaryCondition::local1d(0.0, 0.0, 1.0, 1.0)};
}

std::vector<double> grid9() {
    std::vector<double> g;
    for (int i = 0; i < 9; ++i) g.push_back(0.1 + 0.8 * i / 8.0);
    return g;
}

double max_grid_error(const GreenFunction& gop, const AnalyticGreen& ref) {
    double err = 0.0;
    for (double x : grid9())
        for (double xp : grid9()) {
            if (std::abs(x - xp) < 1e-12) continue;
            err = std::max(err, std::abs(gop.eval(Point(x), Point(xp)) -
                                         analytic_G(ref, Point(x), Point(xp))));
        }
    return err;
}

VerifyRow row(const std::string& suite, const std::string& name, double err, double tol) {
    return VerifyRow{suite, name, err, tol};
}

void assembly_suite(std::vector<VerifyRow>& rows) {
    const std::string S = "assembly";
    const Domain unit = Domain::interval(0.0, 1.0);
    const BoundaryDiscretization bd1 = discretize_boundary(unit, 2);
    const FundamentalSolution helm(OperatorSpec::helmholtz1d(1.0));

    {
        const GreenOperator g(helm, BoundaryConditionSet::with_default_adjoint(dirichlet_rows_1d(),
                                                                               helm.op()),
                              bd1);
        rows.push_back(row(S, "dirichlet_green_vs_oracle",
                           max_grid_error(g, AnalyticGreen::dirichlet_helmholtz_1d(1.0, 0.0, 1.0)),
                           1e-12));
        rows.push_back(row(S, "green_jump_condition",
                           jump_check([&](double x) { return g.eval(Point(x), Point(0.6)); }, 0.6,
                                      1e-5),
                           1e-7));
        const BoundaryFunction tr = g.trace(Point(0.37));
        const SpinorBoundaryFunction r = g.boundary_op().apply(tr, WhichSet::direct);
        double bcn = 0.0;
        for (const auto& cmp : r.comps) bcn = std::max(bcn, cmp.cwiseAbs().maxCoeff());
        rows.push_back(row(S, "boundary_condition_norm", bcn, 1e-10));
        const FundamentalSolution in = FundamentalSolution::helmholtz1d_incoming(1.0);
        const GreenOperator gi(in, BoundaryConditionSet::with_default_adjoint(dirichlet_rows_1d(),
                                                                              helm.op()),
                               bd1);
        double bswap = 0.0;
        for (double x : {0.2, 0.5, 0.8})
            for (double xp : {0.3, 0.7})
                bswap = std::max(bswap, std::abs(g.eval(Point(x), Point(xp)) -
                                                 gi.eval(Point(x), Point(xp))));
        rows.push_back(row(S, "branch_independence", bswap, 1e-10));
        rows.push_back(row(S, "right_action_dirichlet", verify_right_action(g, Point(0.4)), 1e-12));
    }
    {
        const GreenOperator g(helm, BoundaryConditionSet::with_default_adjoint(periodic_rows_1d(),
                                                                               helm.op()),
                              bd1);
        rows.push_back(row(S, "periodic_green_vs_oracle",
                           max_grid_error(g, AnalyticGreen::periodic_helmholtz_1d(1.0, 1.0)), 1e-12));
    }
    {
        // Complex Robin rows u'(0) = alpha u(0), u'(1) = beta u(1) with the
        // Lagrange-identity adjoint rows (conjugated coefficients).
        const Complex al(1.0, 2.0), be(0.5, -1.0);
        const auto rows_c = std::vector<BoundaryCondition>{
            BoundaryCondition::local1d(-al, 1.0, 0.0, 0.0),
            BoundaryCondition::local1d(0.0, 0.0, -be, 1.0)};
        const auto rows_a = std::vector<BoundaryCondition>{
            BoundaryCondition::local1d(-std::conj(al), 1.0, 0.0, 0.0),
            BoundaryCondition::local1d(0.0, 0.0, -std::conj(be), 1.0)};
        const auto bcs = BoundaryConditionSet::with_adjoint(rows_c, rows_a);
        const GreenOperator g(helm, bcs, bd1);
        const GreenOperator h = assemble_adjoint_path(helm, bcs, bd1);
        rows.push_back(row(S, "h_equals_g_dagger",
                           (h.gmatrix().flat - g.gmatrix().flat.adjoint()).cwiseAbs().maxCoeff(),
                           1e-12));
        double rec = 0.0;
        for (double x : {0.2, 0.5, 0.8})
            for (double xp : {0.3, 0.6, 0.9})
                rec = std::max(rec, std::abs(h.eval(Point(x), Point(xp)) -
                                             std::conj(g.eval(Point(xp), Point(x)))));
        rows.push_back(row(S, "reciprocity_adjoint_path", rec, 1e-10));
        const double h2 = 1e-4;
        double pde = 0.0;
        for (double x : {0.21, 0.52, 0.83}) {
            const Complex upp = (g.eval(Point(x - h2), Point(0.45)) -
                                 2.0 * g.eval(Point(x), Point(0.45)) +
                                 g.eval(Point(x + h2), Point(0.45))) /
                                (h2 * h2);
            pde = std::max(pde, std::abs(upp + g.eval(Point(x), Point(0.45))));
        }
        rows.push_back(row(S, "pde_residual", pde, 1e-6));
    }
    {
        const Domain disk = Domain::closed_curve(CurveSpec::circle(Point(0.0, 0.0), 1.0));
        const BoundaryDiscretization bd2 = discretize_boundary(disk, 128);
        const FundamentalSolution lap(OperatorSpec::laplace2d());
        const GreenOperator g = dirichlet_green(lap, bd2);
        const AnalyticGreen ref = AnalyticGreen::disk_dirichlet_laplace(1.0);
        double err = 0.0;
        for (double rs : {0.0, 0.4, 0.7})
            for (double as : {0.3, 2.1})
                for (double rf : {0.2, 0.6, 0.9})
                    for (double af : {1.0, 4.2}) {
                        const Point xp(rs * std::cos(as), rs * std::sin(as));
                        const Point x(rf * std::cos(af), rf * std::sin(af));
                        if (x.dist(xp) < 1e-9) continue;
                        err = std::max(err, std::abs(g.eval(x, xp) - analytic_G(ref, x, xp)));
                    }
        rows.push_back(row(S, "disk_green_vs_image", err, 1e-6));
        rows.push_back(row(S, "right_action_disk", verify_right_action(g, Point(0.3, 0.2)), 1e-5));
    }
}

void recursive_suite(std::vector<VerifyRow>& rows) {
    const std::string S = "recursive";
    const Domain unit = Domain::interval(0.0, 1.0);
    const BoundaryDiscretization bd1 = discretize_boundary(unit, 2);
    const FundamentalSolution helm(OperatorSpec::helmholtz1d(1.0));
    {
        const auto bcs = BoundaryConditionSet::with_default_adjoint(
            {BoundaryCondition::dirichlet1d_at_a()}, helm.op());
        const GreenOperator gd(helm, bcs, bd1);
        const RecursiveGreen gr(helm, bcs, bd1);
        double err = 0.0;
        for (double x : {0.2, 0.6})
            for (double xp : {0.35, 0.8})
                err = std::max(err, std::abs(gd.eval(Point(x), Point(xp)) -
                                             gr.eval(Point(x), Point(xp))));
        rows.push_back(row(S, "m1_matches_direct", err, 1e-12));
    }
    {
        const auto bcs = BoundaryConditionSet::with_default_adjoint(dirichlet_rows_1d(), helm.op());
        const GreenOperator gd(helm, bcs, bd1);
        const RecursiveGreen gr(helm, bcs, bd1);
        const RecursiveGreen gp(helm, bcs, bd1, {1, 0});
        double err = 0.0, perm = 0.0;
        for (double x : grid9())
            for (double xp : {0.3, 0.75}) {
                err = std::max(err, std::abs(gd.eval(Point(x), Point(xp)) -
                                             gr.eval(Point(x), Point(xp))));
                perm = std::max(perm, std::abs(gd.eval(Point(x), Point(xp)) -
                                               gp.eval(Point(x), Point(xp))));
            }
        rows.push_back(row(S, "m2_dirichlet_matches_direct", err, 1e-12));
        rows.push_back(row(S, "permutation_invariance", perm, 1e-10));
    }
    {
        const FundamentalSolution mh(OperatorSpec::modified_helmholtz1d(1.0));
        const auto bcs = BoundaryConditionSet::with_default_adjoint(robin_rows_1d(), mh.op());
        const GreenOperator gd(mh, bcs, bd1);
        const RecursiveGreen gr(mh, bcs, bd1);
        double err = 0.0, res = 0.0;
        for (double x : {0.2, 0.5, 0.8})
            for (double xp : {0.3, 0.7}) {
                err = std::max(err, std::abs(gd.eval(Point(x), Point(xp)) -
                                             gr.eval(Point(x), Point(xp))));
            }
        for (double xp : {0.3, 0.7})
            for (int j = 1; j <= 2; ++j) res = std::max(res, gr.stage_residual(j, Point(xp)));
        rows.push_back(row(S, "robin_recursive_matches_direct", err, 1e-10));
        rows.push_back(row(S, "robin_stage_residuals", res, 1e-10));
    }
    {
        const Domain disk = Domain::closed_curve(CurveSpec::circle(Point(0.0, 0.0), 1.0));
        const BoundaryDiscretization bd2 = discretize_boundary(disk, 128);
        const FundamentalSolution lap(OperatorSpec::laplace2d());
        const auto arcs = std::vector<BoundaryCondition>{
            BoundaryCondition::local2d(1.0, 0.0, Support::arc(0.0, M_PI)),
            BoundaryCondition::local2d(1.0, 0.0, Support::arc(M_PI, 2.0 * M_PI))};
        const auto bcs = BoundaryConditionSet::with_default_adjoint(arcs, lap.op());
        const GreenOperator gd(lap, bcs, bd2);
        const RecursiveGreen gr(lap, bcs, bd2);
        double err = 0.0;
        for (auto [x, xp] : std::vector<std::pair<Point, Point>>{
                 {{0.5, 0.1}, {-0.2, 0.3}}, {{0.0, 0.6}, {0.4, -0.4}}, {{-0.7, 0.2}, {0.1, 0.1}}})
            err = std::max(err, std::abs(gd.eval(x, xp) - gr.eval(x, xp)));
        rows.push_back(row(S, "disk_two_arc_equivalence", err, 1e-5));
    }
    {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const int n = 4 + static_cast<int>(rng() % 9);
            const int na = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
            Mat M(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) M(i, j) = Complex(u(rng), u(rng));
            M += Complex(3.0, 0.0) * Mat::Identity(n, n);  // keep well-conditioned
            BlockMatrix2x2 bm;
            bm.A = M.topLeftCorner(na, na);
            bm.B = M.topRightCorner(na, n - na);
            bm.C = M.bottomLeftCorner(n - na, na);
            bm.D = M.bottomRightCorner(n - na, n - na);
            const Mat inv = block_inverse(bm);
            worst = std::max(worst, (inv * M - Mat::Identity(n, n)).cwiseAbs().maxCoeff());
        }
        rows.push_back(row(S, "block_inverse_random", worst, 1e-10));
    }
}

void bvp_suite(std::vector<VerifyRow>& rows) {
    const std::string S = "bvp";
    const Domain unit = Domain::interval(0.0, 1.0);
    const BoundaryDiscretization bd1 = discretize_boundary(unit, 2);
    const FundamentalSolution helm(OperatorSpec::helmholtz1d(1.0));
    const auto dir = BoundaryConditionSet::with_default_adjoint(dirichlet_rows_1d(), helm.op());
    auto gop = std::make_shared<GreenOperator>(helm, dir, bd1);
    const VolumeQuadrature vq = discretize_volume(unit, 256);
    {
        // u'' + u = 1, u(0)=u(1)=0; closed form 1 + (cos1-1)/sin1 sin x - cos x.
        const FieldSolution u = solve_bvp(gop, vq, SourceField::constant(1.0),
                                          BoundaryData::zeros(2));
        const double err = std::abs(u.eval(Point(0.5)) - Complex(-0.139493927324549, 0.0));
        rows.push_back(row(S, "dirichlet_f1_value", err, 5e-6));
    }
    {
        // f = 0, u(0)=0, u(1)=1: u = sin x / sin 1, boundary term only.
        const FieldSolution u = solve_bvp(gop, vq, SourceField::zero(),
                                          BoundaryData::constants({0.0, 1.0}));
        const double err = std::abs(u.eval(Point(0.5)) - Complex(0.569746963662275, 0.0));
        rows.push_back(row(S, "dirichlet_data_value", err, 1e-12));
    }
    {
        const FundamentalSolution mh(OperatorSpec::modified_helmholtz1d(1.0));
        const auto bcs = BoundaryConditionSet::with_default_adjoint(robin_rows_1d(), mh.op());
        auto grob = std::make_shared<GreenOperator>(mh, bcs, bd1);
        const SourceField f = SourceField::constant(1.0);
        const FieldSolution u = solve_bvp(grob, vq, f, BoundaryData::zeros(2));
        FdSolver1D fd{mh.op(), 0.0, 1.0, robin_rows_1d(), 4000};
        const FdSolution ufd = fd_solve(fd, [&](double x) { return f(Point(x)); }, {0.0, 0.0});
        double err = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double x = 0.05 + 0.9 * i / 19.0;
            err = std::max(err, std::abs(u.eval(Point(x)) - ufd.interp(x)));
        }
        rows.push_back(row(S, "robin_vs_fd", err, 5e-6));
        const ResidualReport rep = residual_report(u, *grob, f, BoundaryData::zeros(2));
        rows.push_back(row(S, "robin_boundary_residual", rep.max_boundary_residual, 1e-10));
    }
    {
        const FieldSolution u1 = solve_bvp(gop, vq, SourceField::constant(1.0),
                                           BoundaryData::zeros(2));
        const FieldSolution u2 = solve_bvp(gop, vq, SourceField::zero(),
                                           BoundaryData::constants({0.0, 1.0}));
        const FieldSolution u12 = solve_bvp(gop, vq, SourceField::constant(1.0),
                                            BoundaryData::constants({0.0, 1.0}));
        double err = 0.0;
        for (double x : {0.25, 0.5, 0.75})
            err = std::max(err, std::abs(u12.eval(Point(x)) - u1.eval(Point(x)) -
                                         u2.eval(Point(x))));
        rows.push_back(row(S, "superposition", err, 1e-12));
    }
    {
        // Harmonic extension on the unit disk: Phi = trace of x*y.
        const Domain disk = Domain::closed_curve(CurveSpec::circle(Point(0.0, 0.0), 1.0));
        const BoundaryDiscretization bd2 = discretize_boundary(disk, 128);
        const FundamentalSolution lap(OperatorSpec::laplace2d());
        auto g2 = std::make_shared<GreenOperator>(dirichlet_green(lap, bd2));
        BoundaryData phi = BoundaryData::zeros(1);
        phi.entries[0].is_constant = false;
        phi.entries[0].values.resize(bd2.size());
        for (int i = 0; i < bd2.size(); ++i)
            phi.entries[0].values[i] =
                bd2.nodes[static_cast<size_t>(i)].x() * bd2.nodes[static_cast<size_t>(i)].y();
        const VolumeQuadrature vq2 = discretize_volume(disk, 16);
        const FieldSolution u = solve_bvp(g2, vq2, SourceField::zero(), phi);
        double err = 0.0;
        for (double r : {0.0, 0.5, 0.9})
            for (double a : {0.7, 2.9, 5.3}) {
                const Point p(r * std::cos(a), r * std::sin(a));
                err = std::max(err, std::abs(u.eval(p) - Complex(p.x() * p.y(), 0.0)));
            }
        rows.push_back(row(S, "harmonic_extension_xy", err, 1e-5));
    }
    {
        // <L u, G^a(., x')> = conj(u(x')) with independent quadratures.
        const SourceField f = SourceField::sine(1.0, 3.0);
        const FieldSolution u = solve_bvp(gop, discretize_volume(unit, 96), f,
                                          BoundaryData::zeros(2));
        const auto [qx, qw] = gauss_legendre(64, 0.0, 1.0);
        double err = 0.0;
        for (double xp : {0.3, 0.62}) {
            Complex acc = 0.0;
            for (size_t i = 0; i < qx.size(); ++i)
                acc += qw[i] * std::conj(f(Point(qx[i]))) *
                       gop->eval_adjoint(Point(qx[i]), Point(xp));
            err = std::max(err, std::abs(acc - std::conj(u.eval(Point(xp)))));
        }
        rows.push_back(row(S, "sesquilinear_identity", err, 1e-4));
    }
}

}  // namespace

std::vector<VerifyRow> run_verify(const std::string& suite) {
    std::vector<VerifyRow> rows;
    if (suite == "assembly" || suite == "all") assembly_suite(rows);
    if (suite == "recursive" || suite == "all") recursive_suite(rows);
    if (suite == "bvp" || suite == "all") bvp_suite(rows);
    if (rows.empty()) throw ConfigError("unknown verify suite '" + suite + "'");
    return rows;
}

}  // namespace greenfn
