#include "greenfn/bvp.hpp"

#include <cmath>

namespace greenfn {

Complex SourceField::operator()(const Point& p) const {
    switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::constant: return c;
        case Kind::sine: return amplitude * std::sin(Complex(wavenumber * p.x() + phase));
        case Kind::polynomial: {
            Complex acc = 0.0, xp = 1.0;
            for (const Complex& ck : coeffs) {
                acc += ck * xp;
                xp *= p.x();
            }
            return acc;
        }
        case Kind::gaussian: {
            const double r = p.dist(center);
            return amplitude * std::exp(-r * r / (2.0 * width * width));
        }
    }
    return 0.0;
}

SourceField SourceField::zero() { return SourceField{}; }

SourceField SourceField::constant(Complex c) {
    SourceField f;
    f.kind = Kind::constant;
    f.c = c;
    return f;
}

SourceField SourceField::sine(Complex amplitude, double wavenumber, double phase) {
    SourceField f;
    f.kind = Kind::sine;
    f.amplitude = amplitude;
    f.wavenumber = wavenumber;
    f.phase = phase;
    return f;
}

SourceField SourceField::polynomial(std::vector<Complex> coeffs) {
    SourceField f;
    f.kind = Kind::polynomial;
    f.coeffs = std::move(coeffs);
    return f;
}

SourceField SourceField::gaussian(Point center, double width, Complex amplitude) {
    SourceField f;
    f.kind = Kind::gaussian;
    f.center = center;
    f.width = width;
    f.amplitude = amplitude;
    return f;
}

bool BoundaryData::all_zero() const {
    for (const auto& e : entries) {
        if (e.is_constant && e.value != Complex(0.0)) return false;
        if (!e.is_constant && e.values.cwiseAbs().maxCoeff() != 0.0) return false;
    }
    return true;
}

Vec BoundaryData::expand(int j, int n_out) const {
    const Entry& e = entries[static_cast<size_t>(j)];
    if (e.is_constant) return Vec::Constant(n_out, e.value);
    if (e.values.size() != n_out)
        throw ShapeMismatch("boundary data component " + std::to_string(j) + " has " +
                            std::to_string(e.values.size()) + " values, condition expects " +
                            std::to_string(n_out));
    return e.values;
}

BoundaryData BoundaryData::zeros(int m) {
    BoundaryData d;
    d.entries.resize(static_cast<size_t>(m));
    return d;
}

BoundaryData BoundaryData::constants(std::vector<Complex> values) {
    BoundaryData d;
    for (Complex v : values) {
        Entry e;
        e.value = v;
        d.entries.push_back(std::move(e));
    }
    return d;
}

FieldSolution solve_bvp(std::shared_ptr<const GreenFunction> gop, const VolumeQuadrature& vq,
                        const SourceField& f, const BoundaryData& phi,
                        const std::vector<Point>& sample_grid) {
    const auto& bop = gop->boundary_op();
    if (phi.m() != bop.m())
        throw ShapeMismatch("boundary data has " + std::to_string(phi.m()) + " components, need " +
                            std::to_string(bop.m()));
    FieldSolution sol;
    sol.gop_ = gop;
    sol.vq_ = vq;
    sol.method_ = gop->method();
    sol.cond_ = gop->condition_estimate();

    if (!f.is_zero()) {
        sol.has_volume_ = true;
        sol.fvals_.resize(vq.size());
        sol.vol_densities_.reserve(static_cast<size_t>(vq.size()));
        for (int i = 0; i < vq.size(); ++i) {
            sol.fvals_[i] = f(vq.nodes[static_cast<size_t>(i)]);
            sol.vol_densities_.push_back(gop->boundary_density(vq.nodes[static_cast<size_t>(i)]));
        }
    }
    if (!phi.all_zero()) {
        sol.has_data_ = true;
        SpinorBoundaryFunction s;
        const auto& conds = bop.set(WhichSet::direct);
        for (int j = 0; j < bop.m(); ++j)
            s.comps.push_back(phi.expand(j, conds[static_cast<size_t>(j)].n_out()));
        sol.data_density_ = bop.apply_dagger(gop->gsolve(s), WhichSet::adjoint);
    }
    sol.sample_points_ = sample_grid;
    sol.sample_values_.resize(static_cast<Eigen::Index>(sample_grid.size()));
    for (size_t i = 0; i < sample_grid.size(); ++i)
        sol.sample_values_[static_cast<Eigen::Index>(i)] = sol.eval(sample_grid[i]);
    return sol;
}

int FieldSolution::boundary_nodes() const { return gop_->discretization().size(); }

Complex FieldSolution::eval(const Point& x) const {
    const FundamentalSolution& fs = gop_->fundamental();
    Complex u = 0.0;
    if (has_volume_) {
        for (int i = 0; i < vq_.size(); ++i) {
            const Point& xi = vq_.nodes[static_cast<size_t>(i)];
            // 2D log kernel: an evaluation point falling exactly on a
            // quadrature node is excluded (weakly singular volume term).
            if (fs.dim() == 2 && x.dist(xi) < 1e-12) continue;
            const Complex g =
                fs.eval(x, xi) - gop_->layer_potential(x, vol_densities_[static_cast<size_t>(i)]);
            u += vq_.weights[i] * g * fvals_[i];
        }
    }
    if (has_data_) u += gop_->layer_potential(x, data_density_);
    return u;
}

Complex FieldSolution::deriv(const Point& x, std::optional<Side> side) const {
    const FundamentalSolution& fs = gop_->fundamental();
    if (fs.dim() != 1) throw Unsupported("FieldSolution::deriv is 1D");
    Complex du = 0.0;
    if (has_volume_) {
        for (int i = 0; i < vq_.size(); ++i) {
            const Point& xi = vq_.nodes[static_cast<size_t>(i)];
            const Complex dg =
                fs.deriv(x, xi, DerivArg::first, side) -
                gop_->layer_potential_deriv_x(x, vol_densities_[static_cast<size_t>(i)], side);
            du += vq_.weights[i] * dg * fvals_[i];
        }
    }
    if (has_data_) du += gop_->layer_potential_deriv_x(x, data_density_, side);
    return du;
}

BoundaryFunction FieldSolution::boundary_trace() const {
    const BoundaryDiscretization& bd = gop_->discretization();
    const bool oned = bd.dim() == 1;
    BoundaryFunction out = BoundaryFunction::zeros(bd.size(), oned);
    if (has_volume_) {
        for (int i = 0; i < vq_.size(); ++i) {
            const BoundaryFunction g = gop_->trace(vq_.nodes[static_cast<size_t>(i)]);
            out.values += vq_.weights[i] * fvals_[i] * g.values;
            if (oned) out.derivs += vq_.weights[i] * fvals_[i] * g.derivs;
        }
    }
    if (has_data_) {
        const BoundaryFunction pot = gop_->layer_potential_trace(data_density_);
        out.values += pot.values;
        if (oned) out.derivs += pot.derivs;
    }
    return out;
}

ResidualReport residual_report(const FieldSolution& sol, const GreenFunction& gop,
                               const SourceField& f, const BoundaryData& phi) {
    ResidualReport rep;
    const BoundaryDiscretization& bd = gop.discretization();
    const OperatorSpec& op = gop.fundamental().op();
    const double h = 1e-3;
    // Interior PDE residual by second-order central differences.
    if (bd.dim() == 1) {
        const double a = bd.domain.a(), b = bd.domain.b();
        const int ngrid = 41;
        const Complex c = op.type == OperatorSpec::Type::helmholtz1d
                              ? op.k * op.k
                              : Complex(-op.kappa * op.kappa, 0.0);
        for (int i = 0; i < ngrid; ++i) {
            const double x = a + (b - a) * (0.05 + 0.9 * i / (ngrid - 1));
            const Complex upp =
                (sol.eval(Point(x - h)) - 2.0 * sol.eval(Point(x)) + sol.eval(Point(x + h))) /
                (h * h);
            rep.pde_residual =
                std::max(rep.pde_residual, std::abs(upp + c * sol.eval(Point(x)) - f(Point(x))));
        }
    } else {
        for (const Point& p : bd.domain.interior_probes(9)) {
            const Complex lap = (sol.eval(Point(p.x() - h, p.y())) + sol.eval(Point(p.x() + h, p.y())) +
                                 sol.eval(Point(p.x(), p.y() - h)) + sol.eval(Point(p.x(), p.y() + h)) -
                                 4.0 * sol.eval(p)) /
                                (h * h);
            rep.pde_residual = std::max(rep.pde_residual, std::abs(lap - f(p)));
        }
    }
    // Boundary residual: |B u - Phi| per component.
    const auto& bop = gop.boundary_op();
    const SpinorBoundaryFunction bu = bop.apply(sol.boundary_trace(), WhichSet::direct);
    const auto& conds = bop.set(WhichSet::direct);
    for (int j = 0; j < bop.m(); ++j) {
        const Vec target = phi.expand(j, conds[static_cast<size_t>(j)].n_out());
        const double r = (bu.comps[static_cast<size_t>(j)] - target).cwiseAbs().maxCoeff();
        rep.boundary_residuals.push_back(r);
        rep.max_boundary_residual = std::max(rep.max_boundary_residual, r);
    }
    return rep;
}

}  // namespace greenfn
