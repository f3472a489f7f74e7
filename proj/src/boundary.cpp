#include "greenfn/boundary.hpp"

#include <cmath>

namespace greenfn {

Support Support::whole() { return Support{}; }

Support Support::arc(double t0, double t1) {
    Support s;
    s.all = false;
    s.t0 = t0;
    s.t1 = t1;
    return s;
}

std::vector<int> Support::select(const BoundaryDiscretization& bd) const {
    std::vector<int> idx;
    if (all) {
        idx.resize(static_cast<size_t>(bd.size()));
        for (int i = 0; i < bd.size(); ++i) idx[static_cast<size_t>(i)] = i;
        return idx;
    }
    if (bd.dim() != 2) throw ShapeMismatch("parameter-range support requires a closed curve");
    const double period = bd.domain.curve().period();
    for (int i = 0; i < bd.size(); ++i) {
        double t = std::fmod(bd.params[static_cast<size_t>(i)] - t0, period);
        if (t < 0) t += period;
        double len = std::fmod(t1 - t0, period);
        if (len <= 0) len += period;
        if (t < len) idx.push_back(i);
    }
    if (idx.empty()) throw InvalidDomain("condition support contains no boundary nodes");
    return idx;
}

BoundaryCondition BoundaryCondition::local1d(Complex a0, Complex a1, Complex b0, Complex b1) {
    if (a0 == 0.0 && a1 == 0.0 && b0 == 0.0 && b1 == 0.0)
        throw ShapeMismatch("local1d condition has all-zero coefficients");
    BoundaryCondition c;
    c.kind = Kind::local1d;
    c.a0 = a0;
    c.a1 = a1;
    c.b0 = b0;
    c.b1 = b1;
    return c;
}

BoundaryCondition BoundaryCondition::dirichlet1d_at_a() { return local1d(1.0, 0.0, 0.0, 0.0); }
BoundaryCondition BoundaryCondition::dirichlet1d_at_b() { return local1d(0.0, 0.0, 1.0, 0.0); }

BoundaryCondition BoundaryCondition::local2d(Complex dirichlet, Complex neumann, Support s) {
    if (dirichlet == 0.0 && neumann == 0.0)
        throw ShapeMismatch("local2d condition has all-zero coefficients");
    BoundaryCondition c;
    c.kind = Kind::local2d;
    c.dirichlet = dirichlet;
    c.neumann = neumann;
    c.support = s;
    return c;
}

BoundaryCondition BoundaryCondition::nonlocal_matrix(const Mat& kernel, Support s) {
    BoundaryCondition c;
    c.kind = Kind::nonlocal;
    c.kernel_form = KernelForm::matrix;
    c.kernel = kernel;
    c.support = s;
    return c;
}

BoundaryCondition BoundaryCondition::nonlocal_constant(Complex amp, Support s) {
    BoundaryCondition c;
    c.kind = Kind::nonlocal;
    c.kernel_form = KernelForm::constant;
    c.kernel_amplitude = amp;
    c.support = s;
    return c;
}

BoundaryCondition BoundaryCondition::nonlocal_cosine(Complex amp, int mode, Support s) {
    BoundaryCondition c;
    c.kind = Kind::nonlocal;
    c.kernel_form = KernelForm::cosine;
    c.kernel_amplitude = amp;
    c.kernel_mode = mode;
    c.support = s;
    return c;
}

bool BoundaryCondition::has_derivative_coeff() const {
    switch (kind) {
        case Kind::local1d: return a1 != 0.0 || b1 != 0.0;
        case Kind::local2d: return neumann != 0.0;
        case Kind::nonlocal: return false;
    }
    return false;
}

bool BoundaryCondition::coefficients_real() const {
    auto re = [](Complex z) { return z.imag() == 0.0; };
    switch (kind) {
        case Kind::local1d: return re(a0) && re(a1) && re(b0) && re(b1);
        case Kind::local2d: return re(dirichlet) && re(neumann);
        case Kind::nonlocal:
            if (kernel_form == KernelForm::matrix) return kernel.imag().cwiseAbs().maxCoeff() == 0.0;
            return re(kernel_amplitude);
    }
    return false;
}

void BoundaryConditionSet::validate() const {
    if (conditions.empty()) throw ShapeMismatch("boundary condition set needs m >= 1 conditions");
    if (conditions.size() != adjoint_conditions.size())
        throw ShapeMismatch("direct and adjoint condition lists must have equal length");
}

BoundaryConditionSet BoundaryConditionSet::with_default_adjoint(std::vector<BoundaryCondition> conds,
                                                                const OperatorSpec& op) {
    bool all_real = true;
    for (const auto& c : conds) all_real = all_real && c.coefficients_real();
    if (!op.self_adjoint() || !all_real)
        throw ConfigError(
            "default adjoint conditions require a self-adjoint operator with real coefficients; "
            "supply adjoint_boundary_conditions explicitly");
    BoundaryConditionSet s;
    s.adjoint_conditions = conds;
    s.conditions = std::move(conds);
    s.validate();
    return s;
}

BoundaryConditionSet BoundaryConditionSet::with_adjoint(std::vector<BoundaryCondition> conds,
                                                        std::vector<BoundaryCondition> adjoint) {
    BoundaryConditionSet s;
    s.conditions = std::move(conds);
    s.adjoint_conditions = std::move(adjoint);
    s.validate();
    return s;
}

BoundaryConditionSet BoundaryConditionSet::swapped() const {
    BoundaryConditionSet s;
    s.conditions = adjoint_conditions;
    s.adjoint_conditions = conditions;
    return s;
}

BoundaryFunction BoundaryFunction::zeros(int n, bool with_derivs) {
    BoundaryFunction f;
    f.values = Vec::Zero(n);
    if (with_derivs) f.derivs = Vec::Zero(n);
    return f;
}

DiscreteBoundaryOperator::DiscreteBoundaryOperator(const BoundaryConditionSet& bcs,
                                                   const BoundaryDiscretization& bd)
    : bcs_(bcs), bd_(std::make_shared<BoundaryDiscretization>(bd)) {
    bcs_.validate();
    for (const auto& c : bcs_.conditions) direct_.push_back(discretize(c));
    for (const auto& c : bcs_.adjoint_conditions) adjoint_.push_back(discretize(c));
    for (size_t j = 0; j < direct_.size(); ++j) {
        if (direct_[j].n_out() != adjoint_[j].n_out())
            throw ShapeMismatch("direct/adjoint condition " + std::to_string(j) +
                                " have different output sizes");
    }
}

bool DiscreteBoundaryOperator::any_derivative_coeff() const {
    for (const auto& c : bcs_.conditions)
        if (c.has_derivative_coeff()) return true;
    for (const auto& c : bcs_.adjoint_conditions)
        if (c.has_derivative_coeff()) return true;
    return false;
}

DiscreteCondition DiscreteBoundaryOperator::discretize(const BoundaryCondition& c) const {
    const int N = bd_->size();
    DiscreteCondition d;
    switch (c.kind) {
        case BoundaryCondition::Kind::local1d: {
            if (bd_->dim() != 1 || N != 2)
                throw ShapeMismatch("local1d condition needs the two-point 1D boundary");
            d.A0 = Mat::Zero(1, 2);
            d.A1 = Mat::Zero(1, 2);
            d.A0(0, 0) = c.a0;
            d.A0(0, 1) = c.b0;
            d.A1(0, 0) = c.a1;
            d.A1(0, 1) = c.b1;
            d.D0 = d.A0.adjoint();
            d.D1 = d.A1.adjoint();
            d.vweights = RealVec::Ones(1);
            d.support_nodes = {0, 1};
            break;
        }
        case BoundaryCondition::Kind::local2d: {
            if (bd_->dim() != 2) throw ShapeMismatch("local2d condition needs a closed-curve boundary");
            const auto idx = c.support.select(*bd_);
            const int n = static_cast<int>(idx.size());
            d.A0 = Mat::Zero(n, N);
            d.A1 = Mat::Zero(n, N);
            d.D0 = Mat::Zero(N, n);
            d.D1 = Mat::Zero(N, n);
            d.vweights.resize(n);
            for (int r = 0; r < n; ++r) {
                const int l = idx[static_cast<size_t>(r)];
                d.A0(r, l) = c.dirichlet;
                d.A1(r, l) = c.neumann;
                d.D0(l, r) = std::conj(c.dirichlet);
                d.D1(l, r) = std::conj(c.neumann);
                d.vweights[r] = bd_->weights[l];
            }
            d.support_nodes = idx;
            break;
        }
        case BoundaryCondition::Kind::nonlocal: {
            const auto idx = c.support.select(*bd_);
            const int n = static_cast<int>(idx.size());
            Mat K(n, N);
            switch (c.kernel_form) {
                case BoundaryCondition::KernelForm::matrix:
                    if (c.kernel.rows() != n || c.kernel.cols() != N)
                        throw ShapeMismatch("nonlocal kernel matrix is " +
                                            std::to_string(c.kernel.rows()) + "x" +
                                            std::to_string(c.kernel.cols()) + ", expected " +
                                            std::to_string(n) + "x" + std::to_string(N));
                    K = c.kernel;
                    break;
                case BoundaryCondition::KernelForm::constant:
                    K.setConstant(c.kernel_amplitude);
                    break;
                case BoundaryCondition::KernelForm::cosine: {
                    if (bd_->dim() != 2)
                        throw Unsupported("cosine catalog kernel needs curve parameters");
                    for (int r = 0; r < n; ++r)
                        for (int m2 = 0; m2 < N; ++m2)
                            K(r, m2) = c.kernel_amplitude *
                                       std::cos(c.kernel_mode *
                                                (bd_->params[static_cast<size_t>(idx[static_cast<size_t>(r)])] -
                                                 bd_->params[static_cast<size_t>(m2)]));
                    break;
                }
            }
            d.A0 = K * bd_->weights.asDiagonal();
            d.A1 = Mat::Zero(n, N);
            d.vweights.resize(n);
            for (int r = 0; r < n; ++r) d.vweights[r] = bd_->weights[idx[static_cast<size_t>(r)]];
            d.D0 = K.adjoint() * d.vweights.asDiagonal();
            d.D1 = Mat::Zero(N, n);
            d.support_nodes = idx;
            break;
        }
    }
    return d;
}

SpinorBoundaryFunction DiscreteBoundaryOperator::apply(const BoundaryFunction& f,
                                                       WhichSet which) const {
    if (f.values.size() != bd_->size())
        throw ShapeMismatch("boundary function has " + std::to_string(f.values.size()) +
                            " values, boundary has " + std::to_string(bd_->size()) + " nodes");
    SpinorBoundaryFunction phi;
    for (const auto& d : set(which)) {
        Vec comp = d.A0 * f.values;
        if (f.has_derivs()) comp += d.A1 * f.derivs;
        phi.comps.push_back(std::move(comp));
    }
    return phi;
}

BoundaryFunction DiscreteBoundaryOperator::apply_dagger(const SpinorBoundaryFunction& phi,
                                                        WhichSet which) const {
    const auto& conds = set(which);
    if (phi.m() != static_cast<int>(conds.size()))
        throw ShapeMismatch("spinor has " + std::to_string(phi.m()) + " components, expected " +
                            std::to_string(conds.size()));
    BoundaryFunction out = BoundaryFunction::zeros(bd_->size(), true);
    for (size_t j = 0; j < conds.size(); ++j) {
        if (phi.comps[j].size() != conds[j].n_out())
            throw ShapeMismatch("spinor component " + std::to_string(j) + " has wrong size");
        out.values += conds[j].D0 * phi.comps[j];
        out.derivs += conds[j].D1 * phi.comps[j];
    }
    return out;
}

SpinorBoundaryFunction apply_B(const BoundaryConditionSet& bcs, const BoundaryDiscretization& bd,
                               const BoundaryFunction& f, WhichSet which) {
    return DiscreteBoundaryOperator(bcs, bd).apply(f, which);
}

BoundaryFunction apply_B_adjoint_dagger(const BoundaryConditionSet& bcs,
                                        const BoundaryDiscretization& bd,
                                        const SpinorBoundaryFunction& phi) {
    return DiscreteBoundaryOperator(bcs, bd).apply_dagger(phi, WhichSet::adjoint);
}

BoundaryFunction trace_E(const FundamentalSolution& fs, const BoundaryDiscretization& bd,
                         const Point& xp) {
    if (bd.domain.boundary_distance(xp) < 1e-12)
        throw PointOnBoundary("trace_E source point lies on the boundary");
    const int N = bd.size();
    BoundaryFunction f = BoundaryFunction::zeros(N, true);
    for (int i = 0; i < N; ++i) {
        f.values[i] = fs.eval(bd.nodes[static_cast<size_t>(i)], xp);
        if (bd.dim() == 1)
            f.derivs[i] = fs.deriv(bd.nodes[static_cast<size_t>(i)], xp, DerivArg::first);
        else
            f.derivs[i] = fs.directional_deriv(bd.nodes[static_cast<size_t>(i)], xp,
                                               bd.normals[static_cast<size_t>(i)], DerivArg::first);
    }
    return f;
}

Complex boundary_inner(const BoundaryDiscretization& bd, const BoundaryFunction& f,
                       const BoundaryFunction& g) {
    Complex s = 0.0;
    for (int l = 0; l < bd.size(); ++l) {
        s += bd.weights[l] * std::conj(f.values[l]) * g.values[l];
        if (f.has_derivs() && g.has_derivs())
            s += bd.weights[l] * std::conj(f.derivs[l]) * g.derivs[l];
    }
    return s;
}

Complex spinor_inner(const DiscreteBoundaryOperator& op, WhichSet which,
                     const SpinorBoundaryFunction& phi, const SpinorBoundaryFunction& psi) {
    const auto& conds = op.set(which);
    Complex s = 0.0;
    for (size_t j = 0; j < conds.size(); ++j)
        s += phi.comps[j].conjugate()
                 .cwiseProduct(psi.comps[j])
                 .cwiseProduct(conds[j].vweights.cast<Complex>())
                 .sum();
    return s;
}

}  // namespace greenfn
