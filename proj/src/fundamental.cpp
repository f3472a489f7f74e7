#include "greenfn/fundamental.hpp"

#include <cmath>

namespace greenfn {

OperatorSpec OperatorSpec::helmholtz1d(Complex k) {
    if (k == Complex(0.0, 0.0)) throw InvalidDomain("helmholtz1d requires k != 0");
    OperatorSpec s;
    s.type = Type::helmholtz1d;
    s.k = k;
    return s;
}

OperatorSpec OperatorSpec::modified_helmholtz1d(double kappa) {
    if (!(kappa > 0.0)) throw InvalidDomain("modified_helmholtz1d requires kappa > 0");
    OperatorSpec s;
    s.type = Type::modified_helmholtz1d;
    s.kappa = kappa;
    return s;
}

OperatorSpec OperatorSpec::laplace2d() {
    OperatorSpec s;
    s.type = Type::laplace2d;
    return s;
}

FundamentalSolution::FundamentalSolution(const OperatorSpec& op) : op_(op) {
    if (op.type == OperatorSpec::Type::helmholtz2d)
        throw Unsupported("helmholtz2d fundamental solution (Hankel kernels) is not implemented");
}

Complex FundamentalSolution::phi(double r, int order) const {
    Complex v;
    switch (op_.type) {
        case OperatorSpec::Type::helmholtz1d: {
            // outgoing: e^{ikr}/(2ik); incoming: e^{-ikr}/(-2ik)
            const Complex i(0.0, 1.0);
            const Complex k = incoming_ ? -op_.k : op_.k;
            const Complex ik = i * k;
            v = std::pow(ik, order) * std::exp(ik * r) / (2.0 * ik);
            break;
        }
        case OperatorSpec::Type::modified_helmholtz1d: {
            const double kp = op_.kappa;
            v = std::pow(-kp, order) * (-std::exp(-kp * r) / (2.0 * kp));
            break;
        }
        case OperatorSpec::Type::laplace2d: {
            if (r == 0.0) throw SingularEvaluation("Laplace2D kernel at coincident points");
            if (order == 0)
                v = std::log(r) / (2.0 * M_PI);
            else if (order == 1)
                v = 1.0 / (2.0 * M_PI * r);
            else
                v = -1.0 / (2.0 * M_PI * r * r);
            break;
        }
        default:
            throw Unsupported("operator kernel");
    }
    return conjugated_ ? std::conj(v) : v;
}

Complex FundamentalSolution::eval(const Point& x, const Point& xp) const {
    return phi(x.dist(xp), 0);
}

Complex FundamentalSolution::eval_adjoint(const Point& x, const Point& xp) const {
    return std::conj(eval(xp, x));
}

Complex FundamentalSolution::deriv(const Point& x, const Point& xp, DerivArg arg,
                                   std::optional<Side> side) const {
    if (dim() != 1) throw Unsupported("deriv is the 1D derivative; use directional_deriv in 2D");
    const double s = x.x() - xp.x();
    double sg;
    if (s != 0.0) {
        sg = s > 0.0 ? 1.0 : -1.0;
    } else {
        if (!side) throw SingularEvaluation("derivative of E at coincident points needs a side");
        sg = (*side == Side::above) ? 1.0 : -1.0;
    }
    const Complex d = phi(std::abs(s), 1) * sg;
    return arg == DerivArg::first ? d : -d;
}

Complex FundamentalSolution::deriv2(const Point& x, const Point& xp) const {
    if (dim() != 1) throw Unsupported("deriv2 is 1D only");
    // d/dx d/dx' phi(|x-x'|) = -phi''(|x-x'|) away from coincidence; the limit
    // from either side agrees, so no side parameter is needed.
    return -phi(std::abs(x.x() - xp.x()), 2);
}

Complex FundamentalSolution::directional_deriv(const Point& x, const Point& xp,
                                               const std::array<double, 2>& dir,
                                               DerivArg arg) const {
    if (dim() != 2) throw Unsupported("directional_deriv is 2D only");
    const double r = x.dist(xp);
    if (r == 0.0) throw SingularEvaluation("derivative of E at coincident points");
    const double gx = (x.x() - xp.x()) / r;
    const double gy = (x.y() - xp.y()) / r;
    const Complex dr = phi(r, 1);
    const double proj = gx * dir[0] + gy * dir[1];
    return arg == DerivArg::first ? dr * proj : -dr * proj;
}

FundamentalSolution FundamentalSolution::adjoint_solution() const {
    FundamentalSolution a(*this);
    a.conjugated_ = !conjugated_;
    return a;
}

FundamentalSolution FundamentalSolution::helmholtz1d_incoming(Complex k) {
    FundamentalSolution f(OperatorSpec::helmholtz1d(k));
    f.incoming_ = true;
    return f;
}

}  // namespace greenfn
