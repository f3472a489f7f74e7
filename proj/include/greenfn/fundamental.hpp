#ifndef GREENFN_FUNDAMENTAL_HPP
#define GREENFN_FUNDAMENTAL_HPP

#include <optional>

#include "greenfn/types.hpp"

namespace greenfn {

struct OperatorSpec {
    enum class Type { helmholtz1d, modified_helmholtz1d, laplace2d, helmholtz2d };
    Type type = Type::helmholtz1d;
    Complex k{1.0, 0.0};   // helmholtz1d
    double kappa = 1.0;    // modified_helmholtz1d

    int dim() const {
        return (type == Type::laplace2d || type == Type::helmholtz2d) ? 2 : 1;
    }
    // All catalog operators are formally self-adjoint (no first-order terms).
    bool self_adjoint() const { return true; }

    static OperatorSpec helmholtz1d(Complex k);
    static OperatorSpec modified_helmholtz1d(double kappa);
    static OperatorSpec laplace2d();
};

enum class DerivArg { first, second };

// Which side of the coincidence x == xp a derivative limit is taken from,
// in terms of the sign of x - xp. Boundary assembly takes interior-sided
// limits; the public eval_dE refuses exact coincidence instead.
enum class Side { above, below };

// Free-space fundamental solution E(x,x') of the operator, with closed-form
// spatial derivatives. All catalog kernels are functions of |x - x'|.
class FundamentalSolution {
public:
    explicit FundamentalSolution(const OperatorSpec& op);

    const OperatorSpec& op() const { return op_; }
    int dim() const { return op_.dim(); }
    bool is_adjoint_wrapper() const { return conjugated_; }

    Complex eval(const Point& x, const Point& xp) const;
    Complex eval_adjoint(const Point& x, const Point& xp) const;  // conj(eval(xp, x))

    // 1D derivative in the chosen argument; SingularEvaluation at coincidence
    // unless a side is given.
    Complex deriv(const Point& x, const Point& xp, DerivArg arg,
                  std::optional<Side> side = std::nullopt) const;
    // 1D mixed derivative d/dx d/dx' E; its one-sided limits at coincidence agree.
    Complex deriv2(const Point& x, const Point& xp) const;

    // 2D directional derivatives against a unit vector (first or second argument).
    Complex directional_deriv(const Point& x, const Point& xp, const std::array<double, 2>& dir,
                              DerivArg arg) const;

    // The adjoint fundamental solution E^a(x,x') = conj(E(x',x)) as a solution object.
    FundamentalSolution adjoint_solution() const;

    // The incoming branch e^{-ik|x-x'|}/(-2ik) of the 1D Helmholtz kernel;
    // a fundamental solution of the same operator with a different radiation
    // convention. Used by branch-independence checks.
    static FundamentalSolution helmholtz1d_incoming(Complex k);

private:
    // Radial profile phi(r) with E(x,x') = phi(|x-x'|) and derivatives,
    // optionally conjugated (adjoint) or with the reversed Helmholtz branch.
    Complex phi(double r, int order) const;

    OperatorSpec op_;
    bool conjugated_ = false;
    bool incoming_ = false;
};

}  // namespace greenfn

#endif
