#ifndef GREENFN_BOUNDARY_HPP
#define GREENFN_BOUNDARY_HPP

#include <memory>
#include <vector>

#include "greenfn/fundamental.hpp"
#include "greenfn/geometry.hpp"

namespace greenfn {

// Sub-domain of the boundary a condition is supported on. For closed curves
// this is a parameter range [t0, t1); the whole boundary otherwise.
struct Support {
    bool all = true;
    double t0 = 0.0, t1 = 0.0;

    static Support whole();
    static Support arc(double t0, double t1);
    std::vector<int> select(const BoundaryDiscretization& bd) const;
};

// One boundary operator b_j. Three kernel families:
//   local1d       a0*f(a) + a1*f'(a) + b0*f(b) + b1*f'(b), a single scalar output
//   local2d       alpha*f + beta*df/dn pointwise on a sub-arc
//   nonlocal      a smooth kernel matrix over (support nodes x boundary nodes),
//                 applied with the surface quadrature
struct BoundaryCondition {
    enum class Kind { local1d, local2d, nonlocal };
    Kind kind = Kind::local1d;

    // local1d
    Complex a0{0.0}, a1{0.0}, b0{0.0}, b1{0.0};
    // local2d
    Complex dirichlet{0.0}, neumann{0.0};
    // nonlocal: either a prediscretized matrix or a catalog kernel
    enum class KernelForm { matrix, constant, cosine };
    KernelForm kernel_form = KernelForm::matrix;
    Mat kernel;                 // (support nodes x boundary nodes) when matrix
    Complex kernel_amplitude{0.0};
    int kernel_mode = 0;        // cosine kernel amplitude*cos(mode*(t - t1))

    Support support;

    static BoundaryCondition local1d(Complex a0, Complex a1, Complex b0, Complex b1);
    static BoundaryCondition dirichlet1d_at_a();
    static BoundaryCondition dirichlet1d_at_b();
    static BoundaryCondition local2d(Complex dirichlet, Complex neumann, Support s = Support::whole());
    static BoundaryCondition nonlocal_matrix(const Mat& kernel, Support s = Support::whole());
    static BoundaryCondition nonlocal_constant(Complex c, Support s = Support::whole());
    static BoundaryCondition nonlocal_cosine(Complex amplitude, int mode, Support s = Support::whole());

    bool has_derivative_coeff() const;
    bool coefficients_real() const;
};

struct BoundaryConditionSet {
    std::vector<BoundaryCondition> conditions;
    std::vector<BoundaryCondition> adjoint_conditions;

    int m() const { return static_cast<int>(conditions.size()); }
    void validate() const;

    // Self-adjoint default: b^a_j := b_j, valid when the operator is formally
    // self-adjoint and all coefficients are real. Otherwise the adjoint set
    // must be supplied explicitly.
    static BoundaryConditionSet with_default_adjoint(std::vector<BoundaryCondition> conds,
                                                     const OperatorSpec& op);
    static BoundaryConditionSet with_adjoint(std::vector<BoundaryCondition> conds,
                                             std::vector<BoundaryCondition> adjoint);
    // Swaps the roles of direct and adjoint conditions (the adjoint problem's set).
    BoundaryConditionSet swapped() const;
};

// Complex function on the boundary nodes, optionally with a derivative
// channel: d/dx at the endpoints in 1D, the outward normal derivative in 2D.
struct BoundaryFunction {
    Vec values;
    Vec derivs;  // empty when no derivative data travels with the function

    bool has_derivs() const { return derivs.size() > 0; }
    static BoundaryFunction zeros(int n, bool with_derivs = false);
};

// m-component spinor-valued boundary function; component j lives on the
// output nodes of condition j (a single value for local1d rows).
struct SpinorBoundaryFunction {
    std::vector<Vec> comps;
    int m() const { return static_cast<int>(comps.size()); }
};

enum class WhichSet { direct, adjoint };

// Discretized action of one condition. A0/A1 include the quadrature weights
// so that applying them to nodal values realizes the boundary integral;
// D0/D1 are the dagger density maps placing conj-coefficients back on nodes.
struct DiscreteCondition {
    Mat A0, A1;  // (n_out x N)
    Mat D0, D1;  // (N x n_out)
    RealVec vweights;  // output-node weights for spinor inner products
    std::vector<int> support_nodes;
    int n_out() const { return static_cast<int>(A0.rows()); }
};

// All conditions of one set discretized against one boundary discretization.
// Holds a shared copy of the discretization so it is safe to pass around.
class DiscreteBoundaryOperator {
public:
    DiscreteBoundaryOperator(const BoundaryConditionSet& bcs, const BoundaryDiscretization& bd);

    const std::vector<DiscreteCondition>& set(WhichSet w) const {
        return w == WhichSet::direct ? direct_ : adjoint_;
    }
    const BoundaryDiscretization& bd() const { return *bd_; }
    const BoundaryConditionSet& bcs() const { return bcs_; }
    int m() const { return static_cast<int>(direct_.size()); }
    bool any_derivative_coeff() const;

    SpinorBoundaryFunction apply(const BoundaryFunction& f, WhichSet which) const;
    BoundaryFunction apply_dagger(const SpinorBoundaryFunction& phi, WhichSet which) const;

private:
    DiscreteCondition discretize(const BoundaryCondition& c) const;

    BoundaryConditionSet bcs_;
    std::shared_ptr<const BoundaryDiscretization> bd_;
    std::vector<DiscreteCondition> direct_, adjoint_;
};

// Convenience entry points matching the operation-level interface.
SpinorBoundaryFunction apply_B(const BoundaryConditionSet& bcs, const BoundaryDiscretization& bd,
                               const BoundaryFunction& f, WhichSet which = WhichSet::direct);
BoundaryFunction apply_B_adjoint_dagger(const BoundaryConditionSet& bcs,
                                        const BoundaryDiscretization& bd,
                                        const SpinorBoundaryFunction& phi);

// Boundary trace of the fundamental solution for an interior source, with the
// derivative channel filled (d/dx at endpoints in 1D, d/dn in 2D).
BoundaryFunction trace_E(const FundamentalSolution& fs, const BoundaryDiscretization& bd,
                         const Point& xp);

// Weighted inner products used by the adjoint-pairing property.
Complex boundary_inner(const BoundaryDiscretization& bd, const BoundaryFunction& f,
                       const BoundaryFunction& g);
Complex spinor_inner(const DiscreteBoundaryOperator& op, WhichSet which,
                     const SpinorBoundaryFunction& phi, const SpinorBoundaryFunction& psi);

}  // namespace greenfn

#endif
