#ifndef GREENFN_ASSEMBLY_HPP
#define GREENFN_ASSEMBLY_HPP

#include <memory>
#include <mutex>
#include <vector>

#include "greenfn/boundary.hpp"

namespace greenfn {

// Nystrom matrices of the fundamental solution restricted to the boundary:
// T_{d1,d2}[l,m] realizes the quadrature of d_x^{d1} d_x'^{d2} E(node_l, .)
// against nodal densities (surface weights folded into columns).
// 1D: sided kernel values at coincident endpoints (interior limits).
// 2D Laplace: T00 uses the spectral log-split quadrature; derivative blocks
// are zero and derivative-carrying conditions are rejected at assembly.
struct ETrace {
    int dim = 1;
    Mat T00, T01, T10, T11;
};

ETrace build_etrace(const FundamentalSolution& fs, const BoundaryDiscretization& bd);

// Linear solver for the boundary-response matrix. Healthy matrices use LU with
// partial pivoting; numerically singular ones fall back to a truncated SVD
// whose discarded directions the caller must prove harmless.
class DeflatedSolver {
public:
    DeflatedSolver() = default;
    explicit DeflatedSolver(const Mat& M);

    // Effective condition estimate (after deflation, when deflated).
    double cond_estimate() const { return cond_; }
    double raw_cond_estimate() const { return raw_cond_; }
    bool deflated() const { return !use_lu_; }
    int n_null() const;
    Mat null_directions() const;  // right-singular vectors of the discarded space

    Vec solve(const Vec& rhs) const;   // IllPosed when rhs has a component off the range
    Mat solve(const Mat& rhs) const;

private:
    Mat M_;
    Eigen::PartialPivLU<Mat> lu_;
    bool use_lu_ = true;
    Mat U_, V_;
    RealVec sv_;
    int n_keep_ = 0;
    double cond_ = 1.0, raw_cond_ = 1.0;
};

// The boundary-response matrix g, flattened condition-major with quadrature
// weights folded into columns (the discrete Nystrom operator on spinors).
struct GMatrix {
    Mat flat;
    std::vector<int> offsets;  // offsets.back() == flat.rows()
    DeflatedSolver solver;
    double condition_estimate = 1.0;

    Vec flatten(const SpinorBoundaryFunction& phi) const;
    SpinorBoundaryFunction unflatten(const Vec& v) const;
};

// Common interface of the two construction paths, consumed by the BVP solver
// and the CLI.
class GreenFunction {
public:
    virtual ~GreenFunction() = default;

    virtual Complex eval(const Point& x, const Point& xp) const = 0;
    // 1D d/dx of G in the first argument; side selects the interior limit when
    // x sits exactly on an endpoint.
    virtual Complex eval_deriv_x(const Point& x, const Point& xp,
                                 std::optional<Side> side = std::nullopt) const = 0;
    Complex eval_adjoint(const Point& x, const Point& xp) const {
        return std::conj(eval(xp, x));
    }

    virtual BoundaryFunction boundary_density(const Point& xp) const = 0;
    // Boundary trace of G_{x'} with the derivative channel (1D).
    virtual BoundaryFunction trace(const Point& xp) const = 0;
    // Applies the boundary-restricted layer potentials to a density.
    virtual BoundaryFunction layer_potential_trace(const BoundaryFunction& J) const = 0;
    virtual SpinorBoundaryFunction gsolve(const SpinorBoundaryFunction& phi) const = 0;

    virtual const FundamentalSolution& fundamental() const = 0;
    virtual const DiscreteBoundaryOperator& boundary_op() const = 0;
    virtual const BoundaryDiscretization& discretization() const = 0;
    virtual double condition_estimate() const = 0;
    virtual std::string method() const = 0;

    // E-potential of a two-channel boundary density at an interior point.
    Complex layer_potential(const Point& x, const BoundaryFunction& J) const;
    Complex layer_potential_deriv_x(const Point& x, const BoundaryFunction& J,
                                    std::optional<Side> side = std::nullopt) const;
};

GMatrix assemble_g(const FundamentalSolution& fs, const DiscreteBoundaryOperator& bop,
                   const ETrace& et);

class GreenOperator : public GreenFunction {
public:
    GreenOperator(const FundamentalSolution& fs, const BoundaryConditionSet& bcs,
                  const BoundaryDiscretization& bd);

    Complex eval(const Point& x, const Point& xp) const override;
    Complex eval_deriv_x(const Point& x, const Point& xp,
                         std::optional<Side> side = std::nullopt) const override;
    BoundaryFunction boundary_density(const Point& xp) const override;
    BoundaryFunction trace(const Point& xp) const override;
    BoundaryFunction layer_potential_trace(const BoundaryFunction& J) const override;
    SpinorBoundaryFunction gsolve(const SpinorBoundaryFunction& phi) const override;

    const FundamentalSolution& fundamental() const override { return fs_; }
    const DiscreteBoundaryOperator& boundary_op() const override { return bop_; }
    const BoundaryDiscretization& discretization() const override { return bop_.bd(); }
    double condition_estimate() const override { return gm_.condition_estimate; }
    std::string method() const override { return "direct"; }

    const GMatrix& gmatrix() const { return gm_; }
    const ETrace& etrace() const { return et_; }
    SpinorBoundaryFunction rhs_spinor(const Point& xp) const;

private:
    FundamentalSolution fs_;
    DiscreteBoundaryOperator bop_;
    ETrace et_;
    GMatrix gm_;
};

// Dirichlet specialization: the boundary operator is the plain trace and g
// reduces to the boundary-restricted fundamental solution.
GreenOperator dirichlet_green(const FundamentalSolution& fs, const BoundaryDiscretization& bd);

// The adjoint problem's Green operator (adjoint fundamental solution, swapped
// condition roles). Its g matrix is the h matrix of the adjoint construction.
GreenOperator assemble_adjoint_path(const FundamentalSolution& fs, const BoundaryConditionSet& bcs,
                                    const BoundaryDiscretization& bd);

// Max residual of the right-applied adjoint boundary conditions of G in its
// second argument, evaluated through the adjoint-path trace.
double verify_right_action(const GreenFunction& gop, const Point& x);
double verify_right_action(const GreenFunction& gop, const Point& x, int component,
                           int output_node);

}  // namespace greenfn

#endif
