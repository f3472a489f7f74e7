#ifndef GREENFN_RECURSIVE_HPP
#define GREENFN_RECURSIVE_HPP

#include "greenfn/assembly.hpp"

namespace greenfn {

struct BlockMatrix2x2 {
    Mat A, B, C, D;
};

// Inverse of [[A,B],[C,D]] via the Schur complement R = (D - C A^{-1} B)^{-1},
// reassembled into one matrix. SingularBlock names the failing inverse.
Mat block_inverse(const BlockMatrix2x2& bm);

// Recursive peel-off construction: conditions are enforced one stage at a
// time, each stage inverting the scalar response of the previous stage's
// kernel. Discretely this is block Gaussian elimination of the flattened g,
// so the final evaluator agrees with the direct path to roundoff.
class RecursiveGreen : public GreenFunction {
public:
    RecursiveGreen(const FundamentalSolution& fs, const BoundaryConditionSet& bcs,
                   const BoundaryDiscretization& bd, std::vector<int> stage_order = {});

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
    double condition_estimate() const override;
    std::string method() const override { return "recursive"; }

    int stage_count() const { return static_cast<int>(stages_.size()); }
    // Residual of condition j applied to the trace of G^{(upto)} at source xp
    // (upto = stage_count() checks the final object).
    double stage_residual(int j, const Point& xp, int upto = -1) const;

private:
    struct Stage {
        int condition = 0;
        DeflatedSolver solver;
        Mat Lfac0, Lfac1;  // N x n_j
        Mat GiR0, GiR1;    // n_j x N, the g^{-1}-applied right factors
    };

    // Boundary-trace state advanced stage by stage during evaluation.
    struct Cols {
        Vec c0, c1;
    };
    Cols initial_cols(const Point& xp) const;
    void advance_cols(const Stage& st, Cols& cols, Vec* stage_sol) const;

    const GMatrix& direct_gmatrix() const;

    FundamentalSolution fs_;
    DiscreteBoundaryOperator bop_;
    ETrace et0_;
    std::vector<Stage> stages_;
    ETrace et_final_;

    // Lazily assembled flattened g for inhomogeneous boundary data; shared so
    // the evaluator stays copyable.
    struct LazyGMatrix {
        std::once_flag once;
        std::unique_ptr<GMatrix> gm;
    };
    mutable std::shared_ptr<LazyGMatrix> lazy_gm_ = std::make_shared<LazyGMatrix>();
};

RecursiveGreen recursive_green(const FundamentalSolution& fs, const BoundaryConditionSet& bcs,
                               const BoundaryDiscretization& bd, std::vector<int> stage_order = {});

}  // namespace greenfn

#endif
