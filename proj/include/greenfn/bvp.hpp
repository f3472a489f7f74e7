#ifndef GREENFN_BVP_HPP
#define GREENFN_BVP_HPP

#include <memory>

#include "greenfn/assembly.hpp"

namespace greenfn {

// Source term f of the inhomogeneous equation. Sine/Polynomial act on the
// x-coordinate; Gaussian is radial about its center.
struct SourceField {
    enum class Kind { zero, constant, sine, polynomial, gaussian };
    Kind kind = Kind::zero;
    Complex c{0.0};                 // constant
    Complex amplitude{0.0};         // sine / gaussian
    double wavenumber = 1.0, phase = 0.0;
    std::vector<Complex> coeffs;    // polynomial, ascending powers of x
    Point center{0.0};
    double width = 1.0;

    Complex operator()(const Point& p) const;
    bool is_zero() const { return kind == Kind::zero; }

    static SourceField zero();
    static SourceField constant(Complex c);
    static SourceField sine(Complex amplitude, double wavenumber, double phase = 0.0);
    static SourceField polynomial(std::vector<Complex> coeffs);
    static SourceField gaussian(Point center, double width, Complex amplitude);
};

// Inhomogeneous data Phi_j, one entry per condition: a constant over the
// condition's output nodes or an explicit vector.
struct BoundaryData {
    struct Entry {
        bool is_constant = true;
        Complex value{0.0};
        Vec values;
    };
    std::vector<Entry> entries;

    int m() const { return static_cast<int>(entries.size()); }
    bool all_zero() const;
    Vec expand(int j, int n_out) const;

    static BoundaryData zeros(int m);
    static BoundaryData constants(std::vector<Complex> values);
};

struct ResidualReport {
    double pde_residual = 0.0;
    std::vector<double> boundary_residuals;
    double max_boundary_residual = 0.0;
};

// Field solution carrying a pure evaluator: the per-node source densities and
// the boundary-data density are materialized up front, so evaluation is a
// plain kernel sum and safe to call concurrently.
class FieldSolution {
public:
    Complex eval(const Point& x) const;
    Complex deriv(const Point& x, std::optional<Side> side = std::nullopt) const;  // 1D
    BoundaryFunction boundary_trace() const;  // trace of u with the 1D derivative channel

    const std::vector<Point>& sample_points() const { return sample_points_; }
    const Vec& sample_values() const { return sample_values_; }
    const std::string& method_name() const { return method_; }
    double condition_estimate() const { return cond_; }
    int volume_nodes() const { return vq_.size(); }
    int boundary_nodes() const;

private:
    friend FieldSolution solve_bvp(std::shared_ptr<const GreenFunction> gop,
                                   const VolumeQuadrature& vq, const SourceField& f,
                                   const BoundaryData& phi, const std::vector<Point>& sample_grid);
    std::shared_ptr<const GreenFunction> gop_;
    VolumeQuadrature vq_;
    Vec fvals_;
    std::vector<BoundaryFunction> vol_densities_;  // one per volume node with f != 0
    BoundaryFunction data_density_;                // J_Phi
    bool has_volume_ = false, has_data_ = false;
    std::vector<Point> sample_points_;
    Vec sample_values_;
    std::string method_;
    double cond_ = 1.0;
};

FieldSolution solve_bvp(std::shared_ptr<const GreenFunction> gop, const VolumeQuadrature& vq,
                        const SourceField& f, const BoundaryData& phi,
                        const std::vector<Point>& sample_grid = {});

ResidualReport residual_report(const FieldSolution& sol, const GreenFunction& gop,
                               const SourceField& f, const BoundaryData& phi);

}  // namespace greenfn

#endif
