#ifndef GREENFN_GEOMETRY_HPP
#define GREENFN_GEOMETRY_HPP

#include <utility>
#include <vector>

#include "greenfn/types.hpp"

namespace greenfn {

// Parametrized closed curve from the built-in analytic catalog.
// Curves are positively oriented and 2*pi-periodic in parameter.
struct CurveSpec {
    enum class Kind { circle, ellipse };
    Kind kind = Kind::circle;
    Point center{0.0, 0.0};
    double r1 = 1.0;  // radius, or semi-axis along x
    double r2 = 1.0;  // semi-axis along y (ellipse)

    Point at(double t) const;
    Point tangent(double t) const;   // gamma'(t)
    double speed(double t) const;    // |gamma'(t)|
    Point outward_normal(double t) const;
    double period() const { return 2.0 * M_PI; }

    static CurveSpec circle(Point center, double radius);
    static CurveSpec ellipse(Point center, double ax, double ay);
};

// Bounded domain: an interval (a,b) in 1D or the interior of a closed curve in 2D.
class Domain {
public:
    static Domain interval(double a, double b);
    static Domain closed_curve(const CurveSpec& spec);

    int dim() const { return dim_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const CurveSpec& curve() const { return curve_; }

    bool contains(const Point& p) const;
    // Distance from p to the boundary (exact for interval/circle, sampled for ellipse).
    double boundary_distance(const Point& p) const;
    // A few fixed interior points, used for well-posedness probes.
    std::vector<Point> interior_probes(int n) const;

    double measure() const;  // |Omega| = b-a or enclosed area

private:
    int dim_ = 1;
    double a_ = 0.0, b_ = 1.0;
    CurveSpec curve_;
};

// Quadrature on the boundary manifold. In 1D the boundary is the two endpoints
// with counting measure (unit weights); in 2D a periodic trapezoid rule in the
// curve parameter with weights |gamma'(t_i)| * (period/n).
struct BoundaryDiscretization {
    Domain domain;
    std::vector<Point> nodes;
    RealVec weights;
    std::vector<double> params;             // 2D only
    std::vector<std::array<double, 2>> normals;  // 2D only, unit outward

    int size() const { return static_cast<int>(nodes.size()); }
    int dim() const { return domain.dim(); }
};

struct VolumeQuadrature {
    std::vector<Point> nodes;
    RealVec weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

BoundaryDiscretization discretize_boundary(const Domain& domain, int n_nodes);
VolumeQuadrature discretize_volume(const Domain& domain, int n_nodes);

// Gauss-Legendre rule on (a,b), exact for polynomials of degree 2n-1.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b);

}  // namespace greenfn

#endif
