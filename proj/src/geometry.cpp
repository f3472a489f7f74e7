#include "greenfn/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace greenfn {

CurveSpec CurveSpec::circle(Point center, double radius) {
    if (!(radius > 0.0)) throw InvalidDomain("circle radius must be positive");
    CurveSpec c;
    c.kind = Kind::circle;
    c.center = center;
    c.r1 = c.r2 = radius;
    return c;
}

CurveSpec CurveSpec::ellipse(Point center, double ax, double ay) {
    if (!(ax > 0.0) || !(ay > 0.0)) throw InvalidDomain("ellipse semi-axes must be positive");
    CurveSpec c;
    c.kind = Kind::ellipse;
    c.center = center;
    c.r1 = ax;
    c.r2 = ay;
    return c;
}

Point CurveSpec::at(double t) const {
    return {center.x() + r1 * std::cos(t), center.y() + r2 * std::sin(t)};
}

Point CurveSpec::tangent(double t) const {
    return {-r1 * std::sin(t), r2 * std::cos(t)};
}

double CurveSpec::speed(double t) const {
    const Point d = tangent(t);
    return std::sqrt(d.x() * d.x() + d.y() * d.y());
}

Point CurveSpec::outward_normal(double t) const {
    // Rotate the tangent by -pi/2 for a positively oriented curve.
    const Point d = tangent(t);
    const double s = speed(t);
    return {d.y() / s, -d.x() / s};
}

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw InvalidDomain("interval requires a < b");
    if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidDomain("interval endpoints must be finite");
    Domain d;
    d.dim_ = 1;
    d.a_ = a;
    d.b_ = b;
    return d;
}

Domain Domain::closed_curve(const CurveSpec& spec) {
    Domain d;
    d.dim_ = 2;
    d.curve_ = spec;
    return d;
}

bool Domain::contains(const Point& p) const {
    if (dim_ == 1) return p.dim() == 1 && p.x() > a_ && p.x() < b_;
    if (p.dim() != 2) return false;
    const double dx = (p.x() - curve_.center.x()) / curve_.r1;
    const double dy = (p.y() - curve_.center.y()) / curve_.r2;
    return dx * dx + dy * dy < 1.0;
}

double Domain::boundary_distance(const Point& p) const {
    if (dim_ == 1) return std::min(std::abs(p.x() - a_), std::abs(p.x() - b_));
    if (curve_.kind == CurveSpec::Kind::circle) {
        const double r = p.dist(curve_.center);
        return std::abs(r - curve_.r1);
    }
    // Ellipse: dense parameter sampling is accurate enough for the on-boundary guard.
    double best = std::numeric_limits<double>::max();
    const int n = 2048;
    for (int i = 0; i < n; ++i) {
        best = std::min(best, p.dist(curve_.at(2.0 * M_PI * i / n)));
    }
    return best;
}

std::vector<Point> Domain::interior_probes(int n) const {
    std::vector<Point> out;
    out.reserve(static_cast<size_t>(n));
    if (dim_ == 1) {
        for (int i = 0; i < n; ++i) {
            const double s = 0.11 + 0.78 * i / std::max(1, n - 1);
            out.emplace_back(a_ + s * (b_ - a_));
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const double t = 2.0 * M_PI * (i + 0.37) / n;
            const double s = 0.25 + 0.35 * (i % 2);
            out.emplace_back(curve_.center.x() + s * curve_.r1 * std::cos(t),
                             curve_.center.y() + s * curve_.r2 * std::sin(t));
        }
    }
    return out;
}

double Domain::measure() const {
    if (dim_ == 1) return b_ - a_;
    return M_PI * curve_.r1 * curve_.r2;
}

BoundaryDiscretization discretize_boundary(const Domain& domain, int n_nodes) {
    BoundaryDiscretization bd;
    bd.domain = domain;
    if (domain.dim() == 1) {
        // Two-point boundary with counting measure; n_nodes is ignored.
        bd.nodes = {Point(domain.a()), Point(domain.b())};
        bd.weights = RealVec::Ones(2);
        return bd;
    }
    if (n_nodes < 2 || n_nodes % 2 != 0)
        throw InvalidDomain("closed curve discretization requires an even n_nodes >= 2");
    const CurveSpec& c = domain.curve();
    const double h = c.period() / n_nodes;
    bd.nodes.reserve(static_cast<size_t>(n_nodes));
    bd.params.reserve(static_cast<size_t>(n_nodes));
    bd.normals.reserve(static_cast<size_t>(n_nodes));
    bd.weights.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        const double t = h * i;
        bd.nodes.push_back(c.at(t));
        bd.params.push_back(t);
        const Point nrm = c.outward_normal(t);
        bd.normals.push_back({nrm.x(), nrm.y()});
        bd.weights[i] = h * c.speed(t);
    }
    return bd;
}

VolumeQuadrature discretize_volume(const Domain& domain, int n_nodes) {
    if (n_nodes < 2) throw InvalidDomain("volume quadrature needs n_nodes >= 2");
    VolumeQuadrature vq;
    if (domain.dim() == 1) {
        auto [x, w] = gauss_legendre(n_nodes, domain.a(), domain.b());
        vq.weights.resize(n_nodes);
        for (int i = 0; i < n_nodes; ++i) {
            vq.nodes.emplace_back(x[static_cast<size_t>(i)]);
            vq.weights[i] = w[static_cast<size_t>(i)];
        }
        return vq;
    }
    // Tensor polar rule mapped from the unit disk: Gauss in radius (with the
    // Jacobian r folded into the weight), uniform in angle.
    const CurveSpec& c = domain.curve();
    const int nr = n_nodes;
    const int nt = 2 * n_nodes;
    auto [r, wr] = gauss_legendre(nr, 0.0, 1.0);
    const double dt = 2.0 * M_PI / nt;
    vq.weights.resize(nr * nt);
    int k = 0;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nt; ++j) {
            const double t = dt * j;
            const double ri = r[static_cast<size_t>(i)];
            vq.nodes.emplace_back(c.center.x() + c.r1 * ri * std::cos(t),
                                  c.center.y() + c.r2 * ri * std::sin(t));
            vq.weights[k++] = wr[static_cast<size_t>(i)] * ri * dt * c.r1 * c.r2;
        }
    }
    return vq;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b) {
    // Newton iteration on Legendre polynomials via the three-term recurrence.
    std::vector<double> x(static_cast<size_t>(n)), w(static_cast<size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
        x[static_cast<size_t>(i)] = -z;
        x[static_cast<size_t>(n - 1 - i)] = z;
        w[static_cast<size_t>(i)] = wi;
        w[static_cast<size_t>(n - 1 - i)] = wi;
    }
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        x[static_cast<size_t>(i)] = mid + half * x[static_cast<size_t>(i)];
        w[static_cast<size_t>(i)] *= half;
    }
    return {x, w};
}

}  // namespace greenfn
