#ifndef GREENFN_TYPES_HPP
#define GREENFN_TYPES_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace greenfn {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

// Spatial point in R^1 or R^2.
class Point {
public:
    Point() : dim_(1), c_{0.0, 0.0} {}
    explicit Point(double x) : dim_(1), c_{x, 0.0} {}
    Point(double x, double y) : dim_(2), c_{x, y} {}

    int dim() const { return dim_; }
    double x() const { return c_[0]; }
    double y() const { return c_[1]; }
    double operator[](int i) const { return c_[static_cast<size_t>(i)]; }

    double dist(const Point& o) const {
        const double dx = c_[0] - o.c_[0];
        const double dy = c_[1] - o.c_[1];
        return dim_ == 1 ? std::abs(dx) : std::sqrt(dx * dx + dy * dy);
    }

private:
    int dim_;
    std::array<double, 2> c_;
};

inline bool operator==(const Point& a, const Point& b) {
    return a.dim() == b.dim() && a.x() == b.x() && (a.dim() == 1 || a.y() == b.y());
}

// Error taxonomy. Everything derives from Error so the CLI can map failures
// to exit codes uniformly.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidDomain : Error {
    explicit InvalidDomain(const std::string& msg) : Error("InvalidDomain: " + msg) {}
};

struct SingularEvaluation : Error {
    explicit SingularEvaluation(const std::string& msg) : Error("SingularEvaluation: " + msg) {}
};

struct PointOnBoundary : Error {
    explicit PointOnBoundary(const std::string& msg) : Error("PointOnBoundary: " + msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error("ShapeMismatch: " + msg) {}
};

struct Unsupported : Error {
    explicit Unsupported(const std::string& msg) : Error("Unsupported: " + msg) {}
};

struct IllPosed : Error {
    IllPosed(const std::string& msg, double cond)
        : Error("IllPosed: " + msg + " (condition estimate " + std::to_string(cond) + ")"),
          condition_estimate(cond) {}
    double condition_estimate;
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg) : Error("SingularMatrix: " + msg) {}
};

struct SingularBlock : Error {
    SingularBlock(const std::string& msg, char block)
        : Error("SingularBlock: " + msg), which(block) {}
    char which;  // 'A' or 'R' (Schur complement)
};

struct StageSingular : Error {
    StageSingular(const std::string& msg, int j)
        : Error("StageSingular: stage " + std::to_string(j) + ": " + msg), stage(j) {}
    int stage;
};

struct EigenvalueParameters : Error {
    explicit EigenvalueParameters(const std::string& msg) : Error("EigenvalueParameters: " + msg) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& msg) : Error("SingularSystem: " + msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("ConfigError: " + msg) {}
};

}  // namespace greenfn

#endif
