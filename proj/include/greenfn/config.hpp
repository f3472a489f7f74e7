#ifndef GREENFN_CONFIG_HPP
#define GREENFN_CONFIG_HPP

#include <string>

#include "greenfn/bvp.hpp"
#include "greenfn/recursive.hpp"

namespace greenfn {

// Declarative problem description parsed from a JSON config file. Complex
// numbers are written as [re, im] (a bare number is accepted as re).
struct ProblemConfig {
    OperatorSpec op = OperatorSpec::helmholtz1d({1.0, 0.0});
    Domain domain = Domain::interval(0.0, 1.0);
    std::vector<BoundaryCondition> conditions;
    std::vector<BoundaryCondition> adjoint_conditions;  // empty: self-adjoint default
    SourceField source;
    BoundaryData boundary_data;  // empty: homogeneous
    int boundary_nodes = 2;
    int volume_nodes = 64;
    std::string method = "direct";  // direct | recursive
    std::vector<Point> green_sources;
    std::vector<Point> green_grid;
    std::vector<Point> output_grid;
    std::string output_path = "out.csv";

    BoundaryConditionSet condition_set() const;
    std::shared_ptr<GreenFunction> build_green(const std::string& method_override = "") const;
    FundamentalSolution fundamental() const { return FundamentalSolution(op); }
    BoundaryDiscretization boundary() const { return discretize_boundary(domain, boundary_nodes); }
    VolumeQuadrature volume() const { return discretize_volume(domain, volume_nodes); }
};

ProblemConfig parse_config_file(const std::string& path);
ProblemConfig parse_config_text(const std::string& text);
// Canonical serialized form; parse(serialize(c)) describes the same problem.
std::string serialize_config(const ProblemConfig& c);

}  // namespace greenfn

#endif
