#include <doctest.h>

#include "greenfn/config.hpp"

using namespace greenfn;

namespace {

const char* kDirichletConfig = R"({
  "operator": {"type": "helmholtz1d", "k": [1.0, 0.0]},
  "domain": {"type": "interval", "a": 0.0, "b": 1.0},
  "boundary_conditions": [
    {"type": "local1d", "a0": [1, 0]},
    {"type": "local1d", "b0": [1, 0]}
  ],
  "source": {"type": "constant", "value": [1, 0]},
  "boundary_data": [[0, 0], [0, 0]],
  "discretization": {"boundary_nodes": 2, "volume_nodes": 256},
  "method": "direct",
  "green": {"sources": [[0.75]], "grid": [[0.25], [0.5]]},
  "output": {"path": "u.csv", "grid": {"n": 9}}
})";

}  // namespace

TEST_CASE("full grammar parses and builds") {
    const ProblemConfig c = parse_config_text(kDirichletConfig);
    CHECK(c.op.type == OperatorSpec::Type::helmholtz1d);
    CHECK(c.conditions.size() == 2);
    CHECK(c.volume_nodes == 256);
    CHECK(c.green_sources.size() == 1);
    CHECK(c.output_grid.size() == 9);
    auto gop = c.build_green();
    CHECK(std::abs(gop->eval(Point(0.25), Point(0.75)) - Complex(-0.0727401421556886, 0.0)) <
          1e-13);
}

TEST_CASE("round trip: serialize then reparse describes the same problem") {
    const ProblemConfig c1 = parse_config_text(kDirichletConfig);
    const std::string s1 = serialize_config(c1);
    const ProblemConfig c2 = parse_config_text(s1);
    const std::string s2 = serialize_config(c2);
    CHECK(s1 == s2);  // canonical form is a fixed point
    CHECK(c2.conditions.size() == c1.conditions.size());
    CHECK(c2.output_grid.size() == c1.output_grid.size());
    CHECK(std::abs(c2.build_green()->eval(Point(0.25), Point(0.75)) -
                   c1.build_green()->eval(Point(0.25), Point(0.75))) < 1e-15);
}

TEST_CASE("complex numbers parse from pairs or bare reals") {
    const ProblemConfig c = parse_config_text(R"({
      "operator": {"type": "helmholtz1d", "k": 2.5},
      "domain": {"type": "interval", "a": 0, "b": 1},
      "boundary_conditions": [{"type": "local1d", "a0": [0.5, -0.25]},
                              {"type": "local1d", "b0": 1}]
    })");
    CHECK(c.op.k == Complex(2.5, 0.0));
    CHECK(c.conditions[0].a0 == Complex(0.5, -0.25));
}

TEST_CASE("2d configs parse supports and kernels") {
    const ProblemConfig c = parse_config_text(R"({
      "operator": {"type": "laplace2d"},
      "domain": {"type": "circle", "radius": 1.0},
      "boundary_conditions": [
        {"type": "local2d", "dirichlet": [1, 0], "support": {"t0": 0.0, "t1": 3.141592653589793}},
        {"type": "nonlocal", "kernel": {"form": "cosine", "amplitude": [0.5, 0], "mode": 2},
         "support": {"t0": 3.141592653589793, "t1": 6.283185307179586}}
      ],
      "discretization": {"boundary_nodes": 32}
    })");
    CHECK(c.domain.dim() == 2);
    CHECK(c.conditions[1].kind == BoundaryCondition::Kind::nonlocal);
    const std::string s = serialize_config(c);
    CHECK(serialize_config(parse_config_text(s)) == s);
}

TEST_CASE("config errors carry field diagnostics") {
    CHECK_THROWS_WITH_AS(parse_config_text("{"), doctest::Contains("invalid JSON"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"domain": {"type": "interval", "a": 0, "b": 1}})"),
                         doctest::Contains("operator"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({
        "operator": {"type": "warp5"},
        "domain": {"type": "interval", "a": 0, "b": 1},
        "boundary_conditions": [{"type": "local1d", "a0": 1}]
      })"),
                         doctest::Contains("operator.type"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({
        "operator": {"type": "helmholtz1d", "k": 1},
        "domain": {"type": "interval", "a": 0, "b": 1},
        "boundary_conditions": [{"type": "local1d", "a0": 1}],
        "method": "sideways"
      })"),
                         doctest::Contains("method"), ConfigError);
    // grid points must be interior
    CHECK_THROWS_AS(parse_config_text(R"({
        "operator": {"type": "helmholtz1d", "k": 1},
        "domain": {"type": "interval", "a": 0, "b": 1},
        "boundary_conditions": [{"type": "local1d", "a0": 1}],
        "output": {"grid": [[1.5]]}
      })"),
                    ConfigError);
}

TEST_CASE("complex coefficients without an adjoint set are refused at build") {
    const ProblemConfig c = parse_config_text(R"({
      "operator": {"type": "helmholtz1d", "k": 1},
      "domain": {"type": "interval", "a": 0, "b": 1},
      "boundary_conditions": [{"type": "local1d", "a0": [1, 1]},
                              {"type": "local1d", "b0": 1}]
    })");
    CHECK_THROWS_AS(c.build_green(), ConfigError);
}
