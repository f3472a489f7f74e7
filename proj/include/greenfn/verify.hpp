#ifndef GREENFN_VERIFY_HPP
#define GREENFN_VERIFY_HPP

#include <string>
#include <vector>

#include "greenfn/types.hpp"

namespace greenfn {

struct VerifyRow {
    std::string suite;
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass() const { return max_error < tolerance; }
};

// Deterministic identity checks at pinned sizes. Suites: "assembly",
// "recursive", "bvp", or "all".
std::vector<VerifyRow> run_verify(const std::string& suite);

}  // namespace greenfn

#endif
