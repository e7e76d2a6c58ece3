#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace gl3p::cli {

// Exit codes: 0 success, 1 bad input or domain error, 2 a verification failed.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct SelftestCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

std::vector<SelftestCheck> run_selftest();

}  // namespace gl3p::cli
