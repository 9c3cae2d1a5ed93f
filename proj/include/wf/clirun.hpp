#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wf {

// Batch front end; returns 0 on pass, 1 on check failure, 2 on invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wf
