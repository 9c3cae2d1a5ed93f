#include <iostream>
#include <string>
#include <vector>

#include "wf/clirun.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return wf::run_cli(args, std::cout, std::cerr);
}
