#include <iostream>
#include <string>
#include <vector>

#include "edyn_cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return edyn::cli::run(args, std::cout, std::cerr);
}
