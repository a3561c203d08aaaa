#include "cim/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cim::cli::run_cli(args, std::cout, std::cerr);
}
