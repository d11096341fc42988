#include <iostream>
#include <string>
#include <vector>

#include "jetcalc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return jetcalc::cli::run_command(args, std::cout, std::cerr);
}
