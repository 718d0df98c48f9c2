#include <iostream>
#include <string>
#include <vector>

#include "zeta_osc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return zeta_osc::cli::run(args, std::cout, std::cerr);
}
