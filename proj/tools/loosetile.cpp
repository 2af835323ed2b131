#include <iostream>
#include <string>
#include <vector>

#include "loosetile/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return loosetile::run_command(args, std::cout, std::cerr);
}
