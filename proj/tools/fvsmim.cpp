#include <iostream>

#include "fvsmim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fvsmim::run_cli(args, std::cout, std::cerr);
}
