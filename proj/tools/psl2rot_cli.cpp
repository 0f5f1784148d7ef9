#include <iostream>
#include <string>
#include <vector>

#include "psl2rot/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return psl2rot::run_cli(args, std::cout, std::cerr);
}
