#include <iostream>
#include <string>
#include <vector>

#include "kgfe/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return kgfe::cli::run(std::move(args), std::cout, std::cerr);
}
