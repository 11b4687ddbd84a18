#include <iostream>
#include <string>
#include <vector>

#include "monoqp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return monoqp::cli::run(args, std::cout, std::cerr);
}
