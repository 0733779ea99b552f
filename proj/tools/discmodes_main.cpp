#include <iostream>
#include <string>
#include <vector>

#include "discmodes/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return discmodes::cli_main(args, std::cout, std::cerr);
}
