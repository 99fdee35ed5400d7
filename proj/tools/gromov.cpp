#include <iostream>

#include "gromov/cli.hpp"

int main(int argc, char** argv) {
    return gromov::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
