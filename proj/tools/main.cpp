#include "slabqd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return slabqd::cli::run(argc, argv, std::cout, std::cerr);
}
