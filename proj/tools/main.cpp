#include <iostream>

#include "pmj/cli.hpp"

int main(int argc, char** argv) {
    return pmj::cli::run(argc, argv, std::cout, std::cerr);
}
