#include <iostream>

#include "skyrmion/cli.hpp"

int main(int argc, char** argv) {
    return skyrmion::cli::run(argc, argv, std::cout, std::cerr);
}
