#include <iostream>

#include "qdpas/cli.hpp"

int main(int argc, char** argv) {
    return qdpas::run_cli(argc, argv, std::cout, std::cerr);
}
