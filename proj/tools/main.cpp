#include <iostream>

#include "g2glue/cli.hpp"

int main(int argc, char** argv) {
    return g2glue::cli_main(argc, argv, std::cout, std::cerr);
}
