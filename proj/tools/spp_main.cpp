#include <iostream>

#include "spp/cli.hpp"

int main(int argc, char** argv) {
    return spp::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
