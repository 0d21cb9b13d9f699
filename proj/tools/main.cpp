#include <iostream>
#include <string>
#include <vector>

#include "lldlab/cli.hpp"

int main(int argc, char** argv) {
    return lldlab::cli::run(std::vector<std::string>(argv + 1, argv + argc),
                            std::cout, std::cerr);
}
