#include <iostream>

#include "gptdyn/cli.hpp"

int main(int argc, char **argv) {
    return gptdyn::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
