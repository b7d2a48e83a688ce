#include <iostream>

#include "sgrass/cli.hpp"

int main(int argc, char** argv) { return sgrass::cli::run(argc, argv, std::cout, std::cerr); }
