#include <iostream>

#include "dpsim/cli.hpp"

int main(int argc, char** argv) { return dpsim::cli::run(argc, argv, std::cout, std::cerr); }
