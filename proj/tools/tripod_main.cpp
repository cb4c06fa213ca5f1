#include <iostream>

#include "tripod/cli.hpp"

int main(int argc, char** argv) { return tripod::cli::run(argc, argv, std::cout, std::cerr); }
