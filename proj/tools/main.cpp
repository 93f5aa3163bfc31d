#include "hadfrac/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hadfrac::cli::run(argc, argv, std::cout, std::cerr); }
