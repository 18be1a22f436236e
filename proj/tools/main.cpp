#include <iostream>

#include "oscillab/cli.hpp"

int main(int argc, char** argv) { return oscillab::cli::run(argc, argv, std::cout, std::cerr); }
