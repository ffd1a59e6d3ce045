#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return gauss2d::cli::run(argc, argv, std::cout, std::cerr); }
