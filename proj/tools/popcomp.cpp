#include <iostream>

#include "popcomp/cli.hpp"

int main(int argc, char** argv) { return popcomp::cli::run(argc, argv, std::cout, std::cerr); }
