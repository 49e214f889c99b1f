#include <iostream>

#include "pird/cli.hpp"

int main(int argc, char** argv) { return pird::cli::run(argc, argv, std::cout, std::cerr); }
