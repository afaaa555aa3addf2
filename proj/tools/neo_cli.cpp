#include <iostream>

#include "neo/cli.hpp"

int main(int argc, char** argv) { return neo::cli::main(argc, argv, std::cout, std::cerr); }
