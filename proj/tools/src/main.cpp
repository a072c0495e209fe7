#include <iostream>

#include "mixar_cli/cli.hpp"

int main(int argc, char** argv) { return mixar::cli::run(argc, argv, std::cout, std::cerr); }
