#include <iostream>

#include "liegen/cli.hpp"

int main(int argc, char** argv) { return liegen::run_cli(argc, argv, std::cout, std::cerr); }
