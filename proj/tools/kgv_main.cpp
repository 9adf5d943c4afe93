#include <iostream>

#include "kgv/cli.hpp"

int main(int argc, char** argv) { return kgv::run_cli(argc, argv, std::cout, std::cerr); }
