#include <iostream>

#include "pqc/cli.hpp"

int main(int argc, char** argv) { return pqc::run_cli(argc, argv, std::cout, std::cerr); }
