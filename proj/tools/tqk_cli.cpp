#include "tqk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tqk::run_cli(argc, argv, std::cout, std::cerr); }
