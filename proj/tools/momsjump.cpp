#include <iostream>

#include "momsjump/cli.hpp"

int main(int argc, char** argv) { return momsjump::run_cli(argc, argv, std::cout, std::cerr); }
