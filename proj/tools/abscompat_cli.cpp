#include <iostream>

#include "abscompat/cli.hpp"

int main(int argc, char** argv) { return abscompat::run_cli(argc, argv, std::cout, std::cerr); }
