#include <iostream>

#include "tatecup/cli.hpp"

int main(int argc, char** argv) { return tatecup::run_cli(argc, argv, std::cout, std::cerr); }
