#include <iostream>

#include "alphatoep/cli.hpp"

int main(int argc, char** argv) { return alphatoep::cli_main(argc, argv, std::cout, std::cerr); }
