#include <iostream>

#include "eqbearing/cli.hpp"

int main(int argc, char** argv) { return eqbearing::cli_main(argc, argv, std::cout, std::cerr); }
