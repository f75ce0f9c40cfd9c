#include <iostream>

#include "residua/cli.hpp"

int main(int argc, char** argv) { return residua::cli::run(argc, argv, std::cout, std::cerr); }
