#include <iostream>

#include "dho/cli.hpp"

int main(int argc, char** argv) { return dho::cli::run(argc, argv, std::cout, std::cerr); }
