#include <iostream>

#include "sbon/cli.hpp"

int main(int argc, char** argv) { return sbon::cli::run(argc, argv, std::cout, std::cerr); }
