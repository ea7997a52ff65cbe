#include "pseudocyl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return pseudocyl::cli::run(argc, argv, std::cout, std::cerr); }
