#include <iostream>

#include "acikit/cli.hpp"

int main(int argc, char** argv) { return acikit::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
