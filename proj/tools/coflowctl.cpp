#include <iostream>

#include "coflow/cli.hpp"

int main(int argc, char** argv) { return coflow::cli::run(argc, argv, std::cout, std::cerr); }
