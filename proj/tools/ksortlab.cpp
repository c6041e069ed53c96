#include <iostream>

#include "ksortlab/cli.hpp"

int main(int argc, char** argv) { return ksortlab::cli::run(argc, argv, std::cout, std::cerr); }
