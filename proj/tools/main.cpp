#include <iostream>

#include "gtoda/cli.hpp"

int main(int argc, char** argv) { return gtoda::run_cli(argc, argv, std::cout, std::cerr); }
