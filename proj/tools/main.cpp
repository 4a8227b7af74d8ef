#include <iostream>

#include "rce/cli.hpp"

int main(int argc, char** argv) { return rce::run_cli(argc, argv, std::cout, std::cerr); }
