#include <iostream>

#include "phinfer/cli.hpp"

int main(int argc, char** argv) { return phinfer::cli_main(argc, argv, std::cout, std::cerr); }
