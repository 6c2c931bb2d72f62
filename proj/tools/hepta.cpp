#include <iostream>

#include "heptagrid/cli.hpp"

int main(int argc, char** argv) { return hepta::run_cli(argc, argv, std::cout, std::cerr); }
