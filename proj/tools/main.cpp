#include <iostream>

#include "jacsyz/cli.hpp"

int main(int argc, char** argv) { return jacsyz::run_cli(argc, argv, std::cout, std::cerr); }
