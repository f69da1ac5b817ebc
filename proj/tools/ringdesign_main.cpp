#include <iostream>

#include "ringdesign/cli.hpp"

int main(int argc, char** argv) { return ringdesign::run_cli(argc, argv, std::cout, std::cerr); }
