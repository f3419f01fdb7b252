#include <iostream>

#include "triramsey/cli.hpp"

int main(int argc, char** argv) { return triramsey::cli_main(argc, argv, std::cout, std::cerr); }
