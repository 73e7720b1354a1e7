#include <iostream>

#include "ramploads/cli.hpp"

int main(int argc, char** argv) { return ramploads::run_cli(argc, argv, std::cout, std::cerr); }
