#include <iostream>

#include "xyphonon/cli.hpp"

int main(int argc, char** argv) { return xyp::cli::main_entry(argc, argv, std::cout, std::cerr); }
