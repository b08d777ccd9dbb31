#include <iostream>

#include "sgflow/cli.hpp"

int main(int argc, char** argv) { return sgflow::cli::run(argc, argv, std::cout, std::cerr); }
