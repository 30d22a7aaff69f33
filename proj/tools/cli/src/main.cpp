#include <iostream>

#include "strebel_cli/commands.hpp"

int main(int argc, char** argv) { return strebel::cli::run(argc, argv, std::cout, std::cerr); }
