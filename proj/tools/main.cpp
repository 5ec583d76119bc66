#include <iostream>

#include "rcvmono/cli/commands.hpp"

int main(int argc, char** argv) { return rcvmono::cli::run(argc, argv, std::cout, std::cerr); }
