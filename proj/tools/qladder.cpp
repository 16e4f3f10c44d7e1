#include <iostream>

#include "qladder/cli/app.hpp"

int main(int argc, char** argv) { return qladder::cli::run(argc, argv, std::cout, std::cerr); }
