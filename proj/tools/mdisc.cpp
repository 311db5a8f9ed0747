#include <iostream>

#include "mdisc/cli.hpp"

int main(int argc, char** argv) { return mdisc::cli::run(argc, argv, std::cout, std::cerr); }
