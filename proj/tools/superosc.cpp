#include <iostream>

#include "superosc/cli/run.hpp"

int main(int argc, char** argv) { return superosc::cli::main_entry(argc, argv, std::cerr); }
