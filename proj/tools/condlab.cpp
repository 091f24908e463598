#include <iostream>

#include "condlab/app/commands.hpp"

int main(int argc, char** argv) { return condlab::app::run(argc, argv, std::cout, std::cerr); }
