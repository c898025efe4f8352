#include "delaystab_cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return delaystab::cli::run_app(argc, argv, std::cout, std::cerr); }
