#include <iostream>

#include "run_config.hpp"

int main(int argc, char** argv) {
  return faithful::cli::main_entry(argc, argv, std::cout, std::cerr);
}
