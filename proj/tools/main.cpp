#include <iostream>

#include "kakutani/cli.hpp"

int main(int argc, char** argv) {
  return kakutani::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
