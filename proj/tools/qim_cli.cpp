#include <iostream>

#include "qim/cli.hpp"

int main(int argc, char** argv) {
  return qim::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
