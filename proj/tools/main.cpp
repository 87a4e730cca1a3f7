#include <iostream>

#include "rexcgt/cli.hpp"

int main(int argc, char** argv) {
  return rexcgt::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
