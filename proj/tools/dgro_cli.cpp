#include <iostream>

#include "dgro/cli.hpp"

int main(int argc, char** argv) {
  return dgro::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
