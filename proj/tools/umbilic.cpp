#include <iostream>
#include <string>
#include <vector>

#include "umbilic/cli.hpp"

int main(int argc, char** argv) {
  return umbilic::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
