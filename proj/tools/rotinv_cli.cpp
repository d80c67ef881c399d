#include <iostream>
#include <string>
#include <vector>

#include "rotinv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rotinv::run(args, std::cout, std::cerr);
}
