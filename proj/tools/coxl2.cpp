#include <iostream>
#include <string>
#include <vector>

#include "coxl2/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return coxl2::execute(args, std::cout, std::cerr);
}
