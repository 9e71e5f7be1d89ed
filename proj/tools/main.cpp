#include <iostream>
#include <string>
#include <vector>

#include "meshfwd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return meshfwd::run_cli(std::move(args), std::cout, std::cerr);
}
