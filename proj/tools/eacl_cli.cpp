#include <iostream>
#include <string>
#include <vector>

#include "eacl/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eacl::run_cli(args, std::cout, std::cerr);
}
