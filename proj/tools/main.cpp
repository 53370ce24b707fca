#include <iostream>
#include <string>
#include <vector>

#include "pclf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pclf::dispatch(args, std::cout, std::cerr);
}
