#include <iostream>

#include "homiso/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return homiso::cli::run(args, std::cout, std::cerr);
}
