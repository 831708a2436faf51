#include <iostream>
#include <string>
#include <vector>

#include "belief/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return blc::cli::run(args, std::cout, std::cerr);
}
