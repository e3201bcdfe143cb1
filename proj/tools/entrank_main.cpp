#include <iostream>
#include <vector>

#include "entrank/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return entrank::run_cli(args, std::cin, std::cout, std::cerr);
}
