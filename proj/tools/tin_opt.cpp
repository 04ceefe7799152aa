#include <iostream>

#include "tinopt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = tinopt::cli::run(args, std::cin);
  std::cout << result.output;
  std::cerr << result.errors;
  return result.exit_code;
}
