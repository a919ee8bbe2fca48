#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const auto o = recmahler::cli::run(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << o.out << std::flush;
  std::cerr << o.err;
  return o.exit_code;
}
