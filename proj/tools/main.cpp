#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "spinstar/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  if (std::any_of(args.begin(), args.end(), [](const std::string& a) { return a == "-h" || a == "--help"; })) {
    std::cout << spinstar::cli::usage();
    return 0;
  }
  try {
    return spinstar::cli::run(spinstar::cli::parse_config(args), std::cerr);
  } catch (const spinstar::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
