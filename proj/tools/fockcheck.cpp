#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "fockcheck/cli/app.hpp"

int main(int argc, char** argv) {
  try {
    return fockcheck::cli::run_app(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 3;
  }
}
