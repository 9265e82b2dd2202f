#include <iostream>

#include "cauchyenv/cli.hpp"

int main(int argc, char** argv) {
  return cauchyenv::cli::dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
