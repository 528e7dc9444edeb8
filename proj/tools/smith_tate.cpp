#include "smith/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return smith::cli::dispatch({argv + 1, argv + argc}, std::cout, std::cerr);
}
