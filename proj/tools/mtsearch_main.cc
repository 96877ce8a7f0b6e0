#include <iostream>
#include <string>
#include <vector>

#include "mtsearch/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mtsearch::cli::run(args, std::cout, std::cerr);
}
