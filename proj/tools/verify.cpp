#include <iostream>
#include <string>
#include <vector>

#include "zfb/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return zfb::verify_main(args, std::cout, std::cerr);
}
