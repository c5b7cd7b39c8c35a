#include <iostream>
#include <string>
#include <vector>

#include "oddsec/cli.hpp"

int main(int argc, char** argv) {
  return oddsec::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
