#include <string>
#include <vector>

#include "hawkesmf/cli.hpp"

int main(int argc, char** argv) {
  return hawkesmf::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
