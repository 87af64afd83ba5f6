#include <string>
#include <vector>

#include "stormcast/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stormcast::cli::dispatch(args);
}
